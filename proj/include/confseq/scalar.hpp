#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace confseq {

/// Coefficient field: the rationals (characteristic 0) or a prime field F_p.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field{}; }
  /// Throws std::invalid_argument unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);
  /// Accepts "Q", "F<p>" or "Fp <p>".
  static Field parse(std::string_view text);

  std::uint32_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  friend class Scalar;
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// Exact field element. A scalar built from integers or fractions is a
/// characteristic-free rational; it is coerced into F_p the first time it is
/// combined with an F_p element. Combining elements of two different prime
/// fields is a logic error.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den);

  static Scalar from_rational(const mpq_class& q);
  /// Image of an integer in the given field.
  static Scalar in_field(long value, const Field& field);
  /// Parses "3", "-2/5" and coerces into the field.
  static Scalar parse(std::string_view text, const Field& field);

  Field field() const { return Field(p_); }
  bool is_zero() const { return p_ == 0 ? sgn(q_) == 0 : r_ == 0; }
  bool is_one() const;
  /// Rational value (characteristic 0 only).
  const mpq_class& rational() const;
  std::uint64_t residue() const { return r_; }

  Scalar inverse() const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  // Brings *this and o into a common field.
  void unify(Scalar& o);
  void reduce_into(std::uint32_t p);

  mpq_class q_;
  std::uint64_t r_ = 0;
  std::uint32_t p_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// (-1)^k as a scalar.
inline Scalar sign_scalar(int k) { return (k % 2 == 0) ? Scalar(1) : Scalar(-1); }

}  // namespace confseq
