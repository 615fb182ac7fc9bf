#include "confseq/scalar.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace confseq {
namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

std::uint64_t mpz_mod_p(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return r.get_ui();
}

}  // namespace

Field Field::prime(std::uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not a supported prime");
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "Q" || text == "q") return rationals();
  std::string_view digits;
  if (text.starts_with("Fp")) {
    digits = text.substr(2);
    while (!digits.empty() && (digits.front() == ' ' || digits.front() == ':')) digits.remove_prefix(1);
  } else if (text.starts_with("F")) {
    digits = text.substr(1);
  } else {
    throw std::invalid_argument("unknown field '" + std::string(text) + "'");
  }
  std::uint32_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw std::invalid_argument("unknown field '" + std::string(text) + "'");
  return prime(p);
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

Scalar::Scalar(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Scalar Scalar::from_rational(const mpq_class& q) {
  Scalar s;
  s.q_ = q;
  s.q_.canonicalize();
  return s;
}

Scalar Scalar::in_field(long value, const Field& field) {
  Scalar s(value);
  if (!field.is_rational()) s.reduce_into(field.characteristic());
  return s;
}

Scalar Scalar::parse(std::string_view text, const Field& field) {
  std::string t(text);
  mpq_class q;
  if (t.empty() || q.set_str(t, 10) != 0) throw std::invalid_argument("malformed scalar '" + t + "'");
  if (q.get_den() == 0) throw std::invalid_argument("malformed scalar '" + t + "'");
  q.canonicalize();
  Scalar s = from_rational(q);
  if (!field.is_rational()) s.reduce_into(field.characteristic());
  return s;
}

bool Scalar::is_one() const { return p_ == 0 ? q_ == 1 : r_ == 1; }

const mpq_class& Scalar::rational() const {
  if (p_ != 0) throw std::logic_error("rational() on a prime-field scalar");
  return q_;
}

void Scalar::reduce_into(std::uint32_t p) {
  std::uint64_t den = mpz_mod_p(q_.get_den(), p);
  if (den == 0) throw std::domain_error("denominator not invertible in F" + std::to_string(p));
  std::uint64_t num = mpz_mod_p(q_.get_num(), p);
  r_ = num * pow_mod(den, p - 2, p) % p;
  p_ = p;
  q_ = 0;
}

void Scalar::unify(Scalar& o) {
  if (p_ == o.p_) return;
  if (p_ == 0) {
    reduce_into(o.p_);
  } else if (o.p_ == 0) {
    o.reduce_into(p_);
  } else {
    throw std::logic_error("mixing scalars from F" + std::to_string(p_) + " and F" + std::to_string(o.p_));
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar s = *this;
  if (p_ == 0) {
    s.q_ = 1 / q_;
    s.q_.canonicalize();
  } else {
    s.r_ = pow_mod(r_, p_ - 2, p_);
  }
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (p_ == 0)
    s.q_ = -q_;
  else
    s.r_ = r_ == 0 ? 0 : p_ - r_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (p_ != o.p_) {
    Scalar b = o;
    unify(b);
    return *this += b;
  }
  if (p_ == 0)
    q_ += o.q_;
  else
    r_ = (r_ + o.r_) % p_;
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (p_ != o.p_) {
    Scalar b = o;
    unify(b);
    return *this -= b;
  }
  if (p_ == 0)
    q_ -= o.q_;
  else
    r_ = (r_ + p_ - o.r_) % p_;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (p_ != o.p_) {
    Scalar b = o;
    unify(b);
    return *this *= b;
  }
  if (p_ == 0)
    q_ *= o.q_;
  else
    r_ = r_ * o.r_ % p_;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ == b.p_) return a.p_ == 0 ? a.q_ == b.q_ : a.r_ == b.r_;
  Scalar x = a, y = b;
  x.unify(y);
  return x.r_ == y.r_;
}

std::string Scalar::to_string() const {
  if (p_ != 0) return std::to_string(r_);
  return q_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace confseq
