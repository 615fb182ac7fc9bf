#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace confseq {

/// Malformed input text; line is 1-based (0 when unknown).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An algebra failed a load-time axiom; witnesses are basis indices.
class AxiomViolation : public std::runtime_error {
 public:
  AxiomViolation(std::string axiom, std::vector<std::size_t> witnesses, const std::string& detail);
  const std::string& axiom() const { return axiom_; }
  const std::vector<std::size_t>& witnesses() const { return witnesses_; }

 private:
  std::string axiom_;
  std::vector<std::size_t> witnesses_;
};

/// A product or differential would land above the truncation bound.
class Overflow : public std::runtime_error {
 public:
  explicit Overflow(int degree)
      : std::runtime_error("result in degree " + std::to_string(degree) + " exceeds the truncation bound"),
        degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

class DegeneratePairing : public std::runtime_error {
 public:
  explicit DegeneratePairing(int degree)
      : std::runtime_error("Poincare pairing is degenerate in degree " + std::to_string(degree)), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

/// A Massey product whose defining system does not exist.
class NotDefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two constructions that must agree produced different dimensions.
class MismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace confseq
