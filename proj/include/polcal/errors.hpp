#ifndef POLCAL_ERRORS_HPP
#define POLCAL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace polcal {

// Error taxonomy shared by every module.  The CLI maps `usage` errors to
// exit code 1 and `evaluation` errors to exit code 2.
enum class ErrorClass { Usage, Evaluation };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string what) : std::runtime_error(std::move(what)), cls_(cls) {}
  ErrorClass error_class() const { return cls_; }

 private:
  ErrorClass cls_;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(std::string what) : Error(ErrorClass::Usage, std::move(what)) {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error(ErrorClass::Usage, "division by zero") {}
};

class ZeroToNegativePower : public Error {
 public:
  ZeroToNegativePower() : Error(ErrorClass::Usage, "zero raised to a negative power") {}
};

class OrderTooLarge : public Error {
 public:
  OrderTooLarge(std::string what) : Error(ErrorClass::Usage, std::move(what)) {}
};

// Parse error with a 1-based byte offset into the source text and the set of
// token descriptions that would have been accepted at that position.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, std::string what)
      : Error(ErrorClass::Usage, what + " at offset " + std::to_string(offset)),
        offset_(offset),
        expected_(std::move(expected)) {}
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::string name, std::size_t offset)
      : Error(ErrorClass::Usage, "unknown identifier '" + name + "' at offset " + std::to_string(offset)) {}
};

class ArityError : public Error {
 public:
  explicit ArityError(std::string what) : Error(ErrorClass::Usage, std::move(what)) {}
};

// Runtime singularity: log/sqrt domain violations and division by zero met
// while evaluating a field.  Optionally records which polarization subset
// triggered it.
class EvalDomainError : public Error {
 public:
  explicit EvalDomainError(std::string what) : Error(ErrorClass::Evaluation, std::move(what)) {}
  EvalDomainError(std::string what, std::vector<int> subset)
      : Error(ErrorClass::Evaluation, std::move(what)), subset_(std::move(subset)), has_subset_(true) {}
  bool has_subset() const { return has_subset_; }
  const std::vector<int>& subset() const { return subset_; }

 private:
  std::vector<int> subset_;
  bool has_subset_ = false;
};

class NotPolynomial : public Error {
 public:
  explicit NotPolynomial(std::string what) : Error(ErrorClass::Usage, std::move(what)) {}
};

class BasePointMismatch : public Error {
 public:
  explicit BasePointMismatch(std::string what) : Error(ErrorClass::Usage, std::move(what)) {}
};

class NotHomogeneous : public Error {
 public:
  explicit NotHomogeneous(std::string what) : Error(ErrorClass::Usage, std::move(what)) {}
};

class NotPolyhomogeneous : public Error {
 public:
  explicit NotPolyhomogeneous(std::string what) : Error(ErrorClass::Usage, std::move(what)) {}
};

class PartsSumMismatch : public Error {
 public:
  explicit PartsSumMismatch(std::string what) : Error(ErrorClass::Usage, std::move(what)) {}
};

class NumericalBreakdown : public Error {
 public:
  explicit NumericalBreakdown(std::string what) : Error(ErrorClass::Evaluation, std::move(what)) {}
};

// Internal consistency violation (a defect, not a user error).
class InternalDefect : public Error {
 public:
  explicit InternalDefect(std::string what) : Error(ErrorClass::Evaluation, "internal defect: " + std::move(what)) {}
};

}  // namespace polcal

#endif
