#pragma once

#include <stdexcept>
#include <string>

namespace mtoeplitz {

/// Broad failure classes. The CLI maps each class onto a fixed exit code.
enum class ErrorCategory {
  resource,      // a configured size/memory cap would be exceeded
  scope,         // exponents outside 1 <= p <= q <= inf
  precondition,  // input violates an operation's stated precondition
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& what) : Error(ErrorCategory::resource, what) {}
};

class DivisorCapExceeded : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

class MatrixBudgetExceeded : public ResourceLimit {
 public:
  using ResourceLimit::ResourceLimit;
};

class OutsideScope : public Error {
 public:
  explicit OutsideScope(const std::string& what) : Error(ErrorCategory::scope, what) {}
};

class PreconditionFailed : public Error {
 public:
  explicit PreconditionFailed(const std::string& what)
      : Error(ErrorCategory::precondition, what) {}
};

class MissingPrimePowerValue : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

class NegativeSymbol : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

class NormDiverges : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

}  // namespace mtoeplitz
