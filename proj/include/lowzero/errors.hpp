#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lowzero {

/// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation at (or numerically on top of) a pole or zero of the target function.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The smoothed functional-equation sum would need more terms than the budget allows.
class TruncationBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An evaluation failed its own consistency check (for example the functional equation).
class SelfCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WindingNumberError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UncertifiedZerosError : public std::runtime_error {
 public:
  explicit UncertifiedZerosError(std::uint64_t p)
      : std::runtime_error("zero list for p=" + std::to_string(p) + " is not certified"), p_(p) {}
  std::uint64_t prime() const noexcept { return p_; }

 private:
  std::uint64_t p_;
};

/// Raised when zero lists needed by a family statistic are absent from the cache.
class MissingCacheError : public std::runtime_error {
 public:
  explicit MissingCacheError(std::vector<std::uint64_t> missing);
  const std::vector<std::uint64_t>& missing() const noexcept { return missing_; }

 private:
  std::vector<std::uint64_t> missing_;
};

}  // namespace lowzero
