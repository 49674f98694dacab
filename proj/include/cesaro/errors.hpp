#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cesaro {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// The operation has no certified route for this input.
class UnsupportedError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// A weighted line sum was shown to diverge. Carries the row (1-based) and
/// the partial sum reached when divergence was established.
class DivergentRowError : public std::runtime_error {
public:
  DivergentRowError(std::size_t row, double partial_sum, const std::string& why)
      : std::runtime_error("row " + std::to_string(row) + " diverges: " + why),
        row_(row), partial_sum_(partial_sum) {}

  std::size_t row() const noexcept { return row_; }
  double partial_sum() const noexcept { return partial_sum_; }

private:
  std::size_t row_;
  double partial_sum_;
};

} // namespace cesaro
