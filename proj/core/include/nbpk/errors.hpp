#pragma once

#include <stdexcept>
#include <string>

namespace nbpk {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operation is defined but not implemented for this Lévy family.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An iterative numerical method stopped before meeting its tolerance.
/// The best estimate reached so far is kept so callers can decide whether
/// it is good enough.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

namespace detail {

inline void require(bool cond, const char* what) {
  if (!cond) throw DomainError(what);
}

}  // namespace detail

}  // namespace nbpk
