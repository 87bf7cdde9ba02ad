#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sumtrans {

/// A node configuration has some local maximum equal to -inf.
class NotRegularError : public std::domain_error {
 public:
  explicit NotRegularError(std::size_t index)
      : std::domain_error("not in regularity set: m_" + std::to_string(index) + " = -inf"),
        index_(index) {}

  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// The truncation scan found no window outside of which F stays low.
class AdmissibilityError : public std::runtime_error {
 public:
  AdmissibilityError() : std::runtime_error("admissibility violated numerically") {}
};

/// Kernels or field fail a hypothesis the solvers rely on.
class HypothesisError : public std::invalid_argument {
 public:
  explicit HypothesisError(const std::string& detail)
      : std::invalid_argument("hypotheses of main theorem unmet: " + detail) {}
};

}  // namespace sumtrans
