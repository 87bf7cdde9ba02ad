#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sumtrans/extended_real.hpp"

namespace sumtrans {

struct Knot {
  double t;
  double value;
};

/// How a table kernel behaves between its innermost knots and the origin.
enum class ZeroBehavior {
  /// Extend the innermost segment linearly; K(0) itself is undefined.
  kExtrapolate,
  /// Join the innermost knots linearly to a finite value at 0.
  kFinite,
  /// Logarithmic continuation down to -inf, C^1 at the innermost knot.
  kSingular,
};

/// Piecewise-linear kernel description. Knots on each half-axis may be given
/// in any order; they are sorted on construction.
struct TableKernelSpec {
  std::vector<Knot> neg_knots;
  std::vector<Knot> pos_knots;
  /// Slopes used beyond the outermost knots (left, right). When absent the
  /// outermost segment slope is used, which needs two knots on that side.
  std::optional<std::pair<double, double>> end_slopes;
  ZeroBehavior zero = ZeroBehavior::kSingular;
  double zero_value = 0.0;  // used only with kFinite
  bool strictly_concave = false;
};

struct SlopeLimits {
  double at_minus_infinity = 0.0;
  double at_plus_infinity = 0.0;
  bool gm_holds = false;
};

/// A function concave on (-inf, 0) and on (0, inf). Immutable after
/// construction.
class Kernel {
 public:
  enum class Kind { kLogAbs, kLogAbsPlusLinear, kTable };

  /// K(t) = w log|t|.
  static Kernel log_abs(double weight);
  /// K(t) = w log|t| + c t.
  static Kernel log_abs_plus_linear(double weight, double slope);
  /// Validates knot counts and concavity; throws std::invalid_argument.
  static Kernel table(TableKernelSpec spec);

  Kind kind() const { return kind_; }
  double weight() const { return weight_; }
  double linear_slope() const { return slope_; }
  const TableKernelSpec& table_spec() const { return table_; }

  bool singular() const;
  bool strictly_concave_claimed() const;

  /// Raw evaluation: -inf at t == 0 for singular kernels, throws
  /// std::domain_error("kernel undefined at 0") for extrapolated tables.
  double operator()(double t) const;

  ExtendedReal evaluate(double t) const { return ExtendedReal((*this)(t)); }

  SlopeLimits slope_limits() const;

 private:
  Kernel() = default;

  double table_eval(double t) const;

  Kind kind_ = Kind::kLogAbs;
  double weight_ = 1.0;
  double slope_ = 0.0;
  TableKernelSpec table_;
  // Derived table data: slopes used past the outermost knots and in the gap
  // next to the origin.
  double left_end_slope_ = 0.0;
  double right_end_slope_ = 0.0;
  double neg_gap_slope_ = 0.0;
  double pos_gap_slope_ = 0.0;
};

ExtendedReal eval_kernel(const Kernel& k, double t);
SlopeLimits slope_limits(const Kernel& k);

}  // namespace sumtrans
