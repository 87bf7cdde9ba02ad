#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <vector>

#include "sumtrans/extended_real.hpp"

namespace sumtrans {

struct FieldPoint {
  double x;
  double value;
};

/// Marker returned by Field::finite_support_count for continuous kinds.
inline constexpr std::size_t kInfiniteSupport = std::numeric_limits<std::size_t>::max();

/// An upper-bounded function R -> R ∪ {-inf} (the logarithm of a weight).
/// Immutable; copies share the wrapped field of a semiaxis restriction.
class Field {
 public:
  enum class Kind { kNegAbs, kNegSquare, kLogWeightTable, kDiscrete, kNegInfinityBelowZero };

  /// J(t) = -a |t - center|.
  static Field neg_abs(double scale, double center = 0.0);
  /// J(t) = -a (t - center)^2.
  static Field neg_square(double scale, double center = 0.0);
  /// Piecewise-linear through the knots, linear with the given slopes beyond
  /// them. Bounded above requires left_slope >= 0 >= right_slope.
  static Field log_weight_table(std::vector<FieldPoint> knots, double left_slope = 0.0,
                                double right_slope = 0.0);
  /// J(x_i) = v_i on the listed points, -inf elsewhere.
  static Field discrete(std::vector<FieldPoint> points);
  /// J(t) = -inf for t < 0, inner(t) for t >= 0.
  static Field restrict_semiaxis(Field inner);

  Kind kind() const { return kind_; }
  double scale() const { return scale_; }
  double center() const { return center_; }
  const std::vector<FieldPoint>& points() const { return points_; }
  double left_slope() const { return left_slope_; }
  double right_slope() const { return right_slope_; }
  const Field* inner() const { return inner_.get(); }

  double operator()(double t) const;
  ExtendedReal evaluate(double t) const { return ExtendedReal((*this)(t)); }

  double upper_bound() const;
  /// Number of points where J is finite; kInfiniteSupport for continuous kinds.
  std::size_t finite_support_count() const;

  /// True when J is finite only on a finite set (suprema are exact maxima
  /// over support()).
  bool is_discrete() const;
  /// Sorted abscissae where a discrete field is finite.
  std::vector<double> support() const;
  /// Points where a continuous field has a kink or a jump, sorted.
  std::vector<double> breakpoints() const;

  /// The field t -> J(t - c).
  Field shifted(double c) const;

 private:
  Field() = default;

  Kind kind_ = Kind::kNegAbs;
  double scale_ = 1.0;
  double center_ = 0.0;
  std::vector<FieldPoint> points_;
  double left_slope_ = 0.0;
  double right_slope_ = 0.0;
  std::shared_ptr<const Field> inner_;
};

}  // namespace sumtrans
