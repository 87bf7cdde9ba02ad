#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "sumtrans/extended_real.hpp"
#include "sumtrans/problem.hpp"

namespace sumtrans {

/// Suprema m_0..m_n of F(y, .) over (-inf, y_1], [y_1, y_2], ..., [y_n, inf).
struct MaximaReport {
  std::vector<ExtendedReal> m;
  /// Location of the best value found in each interval; empty where m_j is
  /// -inf. For fields with unattained suprema this is the best sample.
  std::vector<std::optional<double>> z;
  double truncation_radius = 0.0;
  bool in_regularity_set = false;
};

/// d_j = m_j - m_{j-1}, j = 1..n.
struct DifferenceVector {
  std::vector<double> d;
};

/// F(y, t) = J(t) + sum_j K_j(t - y_j) in the extended reals.
ExtendedReal evaluate_F(const Problem& problem, const NodeConfig& y, double t);

/// Radius tau > max(|y_1|, |y_n|) + 1 beyond which F stays at least `margin`
/// below the best value sampled on the adjacent end interval, checked on
/// |t| in [tau, 4 tau]. Doubles tau until it qualifies; throws
/// AdmissibilityError past 2^40.
double tail_bound(const Problem& problem, const NodeConfig& y, double margin);

MaximaReport local_maxima(const Problem& problem, const NodeConfig& y);

/// local_maxima with the end intervals cut at [-radius, radius] instead of
/// the tail_bound window. Used to check truncation stability.
MaximaReport local_maxima_with_radius(const Problem& problem, const NodeConfig& y, double radius);

/// Throws NotRegularError naming the first -inf local maximum.
DifferenceVector difference_map(const Problem& problem, const NodeConfig& y);
DifferenceVector difference_map(const MaximaReport& report);

bool in_regularity_set(const Problem& problem, const NodeConfig& y);

/// Writes "t,F" rows for `count` evenly spaced t in [t_lo, t_hi]; -inf is
/// written as the literal -inf.
void write_profile(std::ostream& out, const Problem& problem, const NodeConfig& y, double t_lo,
                   double t_hi, std::size_t count);

}  // namespace sumtrans
