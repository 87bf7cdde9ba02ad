#pragma once

#include <span>
#include <vector>

#include "sumtrans/field.hpp"
#include "sumtrans/kernel.hpp"
#include "sumtrans/problem.hpp"
#include "sumtrans/solver.hpp"

namespace sumtrans {

/// The problem on [0, inf): `half_field` extended by -inf to the left.
Problem semiaxis_problem(std::vector<Kernel> kernels, Field half_field, SearchOptions search = {});

/// Inverts the difference map of the semiaxis problem. Returned nodes are
/// nonnegative.
SolveResult semiaxis_solve(std::vector<Kernel> kernels, Field half_field,
                           std::span<const double> d_target, const SolveOptions& options = {},
                           SearchOptions search = {});

/// Ratios sup_{(y_j, y_{j+1})} w p / sup_{(y_{j-1}, y_j)} w p for the
/// generalized polynomial p(t) = prod_j |t - y_j|^{r_j}, with the weight
/// given through its logarithm. Equal to exp(D(y)) for kernels r_j log|.|.
std::vector<double> weighted_poly_ratio_map(const NodeConfig& y, const Field& log_weight,
                                            std::span<const double> exponents,
                                            SearchOptions search = {});

/// Interpolation by G(t) = C w(t) prod_j L_j(t - y_j). Factors are given as
/// kernels K_j = log L_j and the weight as the field log w.
struct InterpolationProblem {
  std::vector<Kernel> factors;
  Field log_weight;
  std::vector<double> x;      // n + 1 abscissae (unused for Hermite-Fejer)
  std::vector<double> alpha;  // n + 1 positive targets
};

struct InterpolationResult {
  double C = 0.0;
  NodeConfig y;
  std::vector<double> z;         // Hermite-Fejer maximum points, else empty
  std::vector<double> achieved;  // G(x_j) or G(z_j)
  bool hypotheses_verified = true;
  SolveResult solve;
};

/// Relative agreement required between G at the interpolation points and
/// alpha.
inline constexpr double kInterpolationTolerance = 1e-8;

/// Finds C > 0 and interlaced y with G(x_j) = alpha_j.
InterpolationResult log_concave_interpolate(const InterpolationProblem& p,
                                            const SolveOptions& options = {},
                                            SearchOptions search = {});

/// Finds C > 0 and y such that the maximum of G between consecutive nodes is
/// alpha_j, attained at z_0 < y_1 < z_1 < ... < y_n < z_n.
InterpolationResult hermite_fejer_interpolate(const InterpolationProblem& p,
                                              const SolveOptions& options = {},
                                              SearchOptions search = {});

}  // namespace sumtrans
