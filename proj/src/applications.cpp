#include "sumtrans/applications.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sumtrans/errors.hpp"
#include "sumtrans/hypotheses.hpp"
#include "sumtrans/translates.hpp"

namespace sumtrans {

namespace {

constexpr double kInterpolationSolveTol = 1e-10;

void check_alpha(const InterpolationProblem& p) {
  const std::size_t n = p.factors.size();
  if (n == 0) throw std::invalid_argument("interpolation needs at least one factor");
  if (p.alpha.size() != n + 1) throw std::invalid_argument("alpha must have n + 1 entries");
  for (double a : p.alpha) {
    if (!(a > 0) || !std::isfinite(a)) throw std::invalid_argument("alpha entries must be positive");
  }
}

std::vector<double> log_ratios(const std::vector<double>& alpha) {
  std::vector<double> d;
  for (std::size_t j = 1; j < alpha.size(); ++j) d.push_back(std::log(alpha[j] / alpha[j - 1]));
  return d;
}

SolveOptions tightened(SolveOptions options) {
  options.tol = std::min(options.tol, kInterpolationSolveTol);
  return options;
}

void check_factor_hypotheses(const InterpolationProblem& p, bool assume_admissible) {
  std::string detail;
  for (std::size_t j = 0; j < p.factors.size(); ++j) {
    const Kernel& k = p.factors[j];
    if (!k.singular()) detail += "factor " + std::to_string(j) + " does not vanish at 0; ";
    if (!k.slope_limits().gm_holds) detail += "factor " + std::to_string(j) + " violates GM; ";
  }
  if (!assume_admissible && !is_admissible(p.log_weight, p.factors).admissible) {
    detail += "w * prod L_j does not vanish at infinity; ";
  }
  if (!detail.empty()) {
    detail.resize(detail.size() - 2);
    throw HypothesisError(detail);
  }
}

void verify_achieved(const std::vector<double>& achieved, const std::vector<double>& alpha,
                     const SolveResult& solve) {
  double worst = 0.0;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    worst = std::max(worst, std::abs(achieved[j] - alpha[j]) / std::max(1.0, alpha[j]));
  }
  if (worst > kInterpolationTolerance) throw SolverFailure(solve.residual, solve);
}

bool all_strict(const std::vector<Kernel>& factors) {
  return std::all_of(factors.begin(), factors.end(),
                     [](const Kernel& k) { return k.strictly_concave_claimed(); });
}

}  // namespace

Problem semiaxis_problem(std::vector<Kernel> kernels, Field half_field, SearchOptions search) {
  return Problem(std::move(kernels), Field::restrict_semiaxis(std::move(half_field)), search);
}

SolveResult semiaxis_solve(std::vector<Kernel> kernels, Field half_field,
                           std::span<const double> d_target, const SolveOptions& options,
                           SearchOptions search) {
  const Problem problem = semiaxis_problem(std::move(kernels), std::move(half_field), search);
  SolveResult result = invert_difference(problem, d_target, options);
  if (result.y.front() < 0) throw std::logic_error("semiaxis solution left [0, inf)");
  return result;
}

std::vector<double> weighted_poly_ratio_map(const NodeConfig& y, const Field& log_weight,
                                            std::span<const double> exponents, SearchOptions search) {
  if (exponents.size() != y.size()) throw std::invalid_argument("one exponent per node");
  std::vector<Kernel> kernels;
  for (double r : exponents) {
    if (!(r > 0)) throw std::invalid_argument("exponents must be positive");
    kernels.push_back(Kernel::log_abs(r));
  }
  if (!y.strictly_increasing()) throw std::invalid_argument("nodes must be strictly increasing");
  if (!is_admissible(log_weight, kernels).admissible) {
    throw HypothesisError("w(t) |t|^r does not vanish at infinity");
  }
  const Problem problem(std::move(kernels), log_weight, search);
  const DifferenceVector d = difference_map(problem, y);
  std::vector<double> out;
  out.reserve(d.d.size());
  for (double v : d.d) out.push_back(std::exp(v));
  return out;
}

InterpolationResult log_concave_interpolate(const InterpolationProblem& p, const SolveOptions& options,
                                            SearchOptions search) {
  check_alpha(p);
  const std::size_t n = p.factors.size();
  if (p.x.size() != n + 1) throw std::invalid_argument("x must have n + 1 entries");
  for (std::size_t j = 1; j < p.x.size(); ++j) {
    if (!(p.x[j] > p.x[j - 1])) throw std::invalid_argument("x must be strictly increasing");
  }
  std::vector<FieldPoint> points;
  for (double xj : p.x) {
    const double lw = p.log_weight(xj);
    if (lw == kNegInf) throw HypothesisError("weight vanishes at an interpolation abscissa");
    points.push_back({xj, lw});
  }
  check_factor_hypotheses(p, options.assume_admissible);

  const Problem problem(p.factors, Field::discrete(std::move(points)), search);
  SolveOptions opts = tightened(options);
  opts.assume_admissible = true;  // finite support
  const std::vector<double> target = log_ratios(p.alpha);
  SolveResult solve = invert_difference(problem, target, opts);

  const NodeConfig& y = solve.y;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(p.x[j] < y[j] && y[j] < p.x[j + 1])) throw SolverFailure(solve.residual, solve);
  }
  const double c = p.alpha[0] / std::exp(evaluate_F(problem, y, p.x[0]).value());
  std::vector<double> achieved;
  for (double xj : p.x) achieved.push_back(c * std::exp(evaluate_F(problem, y, xj).value()));
  verify_achieved(achieved, p.alpha, solve);

  InterpolationResult out{c, y, {}, std::move(achieved), all_strict(p.factors), std::move(solve)};
  return out;
}

InterpolationResult hermite_fejer_interpolate(const InterpolationProblem& p, const SolveOptions& options,
                                              SearchOptions search) {
  check_alpha(p);
  const std::size_t n = p.factors.size();
  check_factor_hypotheses(p, options.assume_admissible);

  const Problem problem(p.factors, p.log_weight, search);
  SolveOptions opts = tightened(options);
  opts.assume_admissible = true;  // checked above on the factors
  SolveResult solve = invert_difference(problem, log_ratios(p.alpha), opts);

  const MaximaReport maxima = local_maxima(problem, solve.y);
  std::vector<double> z;
  for (const auto& zj : maxima.z) {
    if (!zj) throw SolverFailure(solve.residual, solve);
    z.push_back(*zj);
  }
  const NodeConfig& y = solve.y;
  for (std::size_t j = 0; j < n; ++j) {
    if (!(z[j] < y[j] && y[j] < z[j + 1])) throw SolverFailure(solve.residual, solve);
  }
  const double c = p.alpha[0] / std::exp(maxima.m[0].value());
  std::vector<double> achieved;
  for (const auto& m : maxima.m) achieved.push_back(c * std::exp(m.value()));
  verify_achieved(achieved, p.alpha, solve);

  InterpolationResult out{c, y, std::move(z), std::move(achieved), all_strict(p.factors), std::move(solve)};
  return out;
}

}  // namespace sumtrans
