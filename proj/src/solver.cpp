#include "sumtrans/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "sumtrans/errors.hpp"
#include "sumtrans/hypotheses.hpp"

namespace sumtrans {

namespace {

constexpr double kOrderingGap = 1e-10;
constexpr double kJacobianStep = 1e-6;
constexpr int kMaxHalvings = 40;
constexpr std::size_t kMassGrid = 4096;

using Vec = std::vector<double>;

double sup_norm(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double residual_of(const Vec& d, std::span<const double> target) {
  double m = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) m = std::max(m, std::abs(d[j] - target[j]));
  return m;
}

bool ordered(const Vec& y) {
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (!(y[i] - y[i - 1] >= kOrderingGap)) return false;
  }
  return true;
}

void project(Vec& y) {
  std::sort(y.begin(), y.end());
  for (std::size_t i = 1; i < y.size(); ++i) y[i] = std::max(y[i], y[i - 1] + kOrderingGap);
}

// D(y), or nothing when y leaves the regularity set.
std::optional<Vec> eval_difference(const Problem& problem, const Vec& y) {
  for (double v : y) {
    if (!std::isfinite(v)) return std::nullopt;
  }
  try {
    const MaximaReport report = local_maxima(problem, NodeConfig(y));
    if (!report.in_regularity_set) return std::nullopt;
    return difference_map(report).d;
  } catch (const AdmissibilityError&) {
    return std::nullopt;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

struct NewtonRun {
  Vec y;
  Vec d;
  double residual = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  bool converged = false;
};

NewtonRun damped_newton(const Problem& problem, std::span<const double> target, Vec y,
                        double tol, std::size_t max_iter) {
  NewtonRun run;
  project(y);
  auto d = eval_difference(problem, y);
  if (!d) return run;
  run.y = y;
  run.d = *d;
  run.residual = residual_of(*d, target);
  const std::size_t n = y.size();

  while (run.iterations < max_iter) {
    if (run.residual <= tol) {
      run.converged = true;
      return run;
    }
    ++run.iterations;

    const double h = kJacobianStep * std::max(1.0, sup_norm(run.y));
    Eigen::MatrixXd jac(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      std::optional<Vec> dk;
      double signed_h = h;
      for (double dir : {1.0, -1.0}) {
        Vec yk = run.y;
        yk[k] += dir * h;
        if (!ordered(yk)) continue;
        dk = eval_difference(problem, yk);
        if (dk) {
          signed_h = dir * h;
          break;
        }
      }
      if (!dk) return run;
      for (std::size_t j = 0; j < n; ++j) jac(j, k) = ((*dk)[j] - run.d[j]) / signed_h;
    }
    Eigen::VectorXd g(n);
    for (std::size_t j = 0; j < n; ++j) g(j) = run.d[j] - target[j];
    const Eigen::VectorXd delta_e = jac.fullPivLu().solve(-g);
    Vec delta(delta_e.data(), delta_e.data() + n);
    if (!std::all_of(delta.begin(), delta.end(), [](double v) { return std::isfinite(v); })) return run;

    // Keep at least a tenth of every gap and bound the step length.
    double lambda = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
      const double closing = delta[i] - delta[i - 1];
      if (closing < 0) lambda = std::min(lambda, 0.9 * (run.y[i] - run.y[i - 1]) / -closing);
    }
    const double cap = std::max(2.0, sup_norm(run.y));
    const double len = sup_norm(delta);
    if (lambda * len > cap) lambda = cap / len;

    bool accepted = false;
    for (int halving = 0; halving < kMaxHalvings; ++halving, lambda *= 0.5) {
      Vec trial = run.y;
      for (std::size_t i = 0; i < n; ++i) trial[i] += lambda * delta[i];
      project(trial);
      auto dt = eval_difference(problem, trial);
      if (!dt) continue;
      const double r = residual_of(*dt, target);
      if (r < run.residual) {
        run.y = std::move(trial);
        run.d = std::move(*dt);
        run.residual = r;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  run.converged = run.residual <= tol;
  return run;
}

// Continuation from D(y0) to the target, warm-starting each leg; legs that
// fail are split in half a few times.
NewtonRun homotopy(const Problem& problem, std::span<const double> target, const Vec& y0,
                   const SolveOptions& opts) {
  NewtonRun failed;
  auto d0 = eval_difference(problem, y0);
  if (!d0) return failed;
  const std::size_t n = target.size();
  auto target_at = [&](double s) {
    Vec t(n);
    for (std::size_t j = 0; j < n; ++j) t[j] = (1.0 - s) * (*d0)[j] + s * target[j];
    return t;
  };

  Vec y = y0;
  std::size_t total_iter = 0;
  double s = 0.0;
  double ds = 0.1;
  int splits = 0;
  NewtonRun last;
  while (s < 1.0 - 1e-12) {
    const double next = std::min(1.0, s + ds);
    const Vec t = target_at(next);
    NewtonRun leg = damped_newton(problem, t, y, opts.tol, opts.max_iter);
    total_iter += leg.iterations;
    if (leg.converged) {
      y = leg.y;
      s = next;
      last = std::move(leg);
    } else {
      if (++splits > 12) {
        if (leg.y.empty()) return failed;
        // Report against the real target, not the leg's.
        leg.residual = residual_of(leg.d, target);
        leg.converged = false;
        leg.iterations = total_iter;
        return leg;
      }
      ds *= 0.5;
    }
  }
  last.iterations = total_iter;
  return last;
}

SolveResult make_result(const NewtonRun& run, std::size_t starts_used, bool verified) {
  SolveResult r{NodeConfig(run.y), DifferenceVector{run.d}, 0.0, 0, 0, false, false, true, {}};
  r.residual = run.residual;
  r.iterations = run.iterations;
  r.starts_used = starts_used;
  r.converged = run.converged;
  r.hypotheses_verified = verified;
  return r;
}

bool lexicographically_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Better result first: smaller residual, then lexicographically smaller y.
bool better(const NewtonRun& a, const NewtonRun& b) {
  if (a.residual != b.residual) return a.residual < b.residual;
  return lexicographically_less(a.y, b.y);
}

}  // namespace

HypothesisReport check_main_hypotheses(const Problem& problem, bool assume_admissible) {
  HypothesisReport report;
  const auto kernels = problem.kernels();
  for (std::size_t j = 0; j < kernels.size(); ++j) {
    const auto& k = kernels[j];
    if (!k.singular()) {
      report.ok = false;
      report.failures.push_back("kernel " + std::to_string(j) + " is not singular");
    }
    if (!k.slope_limits().gm_holds) {
      report.ok = false;
      report.failures.push_back("kernel " + std::to_string(j) + " violates GM");
    }
    if (!k.strictly_concave_claimed()) report.strictly_concave_claimed = false;
  }
  if (!assume_admissible && !is_admissible(problem.field(), kernels).admissible) {
    report.ok = false;
    report.failures.push_back("field is not admissible");
  }
  return report;
}

HypothesisReport require_main_hypotheses(const Problem& problem, bool assume_admissible) {
  HypothesisReport report = check_main_hypotheses(problem, assume_admissible);
  if (!report.ok) {
    std::string detail;
    for (const auto& f : report.failures) detail += (detail.empty() ? "" : "; ") + f;
    throw HypothesisError(detail);
  }
  return report;
}

std::vector<NodeConfig> start_points(const Problem& problem, std::size_t count, std::uint64_t seed) {
  const std::size_t n = problem.n();
  std::mt19937_64 rng(seed);
  std::vector<NodeConfig> out;
  out.reserve(count);

  if (problem.field().is_discrete()) {
    const auto support = problem.field().support();
    const std::size_t m = support.size();
    std::uniform_real_distribution<double> frac(0.15, 0.85);
    for (std::size_t s = 0; s < count; ++s) {
      Vec y(n);
      for (std::size_t j = 1; j <= n; ++j) {
        const std::size_t i = j * m / (n + 1);
        const double f = s == 0 ? 0.5 : frac(rng);
        y[j - 1] = support[i - 1] + f * (support[i] - support[i - 1]);
      }
      out.emplace_back(std::move(y));
    }
    return out;
  }

  const double tau = tail_bound(problem, NodeConfig(Vec(n, 0.0)), problem.search().truncation_margin);
  Vec ts(kMassGrid);
  Vec cdf(kMassGrid, 0.0);
  double jmax = kNegInf;
  for (std::size_t i = 0; i < kMassGrid; ++i) {
    ts[i] = -tau + 2.0 * tau * static_cast<double>(i) / static_cast<double>(kMassGrid - 1);
    jmax = std::max(jmax, problem.field()(ts[i]));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < kMassGrid; ++i) {
    const double j = problem.field()(ts[i]);
    total += j == kNegInf ? 0.0 : std::exp(j - jmax);
    cdf[i] = total;
  }
  auto quantile = [&](double q) {
    if (!(total > 0)) return -tau + 2.0 * tau * q;
    const double target = q * total;
    auto it = std::lower_bound(cdf.begin(), cdf.end(), target);
    return ts[static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), kMassGrid - 1))];
  };
  std::uniform_real_distribution<double> jitter(-0.35, 0.35);
  const double min_gap = 1e-6 * tau;
  for (std::size_t s = 0; s < count; ++s) {
    Vec y(n);
    for (std::size_t j = 1; j <= n; ++j) {
      const double shift = s == 0 ? 0.0 : jitter(rng);
      y[j - 1] = quantile(std::clamp((static_cast<double>(j) + shift) / static_cast<double>(n + 1),
                                     1e-6, 1.0 - 1e-6));
    }
    std::sort(y.begin(), y.end());
    for (std::size_t i = 1; i < n; ++i) y[i] = std::max(y[i], y[i - 1] + min_gap);
    out.emplace_back(std::move(y));
  }
  return out;
}

SolveResult invert_difference(const Problem& problem, std::span<const double> d_target,
                              const SolveOptions& options) {
  if (d_target.size() != problem.n()) {
    throw std::invalid_argument("target length != n");
  }
  for (double v : d_target) {
    if (!std::isfinite(v)) throw std::invalid_argument("target must be finite");
  }
  if (!(options.tol > 0)) throw std::invalid_argument("tol must be positive");
  const HypothesisReport hyp = require_main_hypotheses(problem, options.assume_admissible);
  const bool verified = hyp.strictly_concave_claimed;

  const auto starts = start_points(problem, std::max<std::size_t>(options.starts, 1), options.seed);
  std::optional<NewtonRun> best;
  std::vector<NewtonRun> converged;
  std::size_t used = 0;
  std::size_t total_iter = 0;
  for (const auto& start : starts) {
    ++used;
    Vec y0(start.values().begin(), start.values().end());
    NewtonRun run = damped_newton(problem, d_target, std::move(y0), options.tol, options.max_iter);
    total_iter += run.iterations;
    if (run.y.empty()) continue;
    if (!best || better(run, *best)) best = run;
    if (run.converged) {
      converged.push_back(run);
      if (!options.all_starts) break;
    }
  }

  if (!converged.empty()) {
    const NewtonRun& pick = *std::min_element(converged.begin(), converged.end(), better);
    SolveResult result = make_result(pick, used, verified);
    result.iterations = total_iter;
    for (const auto& c : converged) result.start_solutions.emplace_back(c.y);
    return result;
  }

  for (const auto& start : starts) {
    Vec y0(start.values().begin(), start.values().end());
    project(y0);
    NewtonRun run = homotopy(problem, d_target, y0, options);
    total_iter += run.iterations;
    if (run.y.empty()) continue;
    if (!best || better(run, *best)) best = run;
    if (run.converged) {
      SolveResult result = make_result(run, used, verified);
      result.iterations = total_iter;
      result.used_homotopy = true;
      result.start_solutions.emplace_back(run.y);
      return result;
    }
    break;  // one homotopy path from the first usable start
  }

  if (best) {
    SolveResult r = make_result(*best, used, verified);
    r.iterations = total_iter;
    throw SolverFailure(best->residual, r);
  }
  throw SolverFailure(std::numeric_limits<double>::infinity(), std::nullopt);
}

EquioscillationResult equioscillate(const Problem& problem, const SolveOptions& options) {
  const Vec zeros(problem.n(), 0.0);
  SolveResult solve = invert_difference(problem, zeros, options);
  MaximaReport maxima = local_maxima(problem, solve.y);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  for (const auto& m : maxima.m) {
    lo = std::min(lo, m.raw());
    hi = std::max(hi, m.raw());
    sum += m.raw();
  }
  EquioscillationResult out{std::move(solve), std::move(maxima)};
  out.level = sum / static_cast<double>(out.maxima.m.size());
  out.spread = hi - lo;
  return out;
}

LipschitzBounds local_lipschitz_probe(const Problem& problem, const NodeConfig& y, double radius,
                                      std::size_t samples, std::uint64_t seed) {
  if (!(radius > 0)) throw std::invalid_argument("degenerate ball: radius must be positive");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const std::string leaves = "ball leaves regularity set";
  if (!in_regularity_set(problem, y)) throw std::domain_error(leaves);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> offset(-radius, radius);
  const std::size_t n = y.size();
  auto draw = [&]() {
    Vec p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = y[i] + offset(rng);
    return p;
  };
  auto eval = [&](const Vec& p) -> std::optional<Vec> {
    if (!std::is_sorted(p.begin(), p.end())) return std::nullopt;
    return eval_difference(problem, p);
  };

  LipschitzBounds out;
  out.lower = std::numeric_limits<double>::infinity();
  out.upper = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec a = draw();
    const Vec b = draw();
    const auto da = eval(a);
    const auto db = eval(b);
    if (!da || !db) {
      ++out.skipped;
      continue;
    }
    double dy = 0.0;
    double dd = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dy = std::max(dy, std::abs(a[i] - b[i]));
      dd = std::max(dd, std::abs((*da)[i] - (*db)[i]));
    }
    if (dy == 0.0) continue;
    const double ratio = dd / dy;
    out.lower = std::min(out.lower, ratio);
    out.upper = std::max(out.upper, ratio);
    ++out.pairs_used;
  }
  if (out.pairs_used == 0) throw std::domain_error(leaves);
  return out;
}

}  // namespace sumtrans
