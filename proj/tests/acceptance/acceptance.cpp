// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff every
// checkable criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "sumtrans/applications.hpp"
#include "sumtrans/hypotheses.hpp"
#include "sumtrans/oracle.hpp"
#include "sumtrans/solver.hpp"
#include "sumtrans/translates.hpp"

using namespace sumtrans;

namespace {

using Clock = std::chrono::steady_clock;

const double kE = std::exp(1.0);
constexpr double kHfC = 2.3316439815971246;
constexpr double kSemiaxisD = -0.8068528194400547;

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("[%s] criterion %2d  %s: %s\n", pass ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double sup_dist(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Problem abs_log() { return Problem({Kernel::log_abs(1)}, Field::neg_abs(1.0)); }

// Family used by the round trips: log kernels with weights in [0.5, 2] and
// J = -t^2.
Problem square_family(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> w(0.5, 2.0);
  std::vector<Kernel> ks;
  for (std::size_t i = 0; i < n; ++i) ks.push_back(Kernel::log_abs(w(rng)));
  return Problem(ks, Field::neg_square(1.0));
}

NodeConfig random_regular(std::mt19937_64& rng, std::size_t n, double spread, double min_gap) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<double> y(n);
  do {
    for (double& v : y) v = u(rng);
    std::sort(y.begin(), y.end());
  } while (std::adjacent_find(y.begin(), y.end(), [&](double a, double b) { return b - a < min_gap; }) !=
           y.end());
  return NodeConfig(y);
}

std::vector<double> random_target(std::mt19937_64& rng, std::size_t n, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  std::vector<double> d(n);
  for (double& v : d) v = u(rng);
  return d;
}

// ------------------------------------------------------------------------

void criterion_1() {
  const Problem p = abs_log();
  const auto t0 = Clock::now();
  const EquioscillationResult e = equioscillate(p);
  const double secs = seconds_since(t0);
  const double y = e.solve.y[0];
  const double z0 = *e.maxima.z[0];
  const double z1 = *e.maxima.z[1];
  const bool pass = std::abs(y) <= 1e-8 && std::abs(e.level + 1.0) <= 1e-6 && std::abs(z0 + 1.0) <= 1e-4 &&
                    std::abs(z1 - 1.0) <= 1e-4 && secs < 1.0;
  char buf[200];
  std::snprintf(buf, sizeof buf, "y=%.3g level=%.10f z=(%.7f, %.7f) in %.3f s", y, e.level, z0, z1, secs);
  report(1, pass, "equioscillation closed form", buf);
}

void criterion_2() {
  const MaximaReport r = local_maxima(abs_log(), NodeConfig({0.5}));
  const double d = difference_map(r).d[0];
  const double m0 = r.m[0].value();
  const double m1 = r.m[1].value();
  const bool pass = std::abs(d + 1.0) <= 1e-6 && std::abs(m0 + 0.5) <= 1e-6 && std::abs(m1 + 1.5) <= 1e-6;
  char buf[160];
  std::snprintf(buf, sizeof buf, "D(0.5)=%.10f m=(%.10f, %.10f)", d, m0, m1);
  report(2, pass, "difference-map closed form", buf);
}

void criterion_3() {
  const std::vector<double> target{-1.0};
  const SolveResult r = invert_difference(abs_log(), target);
  const bool pass = std::abs(r.y[0] - 0.5) <= 1e-6;
  report(3, pass, "inversion closed form", fmt("y=%.10f", r.y[0]));
}

struct RoundTripCase {
  Problem problem;
  std::vector<double> target;
  NodeConfig solution;
};

std::vector<RoundTripCase> criterion_4() {
  std::vector<RoundTripCase> cases;
  std::mt19937_64 rng(20240401);
  const auto t0 = Clock::now();

  double worst_a = 0.0;
  int bad_a = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 3;
    const Problem p = square_family(rng, n);
    const NodeConfig y = random_regular(rng, n, 2.0, 0.1);
    const auto d = difference_map(p, y).d;
    try {
      const SolveResult r = invert_difference(p, d);
      const double err = sup_dist(r.y.values(), y.values());
      worst_a = std::max(worst_a, err);
      if (err > 1e-6) ++bad_a;
      cases.push_back({p, d, r.y});
    } catch (const SolverFailure&) {
      ++bad_a;
    }
  }

  double worst_b = 0.0;
  int bad_b = 0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + i % 4;
    const Problem p = square_family(rng, n);
    const auto d = random_target(rng, n, 2.0);
    try {
      const SolveResult r = invert_difference(p, d);
      const double err = sup_dist(difference_map(p, r.y).d, d);
      worst_b = std::max(worst_b, err);
      if (err > 1e-8) ++bad_b;
      cases.push_back({p, d, r.y});
    } catch (const SolverFailure&) {
      ++bad_b;
    }
  }
  const double secs = seconds_since(t0);
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "y->D->y worst %.2e (%d/100 over 1e-6); d->y->D worst %.2e (%d/50 over 1e-8); %.1f s", worst_a,
                bad_a, worst_b, bad_b, secs);
  report(4, bad_a == 0 && bad_b == 0 && secs < 120.0, "round trips", buf);
  return cases;
}

void criterion_5(const std::vector<RoundTripCase>& cases) {
  SolveOptions opts;
  opts.starts = 10;
  opts.all_starts = true;
  double worst = 0.0;
  int disagreeing = 0;
  std::size_t fewest = 10;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    opts.seed = 1000 + i;
    const SolveResult r = invert_difference(cases[i].problem, cases[i].target, opts);
    fewest = std::min(fewest, r.start_solutions.size());
    double spread = 0.0;
    for (const auto& s : r.start_solutions) spread = std::max(spread, sup_dist(s.values(), r.y.values()));
    spread = std::max(spread, sup_dist(r.y.values(), cases[i].solution.values()));
    worst = std::max(worst, spread);
    if (spread > 1e-5) ++disagreeing;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu problems, min converged starts %zu/10, worst spread %.2e, %d over 1e-5",
                cases.size(), fewest, worst, disagreeing);
  report(5, disagreeing == 0 && fewest == 10, "multistart uniqueness", buf);
}

void criterion_6() {
  const InterpolationProblem sym{{Kernel::log_abs(1)}, Field::neg_abs(1.0), {-1.0, 1.0}, {1.0, 1.0}};
  const InterpolationProblem asym{{Kernel::log_abs(1)}, Field::neg_abs(1.0), {-1.0, 1.0}, {1.0, 2.0}};
  const InterpolationResult a = log_concave_interpolate(sym);
  const InterpolationResult b = log_concave_interpolate(asym);
  auto reproduces = [](const InterpolationProblem& p, const InterpolationResult& r) {
    bool ok = true;
    for (std::size_t j = 0; j < p.x.size(); ++j) {
      double g = r.C * std::exp(p.log_weight(p.x[j]));
      for (std::size_t k = 0; k < r.y.size(); ++k) g *= std::abs(p.x[j] - r.y[k]);
      ok = ok && std::abs(g - p.alpha[j]) <= 1e-8 * p.alpha[j];
    }
    return ok;
  };
  const bool pass = std::abs(a.C - kE) <= 1e-6 && std::abs(a.y[0]) <= 1e-8 && std::abs(b.y[0] + 1.0 / 3.0) <= 1e-5 &&
                    std::abs(b.C - 1.5 * kE) <= 1e-5 && reproduces(sym, a) && reproduces(asym, b);
  char buf[200];
  std::snprintf(buf, sizeof buf, "alpha=(1,1): C=%.9f y=%.2e; alpha=(1,2): C=%.9f y=%.9f", a.C, a.y[0], b.C, b.y[0]);
  report(6, pass, "interpolation at points", buf);
}

void criterion_7() {
  const InterpolationProblem p{{Kernel::log_abs(1)}, Field::neg_square(1.0), {}, {1.0, 1.0}};
  const InterpolationResult r = hermite_fejer_interpolate(p);
  const bool interlaced = r.z[0] < r.y[0] && r.y[0] < r.z[1];
  const bool pass = std::abs(r.y[0]) <= 1e-5 && std::abs(r.z[0] + 0.7071068) <= 1e-5 &&
                    std::abs(r.z[1] - 0.7071068) <= 1e-5 && std::abs(r.C - kHfC) <= 1e-5 && interlaced;
  char buf[200];
  std::snprintf(buf, sizeof buf, "y=%.2e z=(%.7f, %.7f) C=%.7f interlaced=%s", r.y[0], r.z[0], r.z[1], r.C,
                interlaced ? "yes" : "no");
  report(7, pass, "Hermite-Fejer closed form", buf);
}

void criterion_8() {
  std::mt19937_64 rng(88);
  const oracle::GridSpec spec{1e-3, 10.0};
  double worst = 0.0;
  int bad = 0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 1 + i % 2;
    const Problem p = square_family(rng, n);
    const auto d = random_target(rng, n, 2.0);
    const SolveResult r = invert_difference(p, d);
    const NodeConfig g = oracle::grid_invert(p, d, spec);
    const double err = sup_dist(r.y.values(), g.values());
    worst = std::max(worst, err);
    if (err > 2e-3) ++bad;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "20 targets, worst |y_solver - y_grid| %.2e, %d over 2e-3, %.1f s", worst, bad,
                seconds_since(t0));
  report(8, bad == 0, "grid-oracle equivalence", buf);
}

void criterion_9() {
  const Kernel kernels[] = {Kernel::log_abs(1.0), Kernel::log_abs(0.4), Kernel::log_abs_plus_linear(1.0, 0.7),
                            Kernel::log_abs_plus_linear(2.5, -1.2)};
  std::size_t violations = 0;
  std::size_t tuples = 0;
  std::uint64_t seed = 900;
  for (const Kernel& k : kernels) {
    const ShiftCheckReport r = check_shift_inequalities(k, 1000, seed++);
    violations += r.violations.size() + (r.part2_checked ? 0 : 1);
    tuples += r.tuples_checked;
  }

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const std::vector<Kernel> ks{Kernel::log_abs(1.0), Kernel::log_abs(2.0)};
  const Field fields[] = {Field::neg_square(1.0), Field::neg_abs(3.5)};
  int probes_failed = 0;
  for (const Field& f : fields) {
    if (!is_admissible(f, ks).admissible) ++probes_failed;
    for (int i = 0; i < 10; ++i) {
      const std::vector<double> y{u(rng), u(rng)};
      if (!probe_divergence(f, ks, y).admissible) ++probes_failed;
    }
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu shift tuples, %zu violations; %d of 20 shifted divergence probes failed",
                tuples, violations, probes_failed);
  report(9, violations == 0 && probes_failed == 0, "shift inequalities and shifted divergence", buf);
}

void criterion_10() {
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + i % 4;
    std::vector<Kernel> ks;
    for (std::size_t j = 0; j < n; ++j) ks.push_back(Kernel::log_abs(w(rng)));
    const Field f = i % 3 == 0   ? Field::neg_square(w(rng))
                    : i % 3 == 1 ? Field::neg_abs(static_cast<double>(n) + w(rng))
                                 : Field::log_weight_table({{-1, 0}, {0.5, 1}, {2, -1}}, 2.0 + n, -2.0 - n);
    const Problem p(ks, f);
    const NodeConfig y = random_regular(rng, n, 2.0, 0.05);
    const MaximaReport a = local_maxima(p, y);
    const MaximaReport b = local_maxima_with_radius(p, y, 2.0 * a.truncation_radius);
    for (std::size_t j = 0; j <= n; ++j) {
      if (a.m[j].is_finite()) worst = std::max(worst, std::abs(a.m[j].value() - b.m[j].raw()));
    }
  }
  report(10, worst < 1e-9, "truncation stability", fmt("50 problems, worst |m(tau) - m(2 tau)| %.2e", worst));
}

void criterion_11() {
  std::mt19937_64 rng(1111);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  double worst_ratio = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + i % 4;
    std::vector<double> r(n);
    for (double& v : r) v = w(rng);
    std::vector<Kernel> ks;
    for (double v : r) ks.push_back(Kernel::log_abs(v));
    const Field weight = i % 2 == 0 ? Field::neg_square(1.0) : Field::neg_abs(2.0 + n);
    const NodeConfig y = random_regular(rng, n, 2.0, 0.05);
    const auto ratios = weighted_poly_ratio_map(y, weight, r);
    const auto d = difference_map(Problem(ks, weight), y).d;
    for (std::size_t j = 0; j < n; ++j) worst_ratio = std::max(worst_ratio, std::abs(ratios[j] / std::exp(d[j]) - 1.0));
  }

  // Semiaxis: the closed-form example, then random targets against the full
  // axis problem whose field is -inf on (-inf, 0).
  const std::vector<double> closed{kSemiaxisD};
  const double y_closed = semiaxis_solve({Kernel::log_abs(1)}, Field::neg_abs(1.0), closed).y[0];
  double worst_embed = 0.0;
  bool nonnegative = true;
  for (int i = 0; i < 10; ++i) {
    const std::size_t n = 1 + i % 3;
    const std::vector<Kernel> ks(n, Kernel::log_abs(1.0));
    const auto d = random_target(rng, n, 1.5);
    const SolveResult a = semiaxis_solve(ks, Field::neg_abs(1.0, 1.0), d);
    const SolveResult b = invert_difference(Problem(ks, Field::restrict_semiaxis(Field::neg_abs(1.0, 1.0))), d);
    worst_embed = std::max(worst_embed, sup_dist(a.y.values(), b.y.values()));
    nonnegative = nonnegative && a.y.front() >= 0;
  }
  const bool pass = worst_ratio <= 1e-9 && std::abs(y_closed - 0.5) <= 1e-6 && worst_embed <= 1e-10 && nonnegative;
  char buf[240];
  std::snprintf(buf, sizeof buf,
                "ratio map vs exp(D) worst rel %.2e; semiaxis y(%.6f)=%.9f; embedding worst %.2e", worst_ratio,
                kSemiaxisD, y_closed, worst_embed);
  report(11, pass, "ratio-map identity and semiaxis embedding", buf);
}

void criterion_12() {
  std::printf("[N/A ] criterion 12  global homeomorphism: not reproducible numerically; "
              "covered by criteria 4, 5 and 8 (%s)\n",
              failures == 0 ? "all passed" : "see failures above");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    const auto cases = criterion_4();
    criterion_5(cases);
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
  } catch (const std::exception& e) {
    std::printf("[FAIL] aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d failing criteria, total %.1f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
