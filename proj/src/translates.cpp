#include "sumtrans/translates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "sumtrans/errors.hpp"

namespace sumtrans {

namespace {

constexpr double kInvPhi = 0.6180339887498949;
constexpr std::size_t kTailSamples = 256;
constexpr std::size_t kLevelSamples = 512;
const double kMaxTailRadius = std::ldexp(1.0, 40);

class SumOfTranslates {
 public:
  SumOfTranslates(const Problem& p, std::span<const double> y) : p_(p), y_(y) {}

  double operator()(double t) const {
    double s = p_.field()(t);
    if (s == kNegInf) return s;
    const auto kernels = p_.kernels();
    for (std::size_t j = 0; j < kernels.size(); ++j) {
      s += kernels[j](t - y_[j]);
    }
    return s;
  }

 private:
  const Problem& p_;
  std::span<const double> y_;
};

struct Peak {
  double value = kNegInf;
  double at = std::numeric_limits<double>::quiet_NaN();

  void offer(double t, double v) {
    if (v > value) {
      value = v;
      at = t;
    }
  }
  void offer(const Peak& o) { offer(o.at, o.value); }
};

// Golden-section maximization on [a, b]; keeps the best value seen,
// endpoints included.
Peak golden_max(const SumOfTranslates& f, double a, double b, double fa, double fb, double tol) {
  Peak best;
  best.offer(a, fa);
  best.offer(b, fb);
  if (!(b > a)) return best;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  best.offer(c, fc);
  best.offer(d, fd);
  for (int iter = 0; iter < 200 && b - a > tol; ++iter) {
    const bool keep_left = (fc == kNegInf && fd == kNegInf) ? fa >= fb : fc >= fd;
    if (keep_left) {
      b = d;
      fb = fd;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      best.offer(c, fc);
    } else {
      a = c;
      fa = fc;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      best.offer(d, fd);
    }
  }
  return best;
}

double guarded(double node, double direction, double guard) {
  return node + direction * guard * std::max(1.0, std::abs(node));
}

struct Candidate {
  double value;
  double t;
  double left;
  double right;
  double f_left;
  double f_right;
  bool breakpoint;
};

// Supremum of f over [lo, hi] without unimodality assumptions: coarse grid,
// then golden-section refinement around the best local candidates (grid
// local maxima and field breakpoints).
Peak search_interval(const SumOfTranslates& f, double lo, double hi,
                     const std::vector<double>& breakpoints, const SearchOptions& opts) {
  Peak best;
  if (!(hi > lo)) {
    best.offer(lo, f(lo));
    return best;
  }
  const std::size_t g = opts.grid_density;
  const double step = (hi - lo) / static_cast<double>(g - 1);
  std::vector<double> ts(g);
  std::vector<double> vs(g);
  for (std::size_t i = 0; i < g; ++i) {
    ts[i] = (i + 1 == g) ? hi : lo + step * static_cast<double>(i);
    vs[i] = f(ts[i]);
    best.offer(ts[i], vs[i]);
  }

  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < g; ++i) {
    if (vs[i] == kNegInf) continue;
    const bool ge_left = i == 0 || vs[i] >= vs[i - 1];
    const bool ge_right = i + 1 == g || vs[i] >= vs[i + 1];
    if (!ge_left || !ge_right) continue;
    const std::size_t l = i == 0 ? i : i - 1;
    const std::size_t r = i + 1 == g ? i : i + 1;
    cands.push_back({vs[i], ts[i], ts[l], ts[r], vs[l], vs[r], false});
  }
  for (double bp : breakpoints) {
    if (!(bp > lo && bp < hi)) continue;
    const double v = f(bp);
    best.offer(bp, v);
    auto k = static_cast<std::size_t>(std::floor((bp - lo) / step));
    k = std::min(k, g - 2);
    cands.push_back({v, bp, ts[k], ts[k + 1], vs[k], vs[k + 1], true});
  }
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
  const std::size_t take = std::min(cands.size(), opts.refine_candidates);
  for (std::size_t c = 0; c < take; ++c) {
    const Candidate& cand = cands[c];
    if (cand.breakpoint) {
      best.offer(golden_max(f, cand.left, cand.t, cand.f_left, cand.value, opts.t_tolerance));
      best.offer(golden_max(f, cand.t, cand.right, cand.value, cand.f_right, opts.t_tolerance));
    } else {
      best.offer(golden_max(f, cand.left, cand.right, cand.f_left, cand.f_right, opts.t_tolerance));
    }
  }
  return best;
}

// Max of f over evenly spaced samples in [lo, hi] plus breakpoints inside.
double sampled_max(const SumOfTranslates& f, double lo, double hi, std::size_t count,
                   const std::vector<double>& breakpoints) {
  double m = kNegInf;
  if (!(hi >= lo)) return m;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    m = std::max(m, f(t));
  }
  for (double bp : breakpoints) {
    if (bp >= lo && bp <= hi) m = std::max(m, f(bp));
  }
  return m;
}

void check_arity(const Problem& problem, const NodeConfig& y) {
  if (y.size() != problem.n()) {
    throw std::invalid_argument("node count " + std::to_string(y.size()) + " != kernel count " +
                                std::to_string(problem.n()));
  }
}

MaximaReport discrete_maxima(const Problem& problem, const NodeConfig& y, const SumOfTranslates& f) {
  const std::size_t n = y.size();
  MaximaReport report;
  report.m.assign(n + 1, ExtendedReal::neg_inf());
  report.z.assign(n + 1, std::nullopt);
  std::vector<Peak> peaks(n + 1);
  for (double x : problem.field().support()) {
    const double v = f(x);
    for (std::size_t j = 0; j <= n; ++j) {
      const bool above = j == 0 || x >= y[j - 1];
      const bool below = j == n || x <= y[j];
      if (above && below) peaks[j].offer(x, v);
    }
  }
  for (std::size_t j = 0; j <= n; ++j) {
    if (peaks[j].value != kNegInf) {
      report.m[j] = ExtendedReal(peaks[j].value);
      report.z[j] = peaks[j].at;
    }
  }
  return report;
}

}  // namespace

ExtendedReal evaluate_F(const Problem& problem, const NodeConfig& y, double t) {
  check_arity(problem, y);
  return ExtendedReal(SumOfTranslates(problem, y.values())(t));
}

double tail_bound(const Problem& problem, const NodeConfig& y, double margin) {
  check_arity(problem, y);
  if (!(margin >= 1)) throw std::invalid_argument("margin must be >= 1");
  const double base = std::max(std::abs(y.front()), std::abs(y.back())) + 1.0;
  double tau = base;
  const Field& field = problem.field();

  if (field.is_discrete()) {
    double reach = 0.0;
    for (double x : field.support()) reach = std::max(reach, std::abs(x));
    while (tau <= reach) {
      tau *= 2.0;
      if (tau > kMaxTailRadius) throw AdmissibilityError();
    }
    return tau;
  }

  const SumOfTranslates f(problem, y.values());
  const auto bps = field.breakpoints();
  const double guard = problem.search().node_guard;
  const double left_node = guarded(y.front(), -1.0, guard);
  const double right_node = guarded(y.back(), 1.0, guard);
  while (tau <= kMaxTailRadius) {
    const double left_level = sampled_max(f, -tau, left_node, kLevelSamples, bps);
    const double right_level = sampled_max(f, right_node, tau, kLevelSamples, bps);
    const double left_tail = sampled_max(f, -4.0 * tau, -tau, kTailSamples, {});
    const double right_tail = sampled_max(f, tau, 4.0 * tau, kTailSamples, {});
    const bool left_ok = left_tail <= left_level - margin;
    const bool right_ok = right_tail <= right_level - margin;
    if (left_ok && right_ok) return tau;
    tau *= 2.0;
  }
  throw AdmissibilityError();
}

MaximaReport local_maxima_with_radius(const Problem& problem, const NodeConfig& y, double radius) {
  check_arity(problem, y);
  const SumOfTranslates f(problem, y.values());
  const std::size_t n = y.size();
  MaximaReport report;
  if (problem.field().is_discrete()) {
    report = discrete_maxima(problem, y, f);
  } else {
    const SearchOptions& opts = problem.search();
    const auto bps = problem.field().breakpoints();
    report.m.assign(n + 1, ExtendedReal::neg_inf());
    report.z.assign(n + 1, std::nullopt);
    for (std::size_t j = 0; j <= n; ++j) {
      Peak peak;
      if (j > 0 && j < n && y[j - 1] == y[j]) {
        peak.offer(y[j], f(y[j]));
      } else {
        const double lo = j == 0 ? -radius : guarded(y[j - 1], 1.0, opts.node_guard);
        const double hi = j == n ? radius : guarded(y[j], -1.0, opts.node_guard);
        peak = search_interval(f, lo, hi, bps, opts);
      }
      if (peak.value != kNegInf) {
        report.m[j] = ExtendedReal(peak.value);
        report.z[j] = peak.at;
      }
    }
  }
  report.truncation_radius = radius;
  report.in_regularity_set =
      std::all_of(report.m.begin(), report.m.end(), [](ExtendedReal v) { return v.is_finite(); });
  return report;
}

MaximaReport local_maxima(const Problem& problem, const NodeConfig& y) {
  const double tau = tail_bound(problem, y, problem.search().truncation_margin);
  return local_maxima_with_radius(problem, y, tau);
}

DifferenceVector difference_map(const MaximaReport& report) {
  for (std::size_t j = 0; j < report.m.size(); ++j) {
    if (!report.m[j].is_finite()) throw NotRegularError(j);
  }
  DifferenceVector out;
  for (std::size_t j = 1; j < report.m.size(); ++j) {
    out.d.push_back(report.m[j].raw() - report.m[j - 1].raw());
  }
  return out;
}

DifferenceVector difference_map(const Problem& problem, const NodeConfig& y) {
  return difference_map(local_maxima(problem, y));
}

bool in_regularity_set(const Problem& problem, const NodeConfig& y) {
  return local_maxima(problem, y).in_regularity_set;
}

void write_profile(std::ostream& out, const Problem& problem, const NodeConfig& y, double t_lo,
                   double t_hi, std::size_t count) {
  check_arity(problem, y);
  if (count < 2) throw std::invalid_argument("profile needs at least 2 samples");
  const SumOfTranslates f(problem, y.values());
  out << "t,F\n";
  char buf[64];
  for (std::size_t i = 0; i < count; ++i) {
    const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    const double v = f(t);
    if (v == kNegInf) {
      std::snprintf(buf, sizeof buf, "%.9g,-inf\n", t);
    } else {
      std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", t, v);
    }
    out << buf;
  }
}

}  // namespace sumtrans
