#include "sumtrans/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sumtrans::oracle {

namespace {

constexpr double kRefineFactor = 5.0;
constexpr double kWindowSteps = 3.0;  // neighbourhood half-width, in previous-level steps
constexpr double kTieTolerance = 1e-12;

double sum_at(const Problem& p, std::span<const double> y, double t) {
  double s = p.field()(t);
  const auto kernels = p.kernels();
  for (std::size_t j = 0; j < kernels.size() && s != kNegInf; ++j) s += kernels[j](t - y[j]);
  return s;
}

// Scan-based maxima into `m`/`z`; `m` must be sized n + 1.
void scan_maxima(const Problem& p, std::span<const double> y, double step, double extent,
                 std::vector<double>& m, std::vector<double>& z) {
  const std::size_t n = y.size();
  std::fill(m.begin(), m.end(), kNegInf);
  std::fill(z.begin(), z.end(), std::numeric_limits<double>::quiet_NaN());
  auto offer = [&](double t, double v) {
    // Closed intervals: t belongs to every interval whose ends bracket it.
    for (std::size_t j = 0; j <= n; ++j) {
      const bool above = j == 0 || t >= y[j - 1];
      const bool below = j == n || t <= y[j];
      if (above && below && v > m[j]) {
        m[j] = v;
        z[j] = t;
      }
    }
  };
  if (p.field().is_discrete()) {
    for (double x : p.field().support()) offer(x, sum_at(p, y, x));
    return;
  }
  const auto count = static_cast<std::size_t>(std::floor(2.0 * extent / step)) + 1;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = -extent + static_cast<double>(k) * step;
    offer(t, sum_at(p, y, t));
  }
  for (double node : y) offer(node, sum_at(p, y, node));
}

double objective(const Problem& p, std::span<const double> y, std::span<const double> target,
                 double step, double extent, std::vector<double>& m, std::vector<double>& z) {
  scan_maxima(p, y, step, extent, m, z);
  double worst = 0.0;
  for (std::size_t j = 1; j < m.size(); ++j) {
    if (m[j] == kNegInf || m[j - 1] == kNegInf) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(m[j] - m[j - 1] - target[j - 1]));
  }
  return worst;
}

struct Scored {
  std::vector<double> y;
  double value;
};

}  // namespace

void GridSpec::validate() const {
  if (!(step > 0) || !(extent > 0)) throw std::invalid_argument("grid spec needs step > 0 and extent > 0");
}

MaximaReport grid_local_maxima(const Problem& problem, const NodeConfig& y, const GridSpec& spec) {
  spec.validate();
  if (y.size() != problem.n()) throw std::invalid_argument("node count != kernel count");
  const std::size_t n = y.size();
  std::vector<double> m(n + 1);
  std::vector<double> z(n + 1);
  scan_maxima(problem, y.values(), spec.step, spec.extent, m, z);
  MaximaReport report;
  report.truncation_radius = spec.extent;
  report.in_regularity_set = true;
  for (std::size_t j = 0; j <= n; ++j) {
    if (m[j] == kNegInf) {
      report.m.push_back(ExtendedReal::neg_inf());
      report.z.emplace_back(std::nullopt);
      report.in_regularity_set = false;
    } else {
      report.m.emplace_back(m[j]);
      report.z.emplace_back(z[j]);
    }
  }
  return report;
}

GridInversion grid_invert_detailed(const Problem& problem, std::span<const double> d_target,
                                   const GridSpec& spec) {
  spec.validate();
  const std::size_t n = problem.n();
  if (n < 1 || n > 2) throw std::invalid_argument("grid inversion supports n = 1 or 2 only");
  if (d_target.size() != n) throw std::invalid_argument("target length != n");

  // Node steps from coarse to fine, each a multiple of spec.step.
  std::vector<double> steps{spec.step};
  while (steps.back() * kRefineFactor <= 2.0 * spec.extent / 60.0) steps.push_back(steps.back() * kRefineFactor);
  std::reverse(steps.begin(), steps.end());

  std::vector<double> m(n + 1);
  std::vector<double> z(n + 1);
  const double lo = -spec.extent;
  auto grid_count = [&](double h) { return static_cast<long>(std::floor(2.0 * spec.extent / h + 1e-9)); };

  std::vector<Scored> level_scores;
  std::vector<double> best;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t level = 0; level < steps.size(); ++level) {
    const double h = steps[level];
    const double scan_step = h;
    long first = 0;
    long last = grid_count(h);
    std::vector<long> centre(n, 0);
    if (level > 0) {
      const long reach = static_cast<long>(std::ceil(kWindowSteps * steps[level - 1] / h));
      for (std::size_t i = 0; i < n; ++i) centre[i] = std::lround((best[i] - lo) / h);
      first = -reach;
      last = reach;
    }
    level_scores.clear();
    best_value = std::numeric_limits<double>::infinity();
    std::vector<double> y(n);
    auto consider = [&]() {
      const double v = objective(problem, y, d_target, scan_step, spec.extent, m, z);
      level_scores.push_back({y, v});
      if (v < best_value) best_value = v;
    };
    auto node_at = [&](std::size_t i, long k) {
      const long idx = level == 0 ? k : centre[i] + k;
      return lo + static_cast<double>(idx) * h;
    };
    auto inside = [&](double v) { return v >= lo - 1e-12 && v <= spec.extent + 1e-12; };
    if (n == 1) {
      for (long a = first; a <= last; ++a) {
        y[0] = node_at(0, a);
        if (inside(y[0])) consider();
      }
    } else {
      for (long a = first; a <= last; ++a) {
        y[0] = node_at(0, a);
        if (!inside(y[0])) continue;
        for (long b = first; b <= last; ++b) {
          y[1] = node_at(1, b);
          if (!inside(y[1]) || !(y[1] > y[0])) continue;
          consider();
        }
      }
    }
    if (!std::isfinite(best_value)) throw std::runtime_error("grid inversion found no regular configuration");
    for (const auto& s : level_scores) {
      if (s.value == best_value) {
        best = s.y;
        break;
      }
    }
  }

  GridInversion out{NodeConfig(best), best_value};
  for (const auto& s : level_scores) {
    if (s.y == best || s.value > best_value + kTieTolerance) continue;
    ++out.ties;
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) dist = std::max(dist, std::abs(s.y[i] - best[i]));
    out.tie_spread = std::max(out.tie_spread, dist);
  }
  return out;
}

NodeConfig grid_invert(const Problem& problem, std::span<const double> d_target, const GridSpec& spec) {
  return grid_invert_detailed(problem, d_target, spec).y;
}

}  // namespace sumtrans::oracle
