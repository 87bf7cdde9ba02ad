#include "sumtrans/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sumtrans {

namespace {

// Log-uniform magnitude in [1e-3, 1e2].
double draw_magnitude(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> exponent(-3.0, 2.0);
  return std::pow(10.0, exponent(rng));
}

bool direction_diverges(std::span<const double> values, double estimate) {
  if (values.size() < 5) return false;
  auto tail = values.subspan(values.size() - 5);
  if (std::all_of(tail.begin(), tail.end(), [](double v) { return v == kNegInf; })) return true;
  // Once -inf, the sequence must stay there.
  bool seen_inf = false;
  for (double v : tail) {
    if (v == kNegInf) {
      seen_inf = true;
    } else if (seen_inf) {
      return false;
    }
  }
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (tail[i] != kNegInf && !(tail[i] < tail[i - 1])) return false;
  }
  return tail.back() == kNegInf || tail.back() < estimate - 10.0;
}

}  // namespace

bool shift_inequality_holds(const Kernel& k, int part, double t1, double t2, double h,
                            ShiftViolation* out) {
  double lhs = 0;
  double rhs = 0;
  if (part == 1) {
    lhs = k(t2 + h) - k(t1 + h);
    rhs = k(t2) - k(t1);
  } else {
    lhs = k(t2) - k(t1);
    rhs = k(t2 + h) - k(t1 + h);
  }
  if (out != nullptr) *out = ShiftViolation{part, t1, t2, h, lhs, rhs};
  return lhs <= rhs + kShiftTolerance;
}

ShiftCheckReport check_shift_inequalities(const Kernel& k, std::size_t sample_count,
                                          std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be >= 1");
  std::mt19937_64 rng(seed);
  ShiftCheckReport report;
  ShiftViolation v;
  auto record = [&](int part, double t1, double t2, double h) {
    ++report.tuples_checked;
    if (!shift_inequality_holds(k, part, t1, t2, h, &v)) report.violations.push_back(v);
  };

  for (std::size_t i = 0; i < sample_count; ++i) {
    // 0 < t1 < t2 < t2 + h
    const double t1 = draw_magnitude(rng);
    const double t2 = t1 + draw_magnitude(rng);
    record(1, t1, t2, draw_magnitude(rng));
  }
  for (std::size_t i = 0; i < sample_count; ++i) {
    // t1 < t2 < t2 + h < 0
    const double h = draw_magnitude(rng);
    const double t2 = -draw_magnitude(rng) - h;
    const double t1 = t2 - draw_magnitude(rng);
    record(1, t1, t2, h);
  }

  const SlopeLimits limits = k.slope_limits();
  if (limits.gm_holds) {
    report.part2_checked = true;
    for (std::size_t i = 0; i < sample_count; ++i) {
      // t1 < t1 + h < 0 < t2
      const double h = draw_magnitude(rng);
      const double t1 = -draw_magnitude(rng) - h;
      record(2, t1, draw_magnitude(rng), h);
    }
  } else {
    report.note = "GM hypothesis not met; part-2 skipped";
  }
  return report;
}

std::size_t count_concavity_violations(const Kernel& k, std::size_t sample_count,
                                       std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution side(0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t violations = 0;
  for (std::size_t i = 0; i < sample_count; ++i) {
    double a = draw_magnitude(rng);
    double c = draw_magnitude(rng);
    if (a == c) continue;
    if (a > c) std::swap(a, c);
    const double b = a + (c - a) * (0.05 + 0.9 * unit(rng));
    const double s = side(rng) ? 1.0 : -1.0;
    const double ka = k(s * a);
    const double kb = k(s * b);
    const double kc = k(s * c);
    const double chord = ka + (kc - ka) * (b - a) / (c - a);
    if (kb < chord - 1e-12) ++violations;
  }
  return violations;
}

SingularityVerdict check_singularity(const Kernel& k) {
  if (k.kind() != Kernel::Kind::kTable) return {true, "built-in logarithmic kernel"};
  if (!k.singular()) return {false, "table kernel has a finite or undefined value at 0"};
  for (int e = 8; e <= 16; ++e) {
    const double t = std::pow(10.0, -e);
    for (double s : {-1.0, 1.0}) {
      const double v = k(s * t);
      if (!(v < -e)) {
        std::ostringstream os;
        os << "K(" << s * t << ") = " << v << " is not below " << -e;
        return {false, os.str()};
      }
    }
  }
  return {true, "K(±1e-k) < -k for k = 8..16"};
}

AdmissibilityVerdict probe_divergence(const Field& f, std::span<const Kernel> kernels,
                                      std::span<const double> shifts, int probe_levels) {
  if (kernels.empty()) throw std::invalid_argument("kernels must be nonempty");
  if (shifts.size() != kernels.size()) throw std::invalid_argument("one shift per kernel");
  if (probe_levels < 4) throw std::invalid_argument("probe_levels must be >= 4");

  AdmissibilityVerdict verdict;
  std::vector<double> right;
  std::vector<double> left;
  auto sum_at = [&](double t) {
    double s = f(t);
    for (std::size_t j = 0; j < kernels.size() && s != kNegInf; ++j) s += kernels[j](t - shifts[j]);
    return s;
  };
  for (int e = 0; e <= probe_levels; ++e) {
    const double t = std::ldexp(1.0, e);
    right.push_back(sum_at(t));
    left.push_back(sum_at(-t));
  }
  double estimate = kNegInf;
  for (double v : right) estimate = std::max(estimate, v);
  for (double v : left) estimate = std::max(estimate, v);
  verdict.interior_estimate = estimate;
  verdict.right_diverges = direction_diverges(right, estimate);
  verdict.left_diverges = direction_diverges(left, estimate);
  verdict.admissible = verdict.right_diverges && verdict.left_diverges;

  for (int e = 0; e <= probe_levels; ++e) {
    verdict.trail.t.push_back(std::ldexp(1.0, e));
    verdict.trail.values.push_back(right[static_cast<std::size_t>(e)]);
  }
  for (int e = 0; e <= probe_levels; ++e) {
    verdict.trail.t.push_back(-std::ldexp(1.0, e));
    verdict.trail.values.push_back(left[static_cast<std::size_t>(e)]);
  }
  if (f.is_discrete()) {
    verdict.note = "field has finite support";
  } else if (!verdict.admissible) {
    verdict.note = std::string("no divergence to -inf detected ") +
                   (!verdict.right_diverges && !verdict.left_diverges ? "on both sides"
                    : !verdict.right_diverges                         ? "on the right"
                                                                      : "on the left");
  }
  return verdict;
}

AdmissibilityVerdict is_admissible(const Field& f, std::span<const Kernel> kernels, int probe_levels) {
  const std::vector<double> zeros(kernels.size(), 0.0);
  return probe_divergence(f, kernels, zeros, probe_levels);
}

}  // namespace sumtrans
