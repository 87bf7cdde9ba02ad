#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sumtrans/field.hpp"
#include "sumtrans/kernel.hpp"

namespace sumtrans {

/// One failed instance of the shift inequalities for a kernel.
///   part 1: K(t2+h) - K(t1+h) <= K(t2) - K(t1)   for 0<t1<t2 or t1<t2<t2+h<0
///   part 2: K(t2) - K(t1) <= K(t2+h) - K(t1+h)   for t1<t1+h<0<t2 (GM kernels)
struct ShiftViolation {
  int part = 1;
  double t1 = 0, t2 = 0, h = 0;
  double lhs = 0, rhs = 0;
};

struct ShiftCheckReport {
  std::vector<ShiftViolation> violations;
  std::size_t tuples_checked = 0;
  bool part2_checked = false;
  std::string note;

  bool ok() const { return violations.empty(); }
};

inline constexpr double kShiftTolerance = 1e-12;

/// Evaluates both sides of one tuple; true when the inequality holds to
/// kShiftTolerance.
bool shift_inequality_holds(const Kernel& k, int part, double t1, double t2, double h,
                            ShiftViolation* out = nullptr);

ShiftCheckReport check_shift_inequalities(const Kernel& k, std::size_t sample_count,
                                          std::uint64_t seed);

/// Midpoint-above-chord test on random same-side triples. Returns the number
/// of triples violating concavity by more than 1e-12.
std::size_t count_concavity_violations(const Kernel& k, std::size_t sample_count,
                                       std::uint64_t seed);

struct SingularityVerdict {
  bool holds = false;
  std::string detail;
};

/// Exact for built-in kernels; table kernels must satisfy K(±10^-k) < -k
/// for k = 8..16.
SingularityVerdict check_singularity(const Kernel& k);

struct ProbeTrail {
  std::vector<double> t;       // probe abscissae, +2^k then -2^k
  std::vector<double> values;  // sum at each probe (may be -inf)
};

struct AdmissibilityVerdict {
  bool admissible = false;
  bool right_diverges = false;
  bool left_diverges = false;
  double interior_estimate = kNegInf;
  ProbeTrail trail;
  std::string note;
};

inline constexpr int kDefaultProbeLevels = 24;

/// Sampling heuristic for J(t) + sum_j K_j(t) -> -inf as |t| -> inf. Probes
/// t = ±2^k, k = 0..probe_levels; a direction passes when its last probe sits
/// more than 10 below the best probe seen and its last five probes strictly
/// decrease (or are all -inf). Not a proof.
AdmissibilityVerdict is_admissible(const Field& f, std::span<const Kernel> kernels,
                                   int probe_levels = kDefaultProbeLevels);

/// Same probe schedule applied to J(t) + sum_j K_j(t - shifts_j).
AdmissibilityVerdict probe_divergence(const Field& f, std::span<const Kernel> kernels,
                                      std::span<const double> shifts,
                                      int probe_levels = kDefaultProbeLevels);

}  // namespace sumtrans
