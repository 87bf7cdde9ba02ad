#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumtrans/problem.hpp"
#include "sumtrans/translates.hpp"

namespace sumtrans {

struct SolveOptions {
  double tol = 1e-8;
  std::size_t max_iter = 200;
  std::size_t starts = 10;
  std::uint64_t seed = 0;
  /// Run every start instead of stopping at the first converged one; the
  /// converged solutions are kept in SolveResult::start_solutions.
  bool all_starts = false;
  /// Skip the admissibility probe (the caller vouches for the field).
  bool assume_admissible = false;
};

struct SolveResult {
  NodeConfig y;
  DifferenceVector d_achieved;
  double residual = 0.0;  // ||d_achieved - d_target||_inf
  std::size_t iterations = 0;
  std::size_t starts_used = 0;
  bool converged = false;
  bool used_homotopy = false;
  /// False when some kernel is only claimed (not known) to be strictly concave.
  bool hypotheses_verified = true;
  std::vector<NodeConfig> start_solutions;
};

/// Thrown when neither the multi-start Newton runs nor the homotopy fallback
/// reach the tolerance. Carries the best iterate found, when there is one.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(double best_residual, std::optional<SolveResult> best)
      : std::runtime_error("solver failed: best residual " + format_residual(best_residual)),
        best_residual_(best_residual),
        best_(std::move(best)) {}

  double best_residual() const { return best_residual_; }
  static std::string format_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", r);
    return buf;
  }
  const std::optional<SolveResult>& best() const { return best_; }

 private:
  double best_residual_;
  std::optional<SolveResult> best_;
};

struct HypothesisReport {
  bool ok = true;
  bool strictly_concave_claimed = true;
  std::vector<std::string> failures;
};

/// Singular GM kernels and an admissible field; strict concavity is recorded
/// but not required.
HypothesisReport check_main_hypotheses(const Problem& problem, bool assume_admissible = false);

/// Throws HypothesisError listing the failed hypotheses.
HypothesisReport require_main_hypotheses(const Problem& problem, bool assume_admissible = false);

/// Initial node configurations: quantiles of the field mass (or gaps of a
/// finite support), the first unjittered, the rest jittered from `seed`.
std::vector<NodeConfig> start_points(const Problem& problem, std::size_t count, std::uint64_t seed);

/// Finds y with ||D(y) - d_target||_inf <= tol by damped Newton iteration
/// with a forward-difference Jacobian, multi-start and homotopy fallback.
SolveResult invert_difference(const Problem& problem, std::span<const double> d_target,
                              const SolveOptions& options = {});

struct EquioscillationResult {
  SolveResult solve;
  MaximaReport maxima;
  double level = 0.0;   // mean of the local maxima
  double spread = 0.0;  // max_j m_j - min_j m_j
};

EquioscillationResult equioscillate(const Problem& problem, const SolveOptions& options = {});

struct LipschitzBounds {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t pairs_used = 0;
  std::size_t skipped = 0;  // samples outside the regularity set
};

/// Ratios ||D(y') - D(y'')||_inf / ||y' - y''||_inf over random pairs in the
/// sup-norm ball of `radius` around y.
LipschitzBounds local_lipschitz_probe(const Problem& problem, const NodeConfig& y, double radius,
                                      std::size_t samples, std::uint64_t seed = 0);

}  // namespace sumtrans
