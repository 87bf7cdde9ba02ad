#pragma once

#include <cstddef>
#include <span>

#include "sumtrans/problem.hpp"
#include "sumtrans/translates.hpp"

namespace sumtrans::oracle {

// Brute-force references for local_maxima and invert_difference. Nothing
// here calls into the refined interval search; only kernel and field
// evaluation is shared.

struct GridSpec {
  double step = 1e-3;
  double extent = 10.0;  // scan window [-extent, extent]

  /// Throws std::invalid_argument unless step > 0 and extent > 0.
  void validate() const;
};

/// Local maxima by exhaustive scan of t = -extent + k step (plus the nodes);
/// discrete fields are scanned on their support.
MaximaReport grid_local_maxima(const Problem& problem, const NodeConfig& y, const GridSpec& spec);

struct GridInversion {
  NodeConfig y;
  double objective = 0.0;  // ||D_grid(y) - d_target||_inf
  std::size_t ties = 0;    // other final-level configurations within 1e-12 of the best
  double tie_spread = 0.0; // largest sup-distance from y among those ties
};

/// Minimizes ||D(y) - d_target||_inf over node tuples on the grid of
/// resolution spec.step inside [-extent, extent]; n must be 1 or 2. The scan
/// runs coarse-to-fine: exhaustive over the whole window at a coarse node
/// step, then exhaustive in a neighbourhood of the incumbent at each finer
/// step.
GridInversion grid_invert_detailed(const Problem& problem, std::span<const double> d_target,
                                   const GridSpec& spec);

NodeConfig grid_invert(const Problem& problem, std::span<const double> d_target, const GridSpec& spec);

}  // namespace sumtrans::oracle
