#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sumtrans/field.hpp"
#include "sumtrans/kernel.hpp"

namespace sumtrans {

/// Tuning of the interval suprema search.
struct SearchOptions {
  std::size_t grid_density = 2048;  // coarse samples per interval
  double t_tolerance = 1e-9;        // golden-section bracket width
  double node_guard = 1e-12;        // relative exclusion zone around nodes
  std::size_t refine_candidates = 3;
  double truncation_margin = 2.0;   // margin passed to tail_bound
};

/// Kernels K_1..K_n together with a field J. Construction checks that J is
/// finite at more than n points.
class Problem {
 public:
  Problem(std::vector<Kernel> kernels, Field field, SearchOptions search = {});

  std::size_t n() const { return kernels_.size(); }
  std::span<const Kernel> kernels() const { return kernels_; }
  const Field& field() const { return field_; }
  const SearchOptions& search() const { return search_; }

  Problem with_field(Field field) const { return Problem(kernels_, std::move(field), search_); }
  Problem with_search(SearchOptions search) const { return Problem(kernels_, field_, search); }

 private:
  std::vector<Kernel> kernels_;
  Field field_;
  SearchOptions search_;
};

/// Ordered nodes y_1 <= ... <= y_n.
class NodeConfig {
 public:
  /// Throws std::invalid_argument for empty, non-finite or unsorted input.
  explicit NodeConfig(std::vector<double> nodes);

  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const double> values() const { return nodes_; }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  bool strictly_increasing() const;

  friend bool operator==(const NodeConfig&, const NodeConfig&) = default;

 private:
  std::vector<double> nodes_;
};

}  // namespace sumtrans
