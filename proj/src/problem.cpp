#include "sumtrans/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sumtrans {

Problem::Problem(std::vector<Kernel> kernels, Field field, SearchOptions search)
    : kernels_(std::move(kernels)), field_(std::move(field)), search_(search) {
  if (kernels_.empty()) throw std::invalid_argument("problem needs at least one kernel");
  const std::size_t support = field_.finite_support_count();
  if (support != kInfiniteSupport && support <= kernels_.size()) {
    throw std::invalid_argument("field must be finite at more than n points");
  }
  if (search_.grid_density < 3) throw std::invalid_argument("grid_density must be >= 3");
  if (!(search_.t_tolerance > 0)) throw std::invalid_argument("t_tolerance must be positive");
  if (!(search_.truncation_margin >= 1)) throw std::invalid_argument("truncation margin must be >= 1");
}

NodeConfig::NodeConfig(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("node configuration must be nonempty");
  for (double v : nodes_) {
    if (!std::isfinite(v)) throw std::invalid_argument("nodes must be finite");
  }
  if (!std::is_sorted(nodes_.begin(), nodes_.end())) {
    throw std::invalid_argument("nodes must be sorted: y_1 <= ... <= y_n");
  }
}

bool NodeConfig::strictly_increasing() const {
  return std::adjacent_find(nodes_.begin(), nodes_.end(), std::greater_equal<>()) == nodes_.end();
}

}  // namespace sumtrans
