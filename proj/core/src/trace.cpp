#include "prodigy/trace.hpp"

#include <stdexcept>

namespace prodigy {

AveragedIterate weighted_average(const std::vector<Vec>& points,
                                 const std::vector<double>& weights) {
  if (points.empty() || points.size() != weights.size()) {
    throw std::invalid_argument("weighted_average: need equal, nonzero lengths");
  }
  const std::size_t p = points.front().size();
  Vec sum(p, 0.0);
  double wsum = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].size() != p) {
      throw std::invalid_argument("weighted_average: inconsistent point dimension");
    }
    const double w = weights[k];
    if (w < 0.0) throw std::invalid_argument("weighted_average: negative weight");
    for (std::size_t i = 0; i < p; ++i) sum[i] += w * points[k][i];
    wsum += w;
  }
  if (!(wsum > 0.0)) {
    throw std::invalid_argument("weighted_average: all weights are zero");
  }
  for (double& v : sum) v /= wsum;
  return {std::move(sum), wsum};
}

}  // namespace prodigy
