#include "prodigy/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace prodigy {

WeightSchedule WeightSchedule::polynomial(double p) {
  if (!(p >= 0.0)) {
    throw std::invalid_argument("polynomial schedule: exponent must be >= 0");
  }
  return {Kind::polynomial, p, 0.0};
}

WeightSchedule WeightSchedule::exponential(double beta2) {
  if (!(beta2 > 0.0 && beta2 < 1.0)) {
    throw std::invalid_argument("exponential schedule: beta2 must lie in (0, 1)");
  }
  return {Kind::exponential, 0.0, beta2};
}

double weight_at(const WeightSchedule& schedule, long k, double d) {
  if (k < 0) throw std::invalid_argument("weight_at: negative step index");
  switch (schedule.kind) {
    case WeightSchedule::Kind::constant:
      return 1.0;
    case WeightSchedule::Kind::polynomial:
      return std::pow(static_cast<double>(k) + 1.0, schedule.power);
    case WeightSchedule::Kind::exponential:
      if (!(schedule.beta2 > 0.0 && schedule.beta2 < 1.0)) {
        throw std::invalid_argument("exponential schedule: beta2 must lie in (0, 1)");
      }
      return std::pow(schedule.beta2, -0.5 * static_cast<double>(k));
    case WeightSchedule::Kind::coupled_d_squared:
      if (!(d > 0.0)) {
        throw std::invalid_argument("coupled schedule: distance estimate must be positive");
      }
      return d * d;
  }
  throw std::logic_error("weight_at: unknown schedule kind");
}

}  // namespace prodigy
