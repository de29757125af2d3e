#pragma once

namespace prodigy {

/// Iterate-weight sequence for the weighted methods.
///
/// All data-independent kinds emit 1 <= w(0) <= w(1) <= ...; the polynomial
/// kind is (k+1)^p so that the first weight is already 1. The coupled kind
/// tracks the current distance estimate (w = d^2) and is reserved for the
/// dual-averaging updates, which hard-wire that weighting.
struct WeightSchedule {
  enum class Kind { constant, polynomial, exponential, coupled_d_squared };

  Kind kind = Kind::constant;
  double power = 0.0;  // polynomial exponent p >= 0
  double beta2 = 0.0;  // exponential base, must lie in (0, 1)

  static WeightSchedule constant() { return {}; }
  static WeightSchedule polynomial(double p);
  static WeightSchedule exponential(double beta2);
  static WeightSchedule coupled_d_squared() {
    return {Kind::coupled_d_squared, 0.0, 0.0};
  }
};

/// Weight for step k. `d` is the current distance estimate and is consumed
/// only by the coupled kind (where it must be positive).
double weight_at(const WeightSchedule& schedule, long k, double d = 1.0);

}  // namespace prodigy
