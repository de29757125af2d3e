#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "prodigy/baselines.hpp"
#include "prodigy/coordinate.hpp"
#include "prodigy/oracle.hpp"
#include "prodigy/prodigy.hpp"
#include "prodigy/schedule.hpp"
#include "prodigy/trace.hpp"

namespace prodigy {

enum class Method {
  prodigy_gd,
  prodigy_da,
  coord_da,
  prodigy_adam,
  dadapt,
  dog,
  adagrad_knownD,
  adam,
};

Method method_from_name(std::string_view name);  // throws on unknown names
std::string method_name(Method method);

struct RunOptions {
  double d0 = 1e-6;
  long steps = 1000;

  // prodigy_gd weight schedule. Leave unset for the default (constant);
  // the dual-averaging variants reject anything but the coupled kind.
  std::optional<WeightSchedule> schedule;

  AdamConfig adam;        // d0 is taken from the field above
  GammaSchedule gamma;    // adam variants
  AdamBaselineConfig adam_baseline;

  double known_distance = 0.0;     // adagrad_knownD; 0 -> use the declared minimizer
  double dog_initial_radius = 0.0; // 0 -> d0

  bool record_points = false;
  bool track_average_objective = true;
  // Optional extra metric (e.g. accuracy) evaluated at the averaged iterate.
  std::function<double(std::span<const double>)> metric;
};

/// Runs `options.steps` steps of the chosen method on the oracle from x0 and
/// records the full trace. The averaged iterate is the method's own weighted
/// average; the Adam variants return the last iterate instead.
RunTrace run_method(Method method, const ProblemOracle& oracle, const Vec& x0,
                    const RunOptions& options);

/// Trace sanity checks shared by the bench runner: the distance estimate must
/// be non-decreasing, and when the oracle declares a minimizer with
/// d0 <= ||x0 - x*|| the estimate must stay below that distance. Returns the
/// violating step, or nullopt.
struct TraceViolation {
  long step;
  std::string message;
};
std::optional<TraceViolation> validate_trace(const RunTrace& trace,
                                             const ProblemOracle& oracle, double d0);

}  // namespace prodigy
