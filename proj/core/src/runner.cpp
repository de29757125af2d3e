#include "prodigy/runner.hpp"

#include <cmath>
#include <stdexcept>

namespace prodigy {

namespace {

constexpr double kRelSlack = 1e-9;

template <class Opt>
RunTrace drive(Opt& opt, const ProblemOracle& oracle, const RunOptions& options) {
  RunTrace trace;
  trace.x0 = opt.point();
  trace.rows.reserve(static_cast<std::size_t>(options.steps));

  for (long k = 0; k < options.steps; ++k) {
    const Vec& x = opt.point();
    Evaluation ev = oracle.eval(x);

    TraceRow row;
    row.step = k;
    row.f = ev.value;
    row.d = opt.distance_estimate();
    row.grad_norm = norm_l2(ev.subgradient);
    row.dist_x0 = distance_l2(x, trace.x0);
    if (options.record_points) trace.points.push_back(x);

    opt.step(ev.subgradient);
    row.step_size = opt.last_step_size();
    row.lambda = opt.last_lambda();

    if (options.track_average_objective) {
      const AveragedIterate avg = opt.average();
      if (avg.weight_sum > 0.0) {
        row.f_avg = oracle.eval(avg.point).value;
        if (options.metric) row.accuracy = options.metric(avg.point);
      }
    }
    trace.rows.push_back(row);
  }

  trace.final_x = opt.point();
  trace.final_d = opt.distance_estimate();
  trace.final_dist_x0 = distance_l2(trace.final_x, trace.x0);
  trace.average = opt.average();
  trace.returned_x = trace.average.weight_sum > 0.0 ? trace.average.point : trace.x0;
  trace.returned_f = oracle.eval(trace.returned_x).value;
  if (options.metric) trace.returned_accuracy = options.metric(trace.returned_x);
  trace.stationary_start = opt.stationary_start();
  return trace;
}

template <class Opt>
RunTrace drive_adam(Opt& opt, const ProblemOracle& oracle, const RunOptions& options,
                    double d_placeholder) {
  RunTrace trace;
  trace.x0 = opt.point();
  trace.rows.reserve(static_cast<std::size_t>(options.steps));

  for (long k = 0; k < options.steps; ++k) {
    const Vec& x = opt.point();
    Evaluation ev = oracle.eval(x);

    TraceRow row;
    row.step = k;
    row.f = ev.value;
    row.grad_norm = norm_l2(ev.subgradient);
    row.dist_x0 = distance_l2(x, trace.x0);
    if (options.record_points) trace.points.push_back(x);

    const double gamma = gamma_at(options.gamma, k, options.steps);
    row.lambda = gamma;
    if constexpr (requires { opt.distance_estimate(); }) {
      row.d = opt.distance_estimate();
    } else {
      row.d = d_placeholder;
    }
    opt.step(ev.subgradient, gamma);
    row.step_size = opt.last_step_size();
    trace.rows.push_back(row);
  }

  trace.final_x = opt.point();
  if constexpr (requires { opt.distance_estimate(); }) {
    trace.final_d = opt.distance_estimate();
  } else {
    trace.final_d = d_placeholder;
  }
  trace.final_dist_x0 = distance_l2(trace.final_x, trace.x0);
  trace.returned_x = trace.final_x;  // no iterate averaging in the Adam variants
  trace.returned_f = oracle.eval(trace.returned_x).value;
  if (options.metric) trace.returned_accuracy = options.metric(trace.returned_x);
  return trace;
}

void check_setup(const ProblemOracle& oracle, const Vec& x0, const RunOptions& options) {
  if (static_cast<int>(x0.size()) != oracle.dim()) {
    throw std::invalid_argument("run_method: x0 dimension does not match the oracle");
  }
  if (!(options.d0 > 0.0)) throw std::invalid_argument("run_method: d0 must be positive");
  if (options.steps < 0) throw std::invalid_argument("run_method: negative step count");
}

WeightSchedule gd_schedule(const RunOptions& options) {
  if (!options.schedule) return WeightSchedule::constant();
  if (options.schedule->kind == WeightSchedule::Kind::coupled_d_squared) {
    throw std::invalid_argument(
        "run_method: the gradient-descent variant needs a data-independent schedule");
  }
  return *options.schedule;
}

void require_coupled(const RunOptions& options) {
  if (options.schedule &&
      options.schedule->kind != WeightSchedule::Kind::coupled_d_squared) {
    throw std::invalid_argument(
        "run_method: the dual-averaging variants support only the d^2-coupled weights");
  }
}

RunTrace empty_run(const ProblemOracle& oracle, const Vec& x0, const RunOptions& options,
                   double d0) {
  RunTrace trace;
  trace.x0 = x0;
  trace.final_x = x0;
  trace.final_d = d0;
  trace.final_dist_x0 = 0.0;
  trace.returned_x = x0;
  trace.returned_f = oracle.eval(x0).value;
  if (options.metric) trace.returned_accuracy = options.metric(x0);
  return trace;
}

}  // namespace

Method method_from_name(std::string_view name) {
  if (name == "prodigy_gd") return Method::prodigy_gd;
  if (name == "prodigy_da") return Method::prodigy_da;
  if (name == "coord_da") return Method::coord_da;
  if (name == "prodigy_adam") return Method::prodigy_adam;
  if (name == "dadapt") return Method::dadapt;
  if (name == "dog") return Method::dog;
  if (name == "adagrad_knownD") return Method::adagrad_knownD;
  if (name == "adam") return Method::adam;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

std::string method_name(Method method) {
  switch (method) {
    case Method::prodigy_gd: return "prodigy_gd";
    case Method::prodigy_da: return "prodigy_da";
    case Method::coord_da: return "coord_da";
    case Method::prodigy_adam: return "prodigy_adam";
    case Method::dadapt: return "dadapt";
    case Method::dog: return "dog";
    case Method::adagrad_knownD: return "adagrad_knownD";
    case Method::adam: return "adam";
  }
  throw std::logic_error("method_name: unknown method");
}

RunTrace run_method(Method method, const ProblemOracle& oracle, const Vec& x0,
                    const RunOptions& options) {
  check_setup(oracle, x0, options);
  if (options.steps == 0) return empty_run(oracle, x0, options, options.d0);

  switch (method) {
    case Method::prodigy_gd: {
      ProdigyGD opt(x0, options.d0, oracle.lipschitz(), gd_schedule(options));
      return drive(opt, oracle, options);
    }
    case Method::prodigy_da: {
      require_coupled(options);
      ProdigyDA opt(x0, options.d0, oracle.lipschitz());
      return drive(opt, oracle, options);
    }
    case Method::coord_da: {
      require_coupled(options);
      CoordinateDA opt(x0, options.d0, oracle.lipschitz_inf());
      RunTrace trace = drive(opt, oracle, options);
      trace.zero_coordinate_events = opt.zero_coordinate_events();
      return trace;
    }
    case Method::prodigy_adam: {
      AdamConfig config = options.adam;
      config.d0 = options.d0;
      ProdigyAdam opt(x0, config);
      return drive_adam(opt, oracle, options, config.d0);
    }
    case Method::dadapt: {
      DAdaptation opt(x0, options.d0, oracle.lipschitz());
      return drive(opt, oracle, options);
    }
    case Method::dog: {
      const double radius =
          options.dog_initial_radius > 0.0 ? options.dog_initial_radius : options.d0;
      Dog opt(x0, radius, oracle.lipschitz());
      return drive(opt, oracle, options);
    }
    case Method::adagrad_knownD: {
      double known = options.known_distance;
      if (known <= 0.0) {
        const auto xstar = oracle.minimizer();
        if (!xstar) {
          throw std::invalid_argument(
              "run_method: adagrad_knownD needs known_distance or a declared minimizer");
        }
        known = distance_l2(x0, *xstar);
      }
      AdaGradKnownD opt(x0, known);
      return drive(opt, oracle, options);
    }
    case Method::adam: {
      AdamBaseline opt(x0, options.adam_baseline);
      return drive_adam(opt, oracle, options, TraceRow::kNaN);
    }
  }
  throw std::logic_error("run_method: unknown method");
}

std::optional<TraceViolation> validate_trace(const RunTrace& trace,
                                             const ProblemOracle& oracle, double d0) {
  double prev_d = 0.0;
  for (const TraceRow& row : trace.rows) {
    if (row.d < prev_d * (1.0 - kRelSlack)) {
      return TraceViolation{row.step, "distance estimate decreased"};
    }
    prev_d = std::max(prev_d, row.d);
  }
  if (trace.final_d < prev_d * (1.0 - kRelSlack)) {
    return TraceViolation{trace.steps(), "distance estimate decreased"};
  }

  if (const auto xstar = oracle.minimizer()) {
    const double distance = distance_l2(trace.x0, *xstar);
    if (d0 <= distance) {
      const double limit = distance * (1.0 + kRelSlack) + 1e-12;
      for (const TraceRow& row : trace.rows) {
        if (row.d > limit) {
          return TraceViolation{row.step, "distance estimate exceeded ||x0 - x*||"};
        }
      }
      if (trace.final_d > limit) {
        return TraceViolation{trace.steps(), "distance estimate exceeded ||x0 - x*||"};
      }
    }
  }
  return std::nullopt;
}

}  // namespace prodigy
