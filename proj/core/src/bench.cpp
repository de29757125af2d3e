#include "prodigy/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "prodigy/libsvm.hpp"
#include "prodigy/problems.hpp"
#include "prodigy/rng.hpp"

namespace prodigy::bench {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

[[noreturn]] void config_error(const std::string& origin, const std::string& what) {
  throw std::runtime_error(origin + ": " + what);
}

double parse_number(const std::string& origin, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    config_error(origin, "bad number for '" + key + "': '" + value + "'");
  }
}

long parse_integer(const std::string& origin, const std::string& key,
                   const std::string& value) {
  try {
    std::size_t used = 0;
    const long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    config_error(origin, "bad integer for '" + key + "': '" + value + "'");
  }
}

bool parse_bool(const std::string& origin, const std::string& key,
                const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  config_error(origin, "bad boolean for '" + key + "': '" + value + "'");
}

WeightSchedule parse_schedule(const std::string& origin, const std::string& value) {
  if (value == "constant") return WeightSchedule::constant();
  if (value == "coupled") return WeightSchedule::coupled_d_squared();
  if (value.rfind("poly:", 0) == 0) {
    return WeightSchedule::polynomial(parse_number(origin, "schedule", value.substr(5)));
  }
  if (value.rfind("exp:", 0) == 0) {
    return WeightSchedule::exponential(parse_number(origin, "schedule", value.substr(4)));
  }
  config_error(origin, "unknown schedule '" + value + "'");
}

struct ProblemSetup {
  std::unique_ptr<ProblemOracle> oracle;
  std::optional<Dataset> dataset;  // kept alive for the accuracy metric
  int dim = 0;
};

ProblemSetup build_problem(const RunConfig& config) {
  ProblemSetup setup;
  if (config.problem == "abs_distance" || config.problem == "max_abs") {
    if (config.dim < 1) throw std::runtime_error("config: dim must be >= 1");
    Vec xstar(static_cast<std::size_t>(config.dim),
              config.distance / std::sqrt(static_cast<double>(config.dim)));
    if (config.problem == "abs_distance") {
      setup.oracle = std::make_unique<AbsDistanceOracle>(std::move(xstar));
    } else {
      setup.oracle = std::make_unique<MaxAbsOracle>(std::move(xstar));
    }
    setup.dim = config.dim;
  } else if (config.problem == "hinge_1d") {
    setup.oracle = std::make_unique<Hinge1DOracle>(config.distance);
    setup.dim = 1;
  } else if (config.problem == "synthetic_classification") {
    Dataset data = make_separable_classification(config.samples, config.features,
                                                 config.classes, config.class_separation,
                                                 config.data_seed);
    setup.dim = data.n_classes * data.n_features;
    setup.dataset = data;
    setup.oracle = std::make_unique<MultiMarginOracle>(std::move(data), config.margin);
  } else if (config.problem == "libsvm") {
    if (config.libsvm_path.empty()) {
      throw std::runtime_error("config: libsvm problem needs libsvm_path");
    }
    Dataset data = load_libsvm(config.libsvm_path);
    setup.dim = data.n_classes * data.n_features;
    setup.dataset = data;
    setup.oracle = std::make_unique<MultiMarginOracle>(std::move(data), config.margin);
  } else {
    throw std::runtime_error("config: unknown problem '" + config.problem + "'");
  }
  return setup;
}

Vec draw_x0(const RunConfig& config, int dim, std::uint64_t seed) {
  SplitMix64 rng(seed, /*stream=*/1);
  Vec x0(static_cast<std::size_t>(dim));
  for (double& v : x0) v = config.x0_scale * rng.normal();
  return x0;
}

RunOptions options_for(const RunConfig& config, Method method,
                       const ProblemSetup& setup) {
  RunOptions options;
  options.d0 = config.d0;
  options.steps = config.steps;
  options.adam = config.adam;
  options.gamma = config.gamma;
  options.known_distance = config.known_distance;
  if (method == Method::prodigy_gd) {
    options.schedule = config.schedule;
  } else if (method == Method::prodigy_da || method == Method::coord_da) {
    options.schedule = WeightSchedule::coupled_d_squared();
  }
  if (setup.dataset) {
    const Dataset* data = &*setup.dataset;
    options.metric = [data](std::span<const double> w) {
      return classification_accuracy(*data, w);
    };
  }
  return options;
}

std::optional<double> row_f_gap(double f, std::optional<double> f_star) {
  if (!f_star) return std::nullopt;
  return f - *f_star;
}

void append_expbound_reports(const RunTrace& trace, double d0, const std::string& tag,
                             std::vector<theory::BoundReport>& reports) {
  for (const TraceRow& row : trace.rows) {
    theory::BoundReport report;
    report.context = "expbound/" + tag;
    report.step = row.step;
    report.observed = row.dist_x0;
    report.bound = std::ldexp(d0, static_cast<int>(row.step));
    report.holds = theory::bound_holds(report.observed, report.bound);
    reports.push_back(std::move(report));
  }
  theory::BoundReport final_report;
  final_report.context = "expbound/" + tag;
  final_report.step = trace.steps();
  final_report.observed = trace.final_dist_x0;
  final_report.bound = std::ldexp(d0, static_cast<int>(trace.steps()));
  final_report.holds = theory::bound_holds(final_report.observed, final_report.bound);
  reports.push_back(std::move(final_report));
}

}  // namespace

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open config");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig config;
  bool saw_schema = false;

  std::istringstream stream(text);
  std::string line;
  long line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      config_error(origin, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      config_error(origin, "line " + std::to_string(line_no) + ": empty key");
    }

    if (key == "schema_version") {
      if (parse_integer(origin, key, value) != 1) {
        config_error(origin, "unsupported schema_version '" + value + "'");
      }
      saw_schema = true;
    } else if (key == "problem") {
      config.problem = value;
    } else if (key == "dim") {
      config.dim = static_cast<int>(parse_integer(origin, key, value));
    } else if (key == "distance") {
      config.distance = parse_number(origin, key, value);
    } else if (key == "libsvm_path") {
      config.libsvm_path = value;
    } else if (key == "margin") {
      config.margin = parse_number(origin, key, value);
    } else if (key == "classes") {
      config.classes = static_cast<int>(parse_integer(origin, key, value));
    } else if (key == "samples") {
      config.samples = static_cast<int>(parse_integer(origin, key, value));
    } else if (key == "features") {
      config.features = static_cast<int>(parse_integer(origin, key, value));
    } else if (key == "class_separation") {
      config.class_separation = parse_number(origin, key, value);
    } else if (key == "data_seed") {
      config.data_seed = static_cast<std::uint64_t>(parse_integer(origin, key, value));
    } else if (key == "optimizers") {
      config.optimizers.clear();
      for (const std::string& name : split(value, ',')) {
        try {
          config.optimizers.push_back(method_from_name(name));
        } catch (const std::exception& e) {
          config_error(origin, e.what());
        }
      }
    } else if (key == "d0") {
      config.d0 = parse_number(origin, key, value);
    } else if (key == "schedule") {
      config.schedule = parse_schedule(origin, value);
    } else if (key == "steps") {
      config.steps = parse_integer(origin, key, value);
    } else if (key == "seeds") {
      config.seeds.clear();
      for (const std::string& s : split(value, ',')) {
        config.seeds.push_back(static_cast<std::uint64_t>(parse_integer(origin, key, s)));
      }
    } else if (key == "x0_scale") {
      config.x0_scale = parse_number(origin, key, value);
    } else if (key == "known_distance") {
      config.known_distance = parse_number(origin, key, value);
    } else if (key == "adam_beta1") {
      config.adam.beta1 = parse_number(origin, key, value);
    } else if (key == "adam_beta2") {
      config.adam.beta2 = parse_number(origin, key, value);
    } else if (key == "adam_eps") {
      config.adam.eps = parse_number(origin, key, value);
    } else if (key == "adam_bias_correction") {
      config.adam.bias_correction = parse_bool(origin, key, value);
    } else if (key == "weight_decay") {
      config.adam.weight_decay = parse_number(origin, key, value);
    } else if (key == "gamma_schedule") {
      if (value == "constant") {
        config.gamma.kind = GammaSchedule::Kind::constant;
      } else if (value == "cosine") {
        config.gamma.kind = GammaSchedule::Kind::cosine;
      } else {
        config_error(origin, "unknown gamma_schedule '" + value + "'");
      }
    } else if (key == "gamma_base") {
      config.gamma.base = parse_number(origin, key, value);
    } else if (key == "warmup_steps") {
      config.gamma.warmup = parse_integer(origin, key, value);
    } else if (key == "checks") {
      config.checks = split(value, ',');
    } else if (key == "out_dir") {
      config.out_dir = value;
    } else {
      config_error(origin, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }

  if (!saw_schema) config_error(origin, "missing schema_version");
  if (!(config.d0 > 0.0)) config_error(origin, "d0 must be positive");
  if (config.steps < 1) config_error(origin, "steps must be >= 1");
  if (config.seeds.empty()) config_error(origin, "seeds must be nonempty");
  if (config.optimizers.empty()) config_error(origin, "optimizers must be nonempty");
  for (const std::string& check : config.checks) {
    if (check != "theorem1" && check != "theorem2" && check != "expbound") {
      config_error(origin, "unknown check '" + check + "'");
    }
  }
  return config;
}

AggregateStats aggregate(const std::vector<RunTrace>& traces,
                         std::optional<double> f_star) {
  if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
  const std::size_t rows = traces.front().rows.size();
  for (const RunTrace& trace : traces) {
    if (trace.rows.size() != rows) {
      throw std::invalid_argument("aggregate: ragged traces");
    }
  }
  const double count = static_cast<double>(traces.size());

  AggregateStats stats;
  stats.has_accuracy =
      !traces.front().rows.empty() && !std::isnan(traces.front().rows.front().accuracy);
  stats.rows.reserve(rows + 1);

  // Two-pass mean/stderr keeps the reduction order fixed.
  const auto reduce = [&](auto&& value_of, long step) {
    AggregateRow out;
    out.step = step;
    double mean_gap = 0.0, mean_acc = 0.0;
    for (const RunTrace& trace : traces) {
      const auto [gap, acc] = value_of(trace);
      mean_gap += gap;
      mean_acc += acc;
    }
    mean_gap /= count;
    mean_acc /= count;
    double var_gap = 0.0, var_acc = 0.0;
    if (traces.size() > 1) {
      for (const RunTrace& trace : traces) {
        const auto [gap, acc] = value_of(trace);
        var_gap += (gap - mean_gap) * (gap - mean_gap);
        var_acc += (acc - mean_acc) * (acc - mean_acc);
      }
      var_gap /= (count - 1.0);
      var_acc /= (count - 1.0);
    }
    out.mean_f_gap = mean_gap;
    out.stderr_f_gap = std::sqrt(var_gap / count);
    out.mean_acc = mean_acc;
    out.stderr_acc = std::sqrt(var_acc / count);
    return out;
  };

  const double nan = TraceRow::kNaN;
  for (std::size_t r = 0; r < rows; ++r) {
    stats.rows.push_back(reduce(
        [&](const RunTrace& trace) {
          const TraceRow& row = trace.rows[r];
          const auto gap = row_f_gap(row.f, f_star);
          return std::pair{gap ? *gap : nan, row.accuracy};
        },
        static_cast<long>(r)));
  }
  stats.rows.push_back(reduce(
      [&](const RunTrace& trace) {
        const auto gap = row_f_gap(trace.returned_f, f_star);
        return std::pair{gap ? *gap : nan, trace.returned_accuracy};
      },
      static_cast<long>(rows)));
  return stats;
}

std::string format_g17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_trace_csv(const std::string& path, const RunTrace& trace,
                     std::optional<double> f_star) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << "step,f,f_gap,d,step_size,lambda,dist_x0\n";
  const double nan = TraceRow::kNaN;
  for (const TraceRow& row : trace.rows) {
    const auto gap = row_f_gap(row.f, f_star);
    out << row.step << ',' << format_g17(row.f) << ',' << format_g17(gap ? *gap : nan)
        << ',' << format_g17(row.d) << ',' << format_g17(row.step_size) << ','
        << format_g17(row.lambda) << ',' << format_g17(row.dist_x0) << '\n';
  }
  // Trailing row: the returned iterate (the weighted average, or the last
  // iterate for the Adam variants).
  const auto gap = row_f_gap(trace.returned_f, f_star);
  out << trace.steps() << ',' << format_g17(trace.returned_f) << ','
      << format_g17(gap ? *gap : nan) << ',' << format_g17(trace.final_d) << ','
      << format_g17(nan) << ',' << format_g17(nan) << ','
      << format_g17(distance_l2(trace.returned_x, trace.x0)) << '\n';
  if (!out) throw std::runtime_error(path + ": write failed");
}

void write_aggregate_csv(const std::string& path, const AggregateStats& stats) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << "step,mean_f_gap,stderr_f_gap";
  if (stats.has_accuracy) out << ",mean_acc,stderr_acc";
  out << '\n';
  for (const AggregateRow& row : stats.rows) {
    out << row.step << ',' << format_g17(row.mean_f_gap) << ','
        << format_g17(row.stderr_f_gap);
    if (stats.has_accuracy) {
      out << ',' << format_g17(row.mean_acc) << ',' << format_g17(row.stderr_acc);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

void write_bounds_csv(const std::string& path,
                      const std::vector<theory::BoundReport>& reports) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << "theorem_id,step,observed,bound,holds\n";
  for (const theory::BoundReport& report : reports) {
    out << report.context << ',' << report.step << ',' << format_g17(report.observed)
        << ',' << format_g17(report.bound) << ',' << (report.holds ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error(path + ": write failed");
}

BenchResult run_benchmark(const RunConfig& config) {
  const ProblemSetup setup = build_problem(config);
  const ProblemOracle& oracle = *setup.oracle;
  const std::optional<double> f_star = oracle.optimum_value();

  std::filesystem::create_directories(config.out_dir);
  const auto out_path = [&](const std::string& name) {
    return (std::filesystem::path(config.out_dir) / name).string();
  };

  const bool want_theorem1 =
      std::find(config.checks.begin(), config.checks.end(), "theorem1") != config.checks.end();
  const bool want_theorem2 =
      std::find(config.checks.begin(), config.checks.end(), "theorem2") != config.checks.end();
  const bool want_expbound =
      std::find(config.checks.begin(), config.checks.end(), "expbound") != config.checks.end();

  if (want_theorem1 || want_theorem2) {
    if (!oracle.minimizer() || !f_star) {
      throw std::runtime_error(
          "checks: theorem1/theorem2 need a problem with a declared minimizer");
    }
  }

  // All runs are independent; compute concurrently, write serially in a
  // fixed order so outputs are bit-identical across invocations.
  std::vector<std::vector<std::future<RunTrace>>> futures(config.optimizers.size());
  for (std::size_t m = 0; m < config.optimizers.size(); ++m) {
    const Method method = config.optimizers[m];
    for (const std::uint64_t seed : config.seeds) {
      futures[m].push_back(std::async(std::launch::async, [&, method, seed] {
        const Vec x0 = draw_x0(config, setup.dim, seed);
        return run_method(method, oracle, x0, options_for(config, method, setup));
      }));
    }
  }

  BenchResult result;
  std::vector<theory::BoundReport> reports;

  for (std::size_t m = 0; m < config.optimizers.size(); ++m) {
    const Method method = config.optimizers[m];
    const std::string name = method_name(method);
    std::vector<RunTrace> traces;
    traces.reserve(config.seeds.size());
    for (std::size_t s = 0; s < config.seeds.size(); ++s) {
      RunTrace trace = futures[m][s].get();
      if (const auto violation = validate_trace(trace, oracle, config.d0)) {
        throw std::runtime_error("invariant violation in " + name + " seed " +
                                 std::to_string(config.seeds[s]) + " at step " +
                                 std::to_string(violation->step) + ": " +
                                 violation->message);
      }
      write_trace_csv(out_path(name + "_seed" + std::to_string(config.seeds[s]) + ".csv"),
                      trace, f_star);
      ++result.trace_files;
      traces.push_back(std::move(trace));
    }
    write_aggregate_csv(out_path(name + "_agg.csv"), aggregate(traces, f_star));
    ++result.aggregate_files;

    for (std::size_t s = 0; s < config.seeds.size(); ++s) {
      const RunTrace& trace = traces[s];
      const std::string tag = name + "/seed=" + std::to_string(config.seeds[s]);
      if (want_theorem1 && method == Method::prodigy_gd) {
        const double distance = distance_l2(trace.x0, *oracle.minimizer());
        for (theory::BoundReport report :
             theory::theorem1_bounds(trace, distance, oracle.lipschitz(), *f_star)) {
          report.context = "theorem1/" + tag;
          reports.push_back(std::move(report));
        }
      }
      if (want_theorem2 && method == Method::prodigy_da) {
        const double distance = distance_l2(trace.x0, *oracle.minimizer());
        theory::BoundReport report =
            theory::theorem2_report(trace, distance, oracle.lipschitz(), config.d0, *f_star);
        report.context = "theorem2/" + tag;
        reports.push_back(std::move(report));
      }
      if (want_expbound) {
        append_expbound_reports(trace, config.d0, tag, reports);
      }
    }
  }

  if (!config.checks.empty()) {
    write_bounds_csv(out_path("bounds.csv"), reports);
    result.bounds_written = true;
    result.bound_rows = static_cast<long>(reports.size());
    for (const theory::BoundReport& report : reports) {
      if (!report.holds) result.all_checks_hold = false;
    }
  }
  return result;
}

}  // namespace prodigy::bench
