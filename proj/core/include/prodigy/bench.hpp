#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prodigy/runner.hpp"
#include "prodigy/theory.hpp"
#include "prodigy/trace.hpp"

namespace prodigy::bench {

/// One experiment: a problem, a set of optimizers, seeds, and the checks to
/// evaluate on the resulting traces. Parsed from a flat key-value text file
/// (see parse_config_text for the accepted keys).
struct RunConfig {
  int schema_version = 1;

  // problem
  std::string problem = "abs_distance";  // abs_distance | max_abs | hinge_1d |
                                         // synthetic_classification | libsvm
  int dim = 1;
  double distance = 1.0;  // synthetic minimizer placement ||x*||
  std::string libsvm_path;
  double margin = 1.0;
  int classes = 3;
  int samples = 200;
  int features = 20;
  double class_separation = 4.0;
  std::uint64_t data_seed = 0;

  // optimizers
  std::vector<Method> optimizers{Method::prodigy_gd};
  double d0 = 1e-6;
  std::optional<WeightSchedule> schedule;  // prodigy_gd weights
  long steps = 1000;
  std::vector<std::uint64_t> seeds{0};
  double x0_scale = 1.0;
  double known_distance = 0.0;  // adagrad_knownD; 0 -> declared minimizer

  // adam knobs
  AdamConfig adam;
  GammaSchedule gamma{GammaSchedule::Kind::cosine, 1.0, 0};

  // outputs & checks
  std::string out_dir = "bench_out";
  std::vector<std::string> checks;  // theorem1 | theorem2 | expbound
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& origin);

struct AggregateRow {
  long step = 0;
  double mean_f_gap = 0.0;
  double stderr_f_gap = 0.0;
  double mean_acc = 0.0;
  double stderr_acc = 0.0;
};

struct AggregateStats {
  std::vector<AggregateRow> rows;
  bool has_accuracy = false;
};

/// Per-step mean and standard error (sample std over sqrt(#seeds); zero
/// spread for a single seed) of the f-gap, and of accuracy when present.
/// Traces must have equal lengths.
AggregateStats aggregate(const std::vector<RunTrace>& traces,
                         std::optional<double> f_star);

struct BenchResult {
  int trace_files = 0;
  int aggregate_files = 0;
  bool bounds_written = false;
  long bound_rows = 0;
  bool all_checks_hold = true;
};

/// Executes the configured runs (optimizer x seed), writes one trace CSV per
/// run, one aggregate CSV per optimizer and a bound-report CSV when checks
/// were requested. Deterministic given the config; seeds run concurrently
/// but every written byte is independent of scheduling. Throws on I/O or
/// configuration errors and on trace invariant violations.
BenchResult run_benchmark(const RunConfig& config);

/// 17-significant-digit formatting used for every number the bench writes.
std::string format_g17(double value);

void write_trace_csv(const std::string& path, const RunTrace& trace,
                     std::optional<double> f_star);
void write_aggregate_csv(const std::string& path, const AggregateStats& stats);
void write_bounds_csv(const std::string& path,
                      const std::vector<theory::BoundReport>& reports);

}  // namespace prodigy::bench
