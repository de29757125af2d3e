#pragma once

#include <limits>
#include <vector>

#include "prodigy/vec.hpp"

namespace prodigy {

/// Normalized weighted mean: sum(w_k x_k) / sum(w_k).
struct AveragedIterate {
  Vec point;
  double weight_sum = 0.0;
};

/// Throws std::invalid_argument on length mismatch, negative weights or an
/// all-zero weight vector.
AveragedIterate weighted_average(const std::vector<Vec>& points,
                                 const std::vector<double>& weights);

/// One recorded step of an optimizer run. `d` is the distance estimate the
/// method used during this step; `f_avg`/`accuracy` are evaluated at the
/// running weighted-average iterate (NaN when not tracked or not defined).
struct TraceRow {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  long step = 0;
  double f = kNaN;
  double f_avg = kNaN;
  double accuracy = kNaN;
  double d = 0.0;
  double step_size = 0.0;
  double lambda = 1.0;
  double grad_norm = 0.0;
  double dist_x0 = 0.0;  // ||x_k - x0||, always kept even when points are elided
};

struct RunTrace {
  std::vector<TraceRow> rows;

  Vec x0;
  Vec final_x;               // iterate after the last step
  double final_d = 0.0;      // estimate after the last step
  double final_dist_x0 = 0.0;

  // Weighted running average (weight_sum stays 0 for methods that return the
  // last iterate instead, e.g. the Adam-style update).
  AveragedIterate average;

  Vec returned_x;  // the average when one is kept, otherwise final_x
  double returned_f = TraceRow::kNaN;
  double returned_accuracy = TraceRow::kNaN;

  bool stationary_start = false;
  long zero_coordinate_events = 0;

  std::vector<Vec> points;  // query iterates; filled only when requested

  long steps() const { return static_cast<long>(rows.size()); }

  /// Distance estimate after step k (i.e. the estimate entering step k+1).
  double d_after(long k) const {
    return (k + 1 < steps()) ? rows[static_cast<std::size_t>(k + 1)].d : final_d;
  }
};

}  // namespace prodigy
