#pragma once

#include <span>

#include "prodigy/compensated.hpp"
#include "prodigy/schedule.hpp"
#include "prodigy/trace.hpp"
#include "prodigy/vec.hpp"

namespace prodigy {

/// Gradient-descent form of the learning-rate-free method.
///
/// Maintains a non-decreasing lower-bound estimate d of the initial distance
/// to a solution and takes steps
///   eta_k = d_k^2 lambda_k / sqrt(d_k^2 G^2 + sum_{i<=k} d_i^2 lambda_i^2 ||g_i||^2),
/// updating the estimate from the running sum of eta_i <g_i, x0 - x_i>
/// divided by ||x_{k+1} - x0||. Weights come from a data-independent
/// schedule (the d^2-coupled kind is rejected here).
class ProdigyGD {
 public:
  ProdigyGD(Vec x0, double d0, double lipschitz,
            WeightSchedule schedule = WeightSchedule::constant());

  void step(std::span<const double> grad);

  const Vec& point() const { return x_; }
  double distance_estimate() const { return d_; }
  double last_step_size() const { return last_step_size_; }
  double last_lambda() const { return last_lambda_; }
  long step_count() const { return k_; }
  bool stationary_start() const { return stationary_start_; }

  /// eta-weighted average of the query points, normalized by the weight sum.
  AveragedIterate average() const;

  // Raw averaging sums, so an unnormalized combination can be reconstructed.
  const Vec& weighted_point_sum() const { return point_sum_; }
  double weight_sum() const { return weight_sum_.value(); }

 private:
  Vec x0_, x_;
  double d_;
  double lipschitz_;
  WeightSchedule schedule_;
  CompensatedSum denom_sum_;   // sum d_i^2 lambda_i^2 ||g_i||^2
  CompensatedSum numer_sum_;   // sum eta_i <g_i, x0 - x_i>
  Vec point_sum_;              // sum eta_i x_i
  CompensatedSum weight_sum_;  // sum eta_i
  long k_ = 0;
  double last_step_size_ = 0.0;
  double last_lambda_ = 1.0;
  bool stationary_start_ = false;
};

/// Dual-averaging form. The weight is hard-wired to lambda_k = d_k^2 and the
/// iterate is rebuilt from the anchor each step:
///   x_{k+1} = x0 - gamma_{k+1} s_{k+1},
///   gamma_{k+1} = 1 / sqrt(lambda_{k+1} G^2 + sum_{i<=k} lambda_i ||g_i||^2).
/// The distance estimate divides by ||s_{k+1}|| instead of the iterate
/// displacement.
class ProdigyDA {
 public:
  ProdigyDA(Vec x0, double d0, double lipschitz);

  void step(std::span<const double> grad);

  const Vec& point() const { return x_; }
  double distance_estimate() const { return d_; }
  double last_step_size() const { return last_step_size_; }
  double last_lambda() const { return last_lambda_; }
  long step_count() const { return k_; }
  bool stationary_start() const { return stationary_start_; }

  /// lambda-weighted average of the query points.
  AveragedIterate average() const;

  const Vec& gradient_sum() const { return s_; }
  const Vec& weighted_point_sum() const { return point_sum_; }
  double weight_sum() const { return weight_sum_.value(); }

 private:
  Vec x0_, x_;
  Vec s_;  // sum lambda_i g_i
  double d_;
  double lipschitz_;
  CompensatedSum grad_norm_sum_;  // sum lambda_i ||g_i||^2
  CompensatedSum numer_sum_;      // sum lambda_i <g_i, x0 - x_i>
  Vec point_sum_;
  CompensatedSum weight_sum_;
  long k_ = 0;
  double last_step_size_ = 0.0;
  double last_lambda_ = 0.0;
  bool stationary_start_ = false;
};

}  // namespace prodigy
