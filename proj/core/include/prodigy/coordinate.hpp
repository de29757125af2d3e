#pragma once

#include <span>

#include "prodigy/compensated.hpp"
#include "prodigy/trace.hpp"
#include "prodigy/vec.hpp"

namespace prodigy {

/// Coordinate-wise dual-averaging variant. Each coordinate gets its own
/// accumulator a_{k+1}^2 = lambda_{k+1} Ginf^2 + sum_{i<=k} lambda_i g_i^2
/// and moves as x_{k+1} = x0 - s_{k+1} / a_{k+1}. The distance estimate
/// divides by the l1 norm of the weighted gradient sum; a coordinate whose
/// accumulator is still zero stays at the anchor and the event is counted.
class CoordinateDA {
 public:
  CoordinateDA(Vec x0, double d0, double lipschitz_inf);

  void step(std::span<const double> grad);

  const Vec& point() const { return x_; }
  double distance_estimate() const { return d_; }
  /// 1 / max_j a_{k+1,j}: the most conservative per-coordinate step scale.
  double last_step_size() const { return last_step_size_; }
  double last_lambda() const { return last_lambda_; }
  long step_count() const { return k_; }
  bool stationary_start() const { return stationary_start_; }
  long zero_coordinate_events() const { return zero_coordinate_events_; }

  AveragedIterate average() const;
  const Vec& gradient_sum() const { return s_; }
  const Vec& gradient_sq_sum() const { return grad_sq_sum_; }
  double weight_sum() const { return weight_sum_.value(); }

 private:
  Vec x0_, x_;
  Vec s_;             // sum lambda_i g_i
  Vec grad_sq_sum_;   // coordinate-wise sum lambda_i g_i^2
  double d_;
  double lipschitz_inf_;
  CompensatedSum numer_sum_;  // sum lambda_i <g_i, x0 - x_i>
  Vec point_sum_;
  CompensatedSum weight_sum_;
  long k_ = 0;
  long zero_coordinate_events_ = 0;
  double last_step_size_ = 0.0;
  double last_lambda_ = 0.0;
  bool stationary_start_ = false;
};

struct AdamConfig {
  double d0 = 1e-6;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  bool bias_correction = false;  // off by default; rescales m, v in the x update only
  double weight_decay = 0.0;     // decoupled, applied to x with factor gamma_k d_k
  bool adapt_d = true;           // when false the estimate stays frozen at d0
};

/// Adam-style variant: exponential moving averages of d g and d^2 g^2 drive
/// the x update, while the distance estimate uses sqrt(beta2)-discounted
/// sums r (signed) and s (vector, l1 norm in the denominator):
///   x_{k+1} = x_k - gamma_k d_k m_{k+1} / (sqrt(v_{k+1}) + d_k eps).
class ProdigyAdam {
 public:
  ProdigyAdam(Vec x0, AdamConfig config);

  void step(std::span<const double> grad, double gamma);

  const Vec& point() const { return x_; }
  double distance_estimate() const { return d_; }
  double last_step_size() const { return last_step_size_; }
  long step_count() const { return k_; }
  const AdamConfig& config() const { return config_; }

  const Vec& first_moment() const { return m_; }
  const Vec& second_moment() const { return v_; }
  double estimate_numerator() const { return r_; }
  const Vec& estimate_denominator_sum() const { return s_; }

 private:
  Vec x0_, x_;
  Vec m_, v_, s_;
  double r_ = 0.0;
  double d_;
  AdamConfig config_;
  long k_ = 0;
  double last_step_size_ = 0.0;
};

/// Step-size schedule for the Adam-style runs. Cosine annealing is
/// 0.5 (1 + cos(pi k / n)) on the base value; warmup, when requested, ramps
/// the first `warmup` steps linearly.
struct GammaSchedule {
  enum class Kind { constant, cosine };
  Kind kind = Kind::constant;
  double base = 1.0;
  long warmup = 0;
};

double gamma_at(const GammaSchedule& schedule, long k, long total_steps);

}  // namespace prodigy
