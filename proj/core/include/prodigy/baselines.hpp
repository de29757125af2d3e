#pragma once

#include <span>

#include "prodigy/compensated.hpp"
#include "prodigy/trace.hpp"
#include "prodigy/vec.hpp"

namespace prodigy {

/// D-Adaptation, dual-averaging form. Gradients are weighted by d_k in the
/// dual sum and the step size is the plain AdaGrad denominator:
///   gamma_{k+1} = 1 / sqrt(G^2 + sum_{i<=k} ||g_i||^2),
///   x_{k+1} = x0 - gamma_{k+1} s_{k+1}.
class DAdaptation {
 public:
  DAdaptation(Vec x0, double d0, double lipschitz);

  void step(std::span<const double> grad);

  const Vec& point() const { return x_; }
  double distance_estimate() const { return d_; }
  double last_step_size() const { return last_step_size_; }
  double last_lambda() const { return last_lambda_; }
  long step_count() const { return k_; }
  bool stationary_start() const { return stationary_start_; }

  AveragedIterate average() const;  // d_k-weighted
  const Vec& gradient_sum() const { return s_; }

 private:
  Vec x0_, x_;
  Vec s_;  // sum d_i g_i
  double d_;
  double lipschitz_;
  CompensatedSum grad_norm_sum_;  // sum ||g_i||^2
  CompensatedSum numer_sum_;      // sum d_i <g_i, x0 - x_i>
  Vec point_sum_;
  CompensatedSum weight_sum_;
  long k_ = 0;
  double last_step_size_ = 0.0;
  double last_lambda_ = 0.0;
  bool stationary_start_ = false;
};

/// Distance-over-gradients baseline: the numerator of the AdaGrad step is the
/// running maximum displacement from the anchor, floored at an initial
/// radius so the first step is nonzero.
class Dog {
 public:
  Dog(Vec x0, double initial_radius, double lipschitz);

  void step(std::span<const double> grad);

  const Vec& point() const { return x_; }
  /// Current radius estimate including the present iterate.
  double distance_estimate() const;
  double last_step_size() const { return last_step_size_; }
  double last_lambda() const { return 1.0; }
  long step_count() const { return k_; }
  bool stationary_start() const { return stationary_start_; }

  AveragedIterate average() const;  // uniform weights

 private:
  Vec x0_, x_;
  double max_radius_;  // floored running max of ||x_i - x0||
  double lipschitz_;
  CompensatedSum grad_norm_sum_;
  Vec point_sum_;
  long count_ = 0;
  long k_ = 0;
  double last_step_size_ = 0.0;
  bool stationary_start_ = false;
};

/// Oracle-tuned subgradient baseline: gamma_{k+1} = D / sqrt(sum_{i<=k} ||g_i||^2)
/// with the true initial distance D supplied up front.
class AdaGradKnownD {
 public:
  AdaGradKnownD(Vec x0, double known_distance);

  void step(std::span<const double> grad);

  const Vec& point() const { return x_; }
  double distance_estimate() const { return known_distance_; }
  double last_step_size() const { return last_step_size_; }
  double last_lambda() const { return 1.0; }
  long step_count() const { return k_; }
  bool stationary_start() const { return stationary_start_; }

  AveragedIterate average() const;  // uniform weights

 private:
  Vec x0_, x_;
  double known_distance_;
  CompensatedSum grad_norm_sum_;
  Vec point_sum_;
  long count_ = 0;
  long k_ = 0;
  double last_step_size_ = 0.0;
  bool stationary_start_ = false;
};

struct AdamBaselineConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  bool bias_correction = true;
  double weight_decay = 0.0;  // decoupled
};

/// Textbook Adam, for side-by-side comparisons. The learning rate is passed
/// per step so annealing schedules plug in directly.
class AdamBaseline {
 public:
  AdamBaseline(Vec x0, AdamBaselineConfig config);

  void step(std::span<const double> grad, double lr);

  const Vec& point() const { return x_; }
  double last_step_size() const { return last_step_size_; }
  long step_count() const { return k_; }
  const Vec& first_moment() const { return m_; }
  const Vec& second_moment() const { return v_; }

 private:
  Vec x_;
  Vec m_, v_;
  AdamBaselineConfig config_;
  long k_ = 0;
  double last_step_size_ = 0.0;
};

}  // namespace prodigy
