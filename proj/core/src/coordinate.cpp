#include "prodigy/coordinate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace prodigy {

CoordinateDA::CoordinateDA(Vec x0, double d0, double lipschitz_inf)
    : x0_(x0),
      x_(std::move(x0)),
      s_(x0_.size(), 0.0),
      grad_sq_sum_(x0_.size(), 0.0),
      d_(d0),
      lipschitz_inf_(lipschitz_inf),
      point_sum_(x0_.size(), 0.0) {
  if (x0_.empty()) throw std::invalid_argument("CoordinateDA: empty start point");
  if (!(d0 > 0.0)) throw std::invalid_argument("CoordinateDA: d0 must be positive");
  if (!(lipschitz_inf >= 0.0)) {
    throw std::invalid_argument("CoordinateDA: Lipschitz bound must be >= 0");
  }
}

void CoordinateDA::step(std::span<const double> grad) {
  if (grad.size() != x_.size()) {
    throw std::invalid_argument("step: gradient dimension mismatch");
  }
  const double lambda = d_ * d_;

  numer_sum_.add(lambda * dot_diff(grad, x0_, x_));
  for (std::size_t i = 0; i < x_.size(); ++i) point_sum_[i] += lambda * x_[i];
  weight_sum_.add(lambda);

  for (std::size_t i = 0; i < s_.size(); ++i) s_[i] += lambda * grad[i];

  const double s_l1 = norm_l1(s_);
  double d_hat = d_;
  if (s_l1 > 0.0) d_hat = numer_sum_.value() / s_l1;
  const double d_next = std::max(d_, d_hat);
  const double lambda_next = d_next * d_next;

  bool any_positive = false;
  double a_max = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    grad_sq_sum_[i] += lambda * grad[i] * grad[i];
    const double a_sq = lambda_next * lipschitz_inf_ * lipschitz_inf_ + grad_sq_sum_[i];
    if (a_sq > 0.0) {
      const double a = std::sqrt(a_sq);
      x_[i] = x0_[i] - s_[i] / a;
      a_max = std::max(a_max, a);
      any_positive = true;
    } else {
      // No accumulated signal on this coordinate (0/0): stay at the anchor.
      x_[i] = x0_[i];
      ++zero_coordinate_events_;
    }
  }
  if (!any_positive) stationary_start_ = true;

  d_ = d_next;
  last_step_size_ = a_max > 0.0 ? 1.0 / a_max : 0.0;
  last_lambda_ = lambda;
  ++k_;
}

AveragedIterate CoordinateDA::average() const {
  const double w = weight_sum_.value();
  if (!(w > 0.0)) return {x0_, 0.0};
  Vec out(point_sum_);
  for (double& v : out) v /= w;
  return {std::move(out), w};
}

ProdigyAdam::ProdigyAdam(Vec x0, AdamConfig config)
    : x0_(x0),
      x_(std::move(x0)),
      m_(x0_.size(), 0.0),
      v_(x0_.size(), 0.0),
      s_(x0_.size(), 0.0),
      d_(config.d0),
      config_(config) {
  if (x0_.empty()) throw std::invalid_argument("ProdigyAdam: empty start point");
  if (!(config.d0 > 0.0)) throw std::invalid_argument("ProdigyAdam: d0 must be positive");
  if (!(config.beta1 > 0.0 && config.beta1 < 1.0) ||
      !(config.beta2 > 0.0 && config.beta2 < 1.0)) {
    throw std::invalid_argument("ProdigyAdam: betas must lie in (0, 1)");
  }
  if (!(config.eps > 0.0)) throw std::invalid_argument("ProdigyAdam: eps must be positive");
  if (!(config.weight_decay >= 0.0)) {
    throw std::invalid_argument("ProdigyAdam: weight decay must be >= 0");
  }
}

void ProdigyAdam::step(std::span<const double> grad, double gamma) {
  if (grad.size() != x_.size()) {
    throw std::invalid_argument("step: gradient dimension mismatch");
  }
  if (!(gamma >= 0.0)) throw std::invalid_argument("step: gamma must be >= 0");

  const double d = d_;
  const double beta1 = config_.beta1;
  const double beta2 = config_.beta2;
  const double sqrt_beta2 = std::sqrt(beta2);

  for (std::size_t i = 0; i < x_.size(); ++i) {
    m_[i] = beta1 * m_[i] + (1.0 - beta1) * d * grad[i];
    v_[i] = beta2 * v_[i] + (1.0 - beta2) * d * d * grad[i] * grad[i];
  }
  r_ = sqrt_beta2 * r_ + (1.0 - sqrt_beta2) * gamma * d * d * dot_diff(grad, x0_, x_);
  for (std::size_t i = 0; i < s_.size(); ++i) {
    s_[i] = sqrt_beta2 * s_[i] + (1.0 - sqrt_beta2) * gamma * d * d * grad[i];
  }

  const double s_l1 = norm_l1(s_);
  double d_hat = d_;
  if (s_l1 > 0.0) d_hat = r_ / s_l1;
  const double d_next = config_.adapt_d ? std::max(d_, d_hat) : d_;

  // Bias correction rescales m and v inside the x update only.
  double m_scale = 1.0, v_scale = 1.0;
  if (config_.bias_correction) {
    m_scale = 1.0 - std::pow(beta1, static_cast<double>(k_ + 1));
    v_scale = 1.0 - std::pow(beta2, static_cast<double>(k_ + 1));
  }

  for (std::size_t i = 0; i < x_.size(); ++i) {
    const double update = (m_[i] / m_scale) / (std::sqrt(v_[i] / v_scale) + d * config_.eps);
    const double decay = config_.weight_decay * x_[i];
    x_[i] -= gamma * d * (update + decay);
  }

  d_ = d_next;
  last_step_size_ = gamma * d;
  ++k_;
}

double gamma_at(const GammaSchedule& schedule, long k, long total_steps) {
  if (k < 0) throw std::invalid_argument("gamma_at: negative step index");
  double g = schedule.base;
  if (schedule.kind == GammaSchedule::Kind::cosine && total_steps > 0) {
    g *= 0.5 * (1.0 + std::cos(std::numbers::pi * static_cast<double>(k) /
                               static_cast<double>(total_steps)));
  }
  if (schedule.warmup > 0 && k < schedule.warmup) {
    g *= static_cast<double>(k + 1) / static_cast<double>(schedule.warmup);
  }
  return g;
}

}  // namespace prodigy
