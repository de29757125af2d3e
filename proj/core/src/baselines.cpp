#include "prodigy/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace prodigy {

namespace {

void check_dims(std::size_t expect, std::size_t got) {
  if (expect != got) throw std::invalid_argument("step: gradient dimension mismatch");
}

}  // namespace

DAdaptation::DAdaptation(Vec x0, double d0, double lipschitz)
    : x0_(x0),
      x_(std::move(x0)),
      s_(x0_.size(), 0.0),
      d_(d0),
      lipschitz_(lipschitz),
      point_sum_(x0_.size(), 0.0) {
  if (x0_.empty()) throw std::invalid_argument("DAdaptation: empty start point");
  if (!(d0 > 0.0)) throw std::invalid_argument("DAdaptation: d0 must be positive");
  if (!(lipschitz >= 0.0)) {
    throw std::invalid_argument("DAdaptation: Lipschitz bound must be >= 0");
  }
}

void DAdaptation::step(std::span<const double> grad) {
  check_dims(x_.size(), grad.size());
  const double lambda = d_;

  // With x_k = x0 - gamma_k s_k this matches the d_i gamma_i <g_i, s_i> form.
  numer_sum_.add(lambda * dot_diff(grad, x0_, x_));
  for (std::size_t i = 0; i < x_.size(); ++i) point_sum_[i] += lambda * x_[i];
  weight_sum_.add(lambda);

  for (std::size_t i = 0; i < s_.size(); ++i) s_[i] += d_ * grad[i];

  grad_norm_sum_.add(dot(grad, grad));
  const double denom = lipschitz_ * lipschitz_ + grad_norm_sum_.value();
  double gamma = 0.0;
  if (denom > 0.0) {
    gamma = 1.0 / std::sqrt(denom);
  } else {
    stationary_start_ = true;
  }

  const double s_norm = norm_l2(s_);
  double d_hat = d_;
  if (s_norm > 0.0) d_hat = numer_sum_.value() / s_norm;
  d_ = std::max(d_, d_hat);

  for (std::size_t i = 0; i < x_.size(); ++i) x_[i] = x0_[i] - gamma * s_[i];

  last_step_size_ = gamma;
  last_lambda_ = lambda;
  ++k_;
}

AveragedIterate DAdaptation::average() const {
  const double w = weight_sum_.value();
  if (!(w > 0.0)) return {x0_, 0.0};
  Vec out(point_sum_);
  for (double& v : out) v /= w;
  return {std::move(out), w};
}

Dog::Dog(Vec x0, double initial_radius, double lipschitz)
    : x0_(x0),
      x_(std::move(x0)),
      max_radius_(initial_radius),
      lipschitz_(lipschitz),
      point_sum_(x0_.size(), 0.0) {
  if (x0_.empty()) throw std::invalid_argument("Dog: empty start point");
  if (!(initial_radius > 0.0)) {
    throw std::invalid_argument("Dog: initial radius must be positive");
  }
  if (!(lipschitz >= 0.0)) throw std::invalid_argument("Dog: Lipschitz bound must be >= 0");
}

double Dog::distance_estimate() const {
  return std::max(max_radius_, distance_l2(x_, x0_));
}

void Dog::step(std::span<const double> grad) {
  check_dims(x_.size(), grad.size());
  max_radius_ = std::max(max_radius_, distance_l2(x_, x0_));

  grad_norm_sum_.add(dot(grad, grad));
  const double denom = lipschitz_ * lipschitz_ + grad_norm_sum_.value();
  double gamma = 0.0;
  if (denom > 0.0) {
    gamma = max_radius_ / std::sqrt(denom);
  } else {
    stationary_start_ = true;
  }

  for (std::size_t i = 0; i < x_.size(); ++i) point_sum_[i] += x_[i];
  ++count_;

  for (std::size_t i = 0; i < x_.size(); ++i) x_[i] -= gamma * grad[i];

  last_step_size_ = gamma;
  ++k_;
}

AveragedIterate Dog::average() const {
  if (count_ == 0) return {x0_, 0.0};
  Vec out(point_sum_);
  for (double& v : out) v /= static_cast<double>(count_);
  return {std::move(out), static_cast<double>(count_)};
}

AdaGradKnownD::AdaGradKnownD(Vec x0, double known_distance)
    : x0_(x0),
      x_(std::move(x0)),
      known_distance_(known_distance),
      point_sum_(x0_.size(), 0.0) {
  if (x0_.empty()) throw std::invalid_argument("AdaGradKnownD: empty start point");
  if (!(known_distance > 0.0)) {
    throw std::invalid_argument("AdaGradKnownD: distance must be positive");
  }
}

void AdaGradKnownD::step(std::span<const double> grad) {
  check_dims(x_.size(), grad.size());
  grad_norm_sum_.add(dot(grad, grad));
  const double denom = grad_norm_sum_.value();
  double gamma = 0.0;
  if (denom > 0.0) {
    gamma = known_distance_ / std::sqrt(denom);
  } else {
    stationary_start_ = true;
  }

  for (std::size_t i = 0; i < x_.size(); ++i) point_sum_[i] += x_[i];
  ++count_;

  for (std::size_t i = 0; i < x_.size(); ++i) x_[i] -= gamma * grad[i];

  last_step_size_ = gamma;
  ++k_;
}

AveragedIterate AdaGradKnownD::average() const {
  if (count_ == 0) return {x0_, 0.0};
  Vec out(point_sum_);
  for (double& v : out) v /= static_cast<double>(count_);
  return {std::move(out), static_cast<double>(count_)};
}

AdamBaseline::AdamBaseline(Vec x0, AdamBaselineConfig config)
    : x_(std::move(x0)), m_(x_.size(), 0.0), v_(x_.size(), 0.0), config_(config) {
  if (x_.empty()) throw std::invalid_argument("AdamBaseline: empty start point");
  if (!(config.beta1 > 0.0 && config.beta1 < 1.0) ||
      !(config.beta2 > 0.0 && config.beta2 < 1.0)) {
    throw std::invalid_argument("AdamBaseline: betas must lie in (0, 1)");
  }
  if (!(config.eps > 0.0)) throw std::invalid_argument("AdamBaseline: eps must be positive");
  if (!(config.weight_decay >= 0.0)) {
    throw std::invalid_argument("AdamBaseline: weight decay must be >= 0");
  }
}

void AdamBaseline::step(std::span<const double> grad, double lr) {
  check_dims(x_.size(), grad.size());
  if (!(lr >= 0.0)) throw std::invalid_argument("step: lr must be >= 0");
  const double beta1 = config_.beta1;
  const double beta2 = config_.beta2;

  double m_scale = 1.0, v_scale = 1.0;
  if (config_.bias_correction) {
    m_scale = 1.0 - std::pow(beta1, static_cast<double>(k_ + 1));
    v_scale = 1.0 - std::pow(beta2, static_cast<double>(k_ + 1));
  }

  for (std::size_t i = 0; i < x_.size(); ++i) {
    m_[i] = beta1 * m_[i] + (1.0 - beta1) * grad[i];
    v_[i] = beta2 * v_[i] + (1.0 - beta2) * grad[i] * grad[i];
    const double update = (m_[i] / m_scale) / (std::sqrt(v_[i] / v_scale) + config_.eps);
    const double decay = config_.weight_decay * x_[i];
    x_[i] -= lr * (update + decay);
  }
  last_step_size_ = lr;
  ++k_;
}

}  // namespace prodigy
