#include "prodigy/prodigy.hpp"

#include <cmath>
#include <stdexcept>

namespace prodigy {

namespace {

void check_init(std::size_t dim, double d0, double lipschitz) {
  if (dim == 0) throw std::invalid_argument("optimizer: empty start point");
  if (!(d0 > 0.0)) throw std::invalid_argument("optimizer: d0 must be positive");
  if (!(lipschitz >= 0.0)) {
    throw std::invalid_argument("optimizer: Lipschitz bound must be >= 0");
  }
}

void check_grad(std::size_t expect, std::size_t got) {
  if (expect != got) throw std::invalid_argument("step: gradient dimension mismatch");
}

AveragedIterate normalized_average(const Vec& point_sum, double weight_sum,
                                   const Vec& fallback) {
  if (!(weight_sum > 0.0)) return {fallback, 0.0};
  Vec out(point_sum);
  for (double& v : out) v /= weight_sum;
  return {std::move(out), weight_sum};
}

}  // namespace

ProdigyGD::ProdigyGD(Vec x0, double d0, double lipschitz, WeightSchedule schedule)
    : x0_(x0),
      x_(std::move(x0)),
      d_(d0),
      lipschitz_(lipschitz),
      schedule_(schedule),
      point_sum_(x0_.size(), 0.0) {
  check_init(x0_.size(), d0, lipschitz);
  if (schedule.kind == WeightSchedule::Kind::coupled_d_squared) {
    throw std::invalid_argument(
        "ProdigyGD: weights must be data-independent; the d^2-coupled "
        "schedule belongs to the dual-averaging form");
  }
}

void ProdigyGD::step(std::span<const double> grad) {
  check_grad(x_.size(), grad.size());
  const double lambda = weight_at(schedule_, k_, d_);
  const double grad_sq = dot(grad, grad);

  denom_sum_.add(d_ * d_ * lambda * lambda * grad_sq);
  const double denom = d_ * d_ * lipschitz_ * lipschitz_ + denom_sum_.value();

  double eta = 0.0;
  if (denom > 0.0) {
    eta = d_ * d_ * lambda / std::sqrt(denom);
  } else {
    // G = 0 and every gradient so far zero: there is no scale to move by.
    stationary_start_ = true;
  }

  // The estimate numerator and the average both use the pre-step point.
  numer_sum_.add(eta * dot_diff(grad, x0_, x_));
  for (std::size_t i = 0; i < x_.size(); ++i) point_sum_[i] += eta * x_[i];
  weight_sum_.add(eta);

  for (std::size_t i = 0; i < x_.size(); ++i) x_[i] -= eta * grad[i];

  const double dist = distance_l2(x_, x0_);
  // When the iterate sits at the anchor the numerator is also zero; keep the
  // current estimate so the run stays total.
  double d_hat = d_;
  if (dist > 0.0) d_hat = numer_sum_.value() / dist;
  d_ = std::max(d_, d_hat);

  last_step_size_ = eta;
  last_lambda_ = lambda;
  ++k_;
}

AveragedIterate ProdigyGD::average() const {
  return normalized_average(point_sum_, weight_sum_.value(), x0_);
}

ProdigyDA::ProdigyDA(Vec x0, double d0, double lipschitz)
    : x0_(x0),
      x_(std::move(x0)),
      s_(x0_.size(), 0.0),
      d_(d0),
      lipschitz_(lipschitz),
      point_sum_(x0_.size(), 0.0) {
  check_init(x0_.size(), d0, lipschitz);
}

void ProdigyDA::step(std::span<const double> grad) {
  check_grad(x_.size(), grad.size());
  const double lambda = d_ * d_;
  const double grad_sq = dot(grad, grad);

  numer_sum_.add(lambda * dot_diff(grad, x0_, x_));
  for (std::size_t i = 0; i < x_.size(); ++i) point_sum_[i] += lambda * x_[i];
  weight_sum_.add(lambda);

  for (std::size_t i = 0; i < s_.size(); ++i) s_[i] += lambda * grad[i];

  const double s_norm = norm_l2(s_);
  double d_hat = d_;
  if (s_norm > 0.0) d_hat = numer_sum_.value() / s_norm;
  const double d_next = std::max(d_, d_hat);

  grad_norm_sum_.add(lambda * grad_sq);
  const double denom =
      d_next * d_next * lipschitz_ * lipschitz_ + grad_norm_sum_.value();

  double gamma = 0.0;
  if (denom > 0.0) {
    gamma = 1.0 / std::sqrt(denom);
  } else {
    stationary_start_ = true;  // s is zero too, so the iterate stays at x0
  }

  d_ = d_next;
  for (std::size_t i = 0; i < x_.size(); ++i) x_[i] = x0_[i] - gamma * s_[i];

  last_step_size_ = gamma;
  last_lambda_ = lambda;
  ++k_;
}

AveragedIterate ProdigyDA::average() const {
  return normalized_average(point_sum_, weight_sum_.value(), x0_);
}

}  // namespace prodigy
