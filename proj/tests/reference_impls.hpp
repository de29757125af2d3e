// Deliberately naive, unoptimized step-by-step transcriptions of the update
// rules, used as independent oracles for the library implementations. Every
// running quantity is recomputed from the stored history with plain loops,
// so these share no accumulator code with the optimized classes.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace reference {

using Vec = std::vector<double>;

struct NaiveState {
  std::vector<Vec> x;        // x_0..x_n (query points plus the final iterate)
  std::vector<double> d;     // d_0..d_n
  std::vector<double> step;  // per-step eta_k or gamma_{k+1}
};

inline double vdot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double vnorm(const Vec& a) { return std::sqrt(vdot(a, a)); }

// Gradient-descent form with externally supplied weights lambda(k).
inline NaiveState prodigy_gd(const std::function<Vec(const Vec&)>& subgrad,
                             Vec x0, double d0, double G,
                             const std::function<double(long)>& lambda, long n) {
  NaiveState state;
  state.x.push_back(x0);
  state.d.push_back(d0);
  std::vector<Vec> grads;
  std::vector<double> lambdas;
  std::vector<double> etas;

  for (long k = 0; k < n; ++k) {
    const Vec& xk = state.x.back();
    grads.push_back(subgrad(xk));
    lambdas.push_back(lambda(k));

    double denom = state.d[k] * state.d[k] * G * G;
    for (long i = 0; i <= k; ++i) {
      denom += state.d[i] * state.d[i] * lambdas[i] * lambdas[i] * vdot(grads[i], grads[i]);
    }
    const double eta = denom > 0.0
                           ? state.d[k] * state.d[k] * lambdas[k] / std::sqrt(denom)
                           : 0.0;
    etas.push_back(eta);

    Vec next(xk.size());
    for (std::size_t j = 0; j < xk.size(); ++j) next[j] = xk[j] - eta * grads[k][j];

    double numer = 0.0;
    for (long i = 0; i <= k; ++i) {
      Vec diff(x0.size());
      for (std::size_t j = 0; j < x0.size(); ++j) diff[j] = x0[j] - state.x[i][j];
      numer += etas[i] * vdot(grads[i], diff);
    }
    Vec disp(x0.size());
    for (std::size_t j = 0; j < x0.size(); ++j) disp[j] = next[j] - x0[j];
    const double dist = vnorm(disp);
    const double d_hat = dist > 0.0 ? numer / dist : state.d[k];
    state.d.push_back(std::max(state.d[k], d_hat));
    state.step.push_back(eta);
    state.x.push_back(std::move(next));
  }
  return state;
}

// Dual-averaging form (weights d_k^2).
inline NaiveState prodigy_da(const std::function<Vec(const Vec&)>& subgrad,
                             Vec x0, double d0, double G, long n) {
  NaiveState state;
  state.x.push_back(x0);
  state.d.push_back(d0);
  std::vector<Vec> grads;
  std::vector<double> lambdas;

  for (long k = 0; k < n; ++k) {
    const Vec& xk = state.x.back();
    grads.push_back(subgrad(xk));
    lambdas.push_back(state.d[k] * state.d[k]);

    Vec s(x0.size(), 0.0);
    for (long i = 0; i <= k; ++i) {
      for (std::size_t j = 0; j < s.size(); ++j) s[j] += lambdas[i] * grads[i][j];
    }
    double numer = 0.0;
    for (long i = 0; i <= k; ++i) {
      Vec diff(x0.size());
      for (std::size_t j = 0; j < x0.size(); ++j) diff[j] = x0[j] - state.x[i][j];
      numer += lambdas[i] * vdot(grads[i], diff);
    }
    const double s_norm = vnorm(s);
    const double d_hat = s_norm > 0.0 ? numer / s_norm : state.d[k];
    const double d_next = std::max(state.d[k], d_hat);

    double denom = d_next * d_next * G * G;
    for (long i = 0; i <= k; ++i) denom += lambdas[i] * vdot(grads[i], grads[i]);
    const double gamma = denom > 0.0 ? 1.0 / std::sqrt(denom) : 0.0;

    Vec next(x0.size());
    for (std::size_t j = 0; j < x0.size(); ++j) next[j] = x0[j] - gamma * s[j];

    state.d.push_back(d_next);
    state.step.push_back(gamma);
    state.x.push_back(std::move(next));
  }
  return state;
}

}  // namespace reference
