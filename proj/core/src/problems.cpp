#include "prodigy/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "prodigy/rng.hpp"

namespace prodigy {

AbsDistanceOracle::AbsDistanceOracle(Vec minimizer) : minimizer_(std::move(minimizer)) {
  if (minimizer_.empty()) throw std::invalid_argument("AbsDistanceOracle: empty minimizer");
}

Evaluation AbsDistanceOracle::eval(std::span<const double> x) const {
  if (x.size() != minimizer_.size()) {
    throw std::invalid_argument("eval: dimension mismatch");
  }
  Vec diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - minimizer_[i];
  const double r = norm_l2(diff);
  Vec g(x.size(), 0.0);
  if (r > 0.0) {
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = diff[i] / r;
  }
  return {r, std::move(g)};
}

MaxAbsOracle::MaxAbsOracle(Vec minimizer) : minimizer_(std::move(minimizer)) {
  if (minimizer_.empty()) throw std::invalid_argument("MaxAbsOracle: empty minimizer");
}

Evaluation MaxAbsOracle::eval(std::span<const double> x) const {
  if (x.size() != minimizer_.size()) {
    throw std::invalid_argument("eval: dimension mismatch");
  }
  double best = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i] - minimizer_[i]);
    if (a > best) {
      best = a;
      best_i = i;
    }
  }
  Vec g(x.size(), 0.0);
  if (best > 0.0) g[best_i] = x[best_i] > minimizer_[best_i] ? 1.0 : -1.0;
  return {best, std::move(g)};
}

Evaluation Hinge1DOracle::eval(std::span<const double> x) const {
  if (x.size() != 1) throw std::invalid_argument("eval: dimension mismatch");
  const double slack = threshold_ - x[0];
  if (slack > 0.0) return {slack, Vec{-1.0}};
  return {0.0, Vec{0.0}};
}

Dataset make_separable_classification(int samples, int features, int classes,
                                      double separation, std::uint64_t seed) {
  if (samples < 1 || features < 1 || classes < 2) {
    throw std::invalid_argument("make_separable_classification: bad shape");
  }
  if (features < classes) {
    throw std::invalid_argument(
        "make_separable_classification: need features >= classes for axis means");
  }
  if (!(separation > 2.0)) {
    throw std::invalid_argument(
        "make_separable_classification: separation must exceed the noise width 2");
  }
  SplitMix64 rng(seed, /*stream=*/2);
  Dataset data;
  data.n_samples = samples;
  data.n_features = features;
  data.n_classes = classes;
  data.features.resize(static_cast<std::size_t>(samples) * features);
  data.labels.resize(samples);
  for (int i = 0; i < samples; ++i) {
    const int label = i % classes;
    data.labels[i] = label;
    double* row = data.features.data() + static_cast<std::size_t>(i) * features;
    for (int j = 0; j < features; ++j) row[j] = rng.uniform(-1.0, 1.0);
    row[label] += separation;
  }
  return data;
}

std::pair<Dataset, Dataset> holdout_split(const Dataset& data, double test_fraction,
                                          std::uint64_t seed) {
  if (!(test_fraction >= 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("holdout_split: fraction must lie in [0, 1)");
  }
  SplitMix64 rng(seed, /*stream=*/3);
  Dataset train, test;
  train.n_features = test.n_features = data.n_features;
  train.n_classes = test.n_classes = data.n_classes;
  for (int i = 0; i < data.n_samples; ++i) {
    Dataset& dst = rng.uniform01() < test_fraction ? test : train;
    const auto row = data.row(i);
    dst.features.insert(dst.features.end(), row.begin(), row.end());
    dst.labels.push_back(data.labels[i]);
    ++dst.n_samples;
  }
  return {std::move(train), std::move(test)};
}

MultiMarginOracle::MultiMarginOracle(Dataset data, double margin)
    : data_(std::move(data)), margin_(margin) {
  if (data_.n_samples < 1 || data_.n_features < 1 || data_.n_classes < 2) {
    throw std::invalid_argument("MultiMarginOracle: empty or degenerate dataset");
  }
  if (!(margin_ > 0.0)) throw std::invalid_argument("MultiMarginOracle: margin must be positive");
  for (int label : data_.labels) {
    if (label < 0 || label >= data_.n_classes) {
      throw std::invalid_argument("MultiMarginOracle: label out of range");
    }
  }
  // One active pair moves two rows of W by x_i / (N C); at most C-1 pairs per
  // sample. These bounds hold for any W.
  double max_l2 = 0.0, max_linf = 0.0;
  for (int i = 0; i < data_.n_samples; ++i) {
    max_l2 = std::max(max_l2, norm_l2(data_.row(i)));
    max_linf = std::max(max_linf, norm_linf(data_.row(i)));
  }
  const double c = static_cast<double>(data_.n_classes);
  lipschitz_ = std::sqrt(2.0) * (c - 1.0) / c * max_l2;
  lipschitz_inf_ = (c - 1.0) / c * max_linf;
}

Evaluation MultiMarginOracle::eval(std::span<const double> w) const {
  const int classes = data_.n_classes;
  const int p = data_.n_features;
  if (w.size() != static_cast<std::size_t>(classes) * p) {
    throw std::invalid_argument("eval: dimension mismatch");
  }
  const double scale = 1.0 / (static_cast<double>(data_.n_samples) * classes);

  double value = 0.0;
  Vec grad(w.size(), 0.0);
  Vec scores(classes);
  for (int i = 0; i < data_.n_samples; ++i) {
    const auto x = data_.row(i);
    for (int c = 0; c < classes; ++c) {
      scores[c] = dot({w.data() + static_cast<std::size_t>(c) * p,
                       static_cast<std::size_t>(p)},
                      x);
    }
    const int y = data_.labels[i];
    for (int c = 0; c < classes; ++c) {
      if (c == y) continue;
      const double violation = margin_ - scores[y] + scores[c];
      if (violation > 0.0) {
        value += scale * violation;
        double* row_c = grad.data() + static_cast<std::size_t>(c) * p;
        double* row_y = grad.data() + static_cast<std::size_t>(y) * p;
        for (int j = 0; j < p; ++j) {
          row_c[j] += scale * x[j];
          row_y[j] -= scale * x[j];
        }
      }
    }
  }
  return {value, std::move(grad)};
}

double classification_accuracy(const Dataset& data, std::span<const double> w) {
  const int classes = data.n_classes;
  const int p = data.n_features;
  if (w.size() != static_cast<std::size_t>(classes) * p) {
    throw std::invalid_argument("classification_accuracy: dimension mismatch");
  }
  if (data.n_samples == 0) return 0.0;
  int correct = 0;
  for (int i = 0; i < data.n_samples; ++i) {
    const auto x = data.row(i);
    int best = 0;
    double best_score = dot({w.data(), static_cast<std::size_t>(p)}, x);
    for (int c = 1; c < classes; ++c) {
      const double s = dot({w.data() + static_cast<std::size_t>(c) * p,
                            static_cast<std::size_t>(p)},
                           x);
      if (s > best_score) {
        best_score = s;
        best = c;
      }
    }
    if (best == data.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / data.n_samples;
}

}  // namespace prodigy
