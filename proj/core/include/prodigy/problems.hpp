#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "prodigy/oracle.hpp"
#include "prodigy/vec.hpp"

namespace prodigy {

/// f(x) = ||x - x*||_2 with G = 1. Subgradient is the unit direction away
/// from the minimizer, or 0 exactly at it.
class AbsDistanceOracle final : public ProblemOracle {
 public:
  explicit AbsDistanceOracle(Vec minimizer);

  int dim() const override { return static_cast<int>(minimizer_.size()); }
  Evaluation eval(std::span<const double> x) const override;
  double lipschitz() const override { return 1.0; }
  double lipschitz_inf() const override { return 1.0; }
  std::optional<double> optimum_value() const override { return 0.0; }
  std::optional<Vec> minimizer() const override { return minimizer_; }

 private:
  Vec minimizer_;
};

/// f(x) = ||x - x*||_inf. At a point the subgradient is sign(x_j - x*_j) e_j
/// for the first coordinate j attaining the max, and 0 at the minimizer.
class MaxAbsOracle final : public ProblemOracle {
 public:
  explicit MaxAbsOracle(Vec minimizer);

  int dim() const override { return static_cast<int>(minimizer_.size()); }
  Evaluation eval(std::span<const double> x) const override;
  double lipschitz() const override { return 1.0; }
  double lipschitz_inf() const override { return 1.0; }
  std::optional<double> optimum_value() const override { return 0.0; }
  std::optional<Vec> minimizer() const override { return minimizer_; }

 private:
  Vec minimizer_;
};

/// One-dimensional hinge f(x) = max(0, t - x). Minimized on [t, inf); the
/// declared minimizer is the threshold itself. Slope 0 is returned exactly
/// at the kink.
class Hinge1DOracle final : public ProblemOracle {
 public:
  explicit Hinge1DOracle(double threshold) : threshold_(threshold) {}

  int dim() const override { return 1; }
  Evaluation eval(std::span<const double> x) const override;
  double lipschitz() const override { return 1.0; }
  double lipschitz_inf() const override { return 1.0; }
  std::optional<double> optimum_value() const override { return 0.0; }
  std::optional<Vec> minimizer() const override { return Vec{threshold_}; }

 private:
  double threshold_;
};

/// Dense multiclass dataset. Labels are contiguous ids in [0, n_classes).
struct Dataset {
  int n_samples = 0;
  int n_features = 0;
  int n_classes = 0;
  std::vector<double> features;  // row-major n_samples x n_features
  std::vector<int> labels;

  std::span<const double> row(int i) const {
    return {features.data() + static_cast<std::size_t>(i) * n_features,
            static_cast<std::size_t>(n_features)};
  }
};

/// Axis-aligned class means (separation * e_c) plus uniform noise in [-1, 1],
/// so the result is linearly separable by construction. Labels are assigned
/// round-robin. Requires features >= classes.
Dataset make_separable_classification(int samples, int features, int classes,
                                      double separation, std::uint64_t seed);

/// Seeded uniform holdout: each sample lands in the test split with the given
/// probability. Returns (train, test).
std::pair<Dataset, Dataset> holdout_split(const Dataset& data, double test_fraction,
                                          std::uint64_t seed);

/// Full-batch multiclass hinge:
///   f(W) = (1/N) sum_i (1/C) sum_{j != y_i} max(0, margin - (W x_i)_{y_i} + (W x_i)_j)
/// over W in R^{C x p}, flattened row-major. A term contributes to the
/// subgradient only when strictly positive; exactly at the kink the 0-slope
/// side is used.
class MultiMarginOracle final : public ProblemOracle {
 public:
  MultiMarginOracle(Dataset data, double margin = 1.0);

  int dim() const override { return data_.n_classes * data_.n_features; }
  Evaluation eval(std::span<const double> w) const override;
  double lipschitz() const override { return lipschitz_; }
  double lipschitz_inf() const override { return lipschitz_inf_; }

  const Dataset& data() const { return data_; }
  double margin() const { return margin_; }

 private:
  Dataset data_;
  double margin_;
  double lipschitz_ = 0.0;
  double lipschitz_inf_ = 0.0;
};

/// Fraction of samples whose argmax score matches the label (ties resolve to
/// the lowest class id).
double classification_accuracy(const Dataset& data, std::span<const double> w);

}  // namespace prodigy
