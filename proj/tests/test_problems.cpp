#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "prodigy/libsvm.hpp"
#include "prodigy/problems.hpp"
#include "prodigy/rng.hpp"

using namespace prodigy;

namespace {

// Convexity certificate: f(y) >= f(x) + <g(x), y - x>.
void check_convexity(const ProblemOracle& oracle, SplitMix64& rng, double span,
                     int pairs = 200) {
  const int dim = oracle.dim();
  for (int trial = 0; trial < pairs; ++trial) {
    Vec x(dim), y(dim);
    for (int j = 0; j < dim; ++j) {
      x[j] = rng.uniform(-span, span);
      y[j] = rng.uniform(-span, span);
    }
    const auto at_x = oracle.eval(x);
    const auto at_y = oracle.eval(y);
    const double linearized = at_x.value + dot_diff(at_x.subgradient, y, x);
    CHECK(at_y.value >= linearized - 1e-10);
  }
}

void check_gradient_bound(const ProblemOracle& oracle, SplitMix64& rng, double span,
                          int points = 1000) {
  const int dim = oracle.dim();
  for (int trial = 0; trial < points; ++trial) {
    Vec x(dim);
    for (int j = 0; j < dim; ++j) x[j] = rng.uniform(-span, span);
    const auto ev = oracle.eval(x);
    CHECK(norm_l2(ev.subgradient) <= oracle.lipschitz() * (1.0 + 1e-12));
    CHECK(norm_linf(ev.subgradient) <= oracle.lipschitz_inf() * (1.0 + 1e-12));
  }
}

}  // namespace

TEST_CASE("abs distance oracle: values and declared optimum") {
  const AbsDistanceOracle oracle{Vec{10.0}};
  const auto at_min = oracle.eval(Vec{10.0});
  CHECK(at_min.value == 0.0);
  CHECK(at_min.subgradient[0] == 0.0);

  const auto at_zero = oracle.eval(Vec{0.0});
  CHECK(at_zero.value == 10.0);
  CHECK(at_zero.subgradient[0] == -1.0);

  CHECK(oracle.eval(*oracle.minimizer()).value ==
        doctest::Approx(*oracle.optimum_value()).epsilon(1e-12));
}

TEST_CASE("synthetic oracles satisfy the declared gradient bound") {
  SplitMix64 rng(5);
  const AbsDistanceOracle abs_oracle{Vec{1.0, -2.0, 0.5}};
  check_gradient_bound(abs_oracle, rng, 5.0);
  const MaxAbsOracle max_oracle{Vec{1.0, -2.0, 0.5}};
  check_gradient_bound(max_oracle, rng, 5.0);
  const Hinge1DOracle hinge{2.0};
  check_gradient_bound(hinge, rng, 5.0);
}

TEST_CASE("synthetic oracles pass the convexity certificate") {
  SplitMix64 rng(6);
  const AbsDistanceOracle abs_oracle{Vec{1.0, -2.0}};
  check_convexity(abs_oracle, rng, 4.0);
  const MaxAbsOracle max_oracle{Vec{0.5, 0.5}};
  check_convexity(max_oracle, rng, 4.0);
  const Hinge1DOracle hinge{1.0};
  check_convexity(hinge, rng, 4.0);
}

TEST_CASE("max abs oracle: first maximal coordinate carries the subgradient") {
  const MaxAbsOracle oracle{Vec{0.0, 0.0}};
  const auto ev = oracle.eval(Vec{-2.0, 2.0});
  CHECK(ev.value == 2.0);
  CHECK(ev.subgradient[0] == -1.0);  // tie resolves to the first coordinate
  CHECK(ev.subgradient[1] == 0.0);
}

TEST_CASE("hinge oracle: zero slope exactly at the kink") {
  const Hinge1DOracle oracle{1.0};
  CHECK(oracle.eval(Vec{1.0}).subgradient[0] == 0.0);
  CHECK(oracle.eval(Vec{0.5}).subgradient[0] == -1.0);
  CHECK(oracle.eval(Vec{2.0}).subgradient[0] == 0.0);
}

TEST_CASE("multimargin: all-zero weights give margin (C-1)/C") {
  const Dataset data = make_separable_classification(30, 5, 3, 4.0, 11);
  const MultiMarginOracle oracle(data, 1.0);
  const Vec w(static_cast<std::size_t>(oracle.dim()), 0.0);
  CHECK(oracle.eval(w).value == doctest::Approx(1.0 * 2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("multimargin: satisfied margin contributes nothing") {
  Dataset data;
  data.n_samples = 1;
  data.n_features = 1;
  data.n_classes = 2;
  data.features = {1.0};
  data.labels = {0};
  const MultiMarginOracle oracle(std::move(data), 1.0);
  const auto ev = oracle.eval(Vec{2.0, 0.0});  // score gap 2 > margin
  CHECK(ev.value == 0.0);
  CHECK(ev.subgradient[0] == 0.0);
  CHECK(ev.subgradient[1] == 0.0);
}

TEST_CASE("multimargin: value is nonnegative and zero only when separated") {
  const Dataset data = make_separable_classification(50, 6, 3, 4.0, 3);
  const MultiMarginOracle oracle(data, 1.0);
  SplitMix64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    Vec w(static_cast<std::size_t>(oracle.dim()));
    for (double& v : w) v = rng.uniform(-1.0, 1.0);
    const auto ev = oracle.eval(w);
    CHECK(ev.value >= 0.0);
  }
  // A scaled axis-aligned classifier separates the generated data with margin.
  Vec w(static_cast<std::size_t>(oracle.dim()), 0.0);
  for (int c = 0; c < data.n_classes; ++c) {
    w[static_cast<std::size_t>(c) * data.n_features + c] = 1.0;
  }
  CHECK(oracle.eval(w).value == 0.0);
  CHECK(classification_accuracy(data, w) == 1.0);
}

TEST_CASE("multimargin: subgradient agrees with central finite differences") {
  const Dataset data = make_separable_classification(5, 4, 3, 4.0, 19);
  const MultiMarginOracle oracle(data, 1.0);
  SplitMix64 rng(20);
  Vec w(static_cast<std::size_t>(oracle.dim()));
  for (double& v : w) v = rng.uniform(-0.4, 0.4);

  const auto ev = oracle.eval(w);
  const double h = 1e-6;
  for (std::size_t j = 0; j < w.size(); ++j) {
    Vec lo = w, hi = w;
    lo[j] -= h;
    hi[j] += h;
    const double fd = (oracle.eval(hi).value - oracle.eval(lo).value) / (2.0 * h);
    CHECK(ev.subgradient[j] == doctest::Approx(fd).epsilon(1e-4));
  }
}

TEST_CASE("multimargin passes the convexity certificate") {
  const Dataset data = make_separable_classification(12, 3, 3, 4.0, 4);
  const MultiMarginOracle oracle(data, 1.0);
  SplitMix64 rng(9);
  check_convexity(oracle, rng, 1.0, 100);
  check_gradient_bound(oracle, rng, 1.0, 200);
}

TEST_CASE("libsvm: single line example") {
  std::istringstream in("1 1:0.5 3:2.0\n");
  const Dataset data = load_libsvm_stream(in, "test");
  CHECK(data.n_samples == 1);
  CHECK(data.n_features == 3);
  CHECK(data.n_classes == 1);
  CHECK(data.features == std::vector<double>{0.5, 0.0, 2.0});
}

TEST_CASE("libsvm: labels remap to contiguous ids in value order") {
  std::istringstream in(
      "2 1:1.0\n"
      "7 2:1.0\n"
      "2 1:-1.0\n");
  const Dataset data = load_libsvm_stream(in, "test");
  CHECK(data.n_classes == 2);
  CHECK(data.labels == std::vector<int>{0, 1, 0});
}

TEST_CASE("libsvm: comments and blank lines are ignored") {
  std::istringstream in(
      "# a header comment\n"
      "\n"
      "+1 1:1.5 # trailing note\n"
      "-1 2:2.5\n");
  const Dataset data = load_libsvm_stream(in, "test");
  CHECK(data.n_samples == 2);
  CHECK(data.n_features == 2);
  CHECK(data.labels == std::vector<int>{1, 0});  // -1 sorts before +1
}

TEST_CASE("libsvm: malformed input reports the line number") {
  std::istringstream bad_label("abc 1:1.0\n");
  CHECK_THROWS_WITH_AS(load_libsvm_stream(bad_label, "test"),
                       doctest::Contains("test:1"), std::runtime_error);

  std::istringstream bad_entry("1 1:1.0\n1 oops\n");
  CHECK_THROWS_WITH_AS(load_libsvm_stream(bad_entry, "test"),
                       doctest::Contains("test:2"), std::runtime_error);

  std::istringstream zero_index("1 0:1.0\n");
  CHECK_THROWS_AS(load_libsvm_stream(zero_index, "test"), std::runtime_error);

  std::istringstream empty("");
  CHECK_THROWS_WITH_AS(load_libsvm_stream(empty, "test"),
                       doctest::Contains("no samples"), std::runtime_error);
}

TEST_CASE("libsvm: missing file carries the path in the error") {
  CHECK_THROWS_WITH_AS(load_libsvm("/nonexistent/file.svm"),
                       doctest::Contains("/nonexistent/file.svm"), std::runtime_error);
}

TEST_CASE("separable generator: shape, labels and separability") {
  const Dataset data = make_separable_classification(200, 20, 3, 4.0, 7);
  CHECK(data.n_samples == 200);
  CHECK(data.n_features == 20);
  CHECK(data.n_classes == 3);
  for (int i = 0; i < data.n_samples; ++i) {
    CHECK(data.labels[i] == i % 3);
    const auto row = data.row(i);
    // Noise is bounded by 1, mean offset is separation on the label axis.
    CHECK(row[static_cast<std::size_t>(data.labels[i])] >= 3.0);
  }
  CHECK_THROWS_AS(make_separable_classification(10, 2, 3, 4.0, 0),
                  std::invalid_argument);
}

TEST_CASE("holdout split partitions the dataset") {
  const Dataset data = make_separable_classification(100, 5, 2, 4.0, 13);
  const auto [train, test] = holdout_split(data, 0.25, 1);
  CHECK(train.n_samples + test.n_samples == 100);
  CHECK(train.n_samples > 0);
  CHECK(test.n_samples > 0);
  CHECK(train.n_features == 5);
  CHECK(test.n_classes == 2);
}
