#include "prodigy/suites.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "prodigy/problems.hpp"
#include "prodigy/rng.hpp"
#include "prodigy/runner.hpp"

namespace prodigy::theory {

namespace {

std::vector<double> random_nonnegative_sequence(SplitMix64& rng) {
  const long len = 1 + static_cast<long>(rng.uniform01() * 50.0);
  std::vector<double> a(static_cast<std::size_t>(len));
  for (double& v : a) {
    // Mix of zeros and entries spanning several orders of magnitude.
    if (rng.uniform01() < 0.1) {
      v = 0.0;
    } else {
      v = std::pow(10.0, rng.uniform(-4.0, 2.0));
    }
  }
  return a;
}

std::vector<double> random_monotone_sequence(SplitMix64& rng) {
  // Multiplicative growth keeps log2plus(d_N / d_0) well under N / 2.
  const long n = 64 + static_cast<long>(rng.uniform01() * 64.0);
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  d[0] = std::pow(10.0, rng.uniform(-6.0, 0.0));
  for (std::size_t i = 1; i < d.size(); ++i) {
    d[i] = d[i - 1] * (1.0 + 0.1 * rng.uniform01());
  }
  return d;
}

MethodRunner make_game_runner(Method method) {
  return [method](const ProblemOracle& oracle, const Vec& x0, long steps, double d0) {
    RunOptions options;
    options.d0 = d0;
    options.steps = steps;
    options.record_points = true;
    options.track_average_objective = false;
    if (method == Method::prodigy_adam) {
      options.gamma = {GammaSchedule::Kind::constant, 1.0, 0};
    }
    return run_method(method, oracle, x0, options);
  };
}

}  // namespace

RunTrace trace_prefix(const RunTrace& trace, long steps) {
  if (steps < 1 || steps > trace.steps()) {
    throw std::invalid_argument("trace_prefix: bad length");
  }
  RunTrace prefix;
  prefix.rows.assign(trace.rows.begin(), trace.rows.begin() + steps);
  prefix.x0 = trace.x0;
  prefix.final_d = trace.d_after(steps - 1);
  prefix.final_dist_x0 = prefix.rows.back().dist_x0;
  prefix.stationary_start = trace.stationary_start;
  return prefix;
}

RandomStreamOracle::RandomStreamOracle(int dim, std::uint64_t seed, double bound)
    : dim_(dim), seed_(seed), bound_(bound) {
  if (dim < 1) throw std::invalid_argument("RandomStreamOracle: dim must be positive");
  if (!(bound > 0.0)) throw std::invalid_argument("RandomStreamOracle: bound must be positive");
}

Evaluation RandomStreamOracle::eval(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(dim_)) {
    throw std::invalid_argument("eval: dimension mismatch");
  }
  std::uint64_t h = SplitMix64::finalize(seed_ ^ 0x8ad03a510c1e01b5ULL);
  for (double v : x) h = SplitMix64::finalize(h ^ std::bit_cast<std::uint64_t>(v));
  SplitMix64 rng(h);

  Vec g(x.size());
  for (double& v : g) v = rng.normal();
  const double norm = norm_l2(g);
  const double magnitude = bound_ * rng.uniform01();
  if (norm > 0.0) {
    for (double& v : g) v *= magnitude / norm;
  }
  return {0.0, std::move(g)};
}

std::vector<SuiteResult> verify_lemmas(std::uint64_t seed, long trials) {
  std::vector<SuiteResult> results;

  {
    SuiteResult r;
    r.name = "prop_sqrt_sums";
    SplitMix64 rng(seed, 10);
    for (long t = 0; t < trials; ++t) {
      auto a = random_nonnegative_sequence(rng);
      if (std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; })) {
        a[0] = 1.0;
      }
      ++r.trials;
      if (!check_prop_sqrt_sums(a).holds) ++r.failures;
    }
    results.push_back(std::move(r));
  }

  {
    SuiteResult r;
    r.name = "prop_log_sums";
    SplitMix64 rng(seed, 11);
    for (long t = 0; t < trials; ++t) {
      const auto a = random_nonnegative_sequence(rng);
      const double A = std::pow(10.0, rng.uniform(-2.0, 1.0));
      ++r.trials;
      if (!check_prop_log_sums(a, A).holds) ++r.failures;
    }
    results.push_back(std::move(r));
  }

  {
    SuiteResult r;
    r.name = "d_sequence_lemma";
    SplitMix64 rng(seed, 12);
    for (long t = 0; t < trials; ++t) {
      const auto d = random_monotone_sequence(rng);
      const auto check = check_d_sequence_lemma(d);
      ++r.trials;
      if (!check.precondition_ok || !check.holds) ++r.failures;
    }
    results.push_back(std::move(r));
  }

  return results;
}

std::vector<SuiteResult> verify_bounds() {
  std::vector<SuiteResult> results;
  const long steps = 2000;

  SuiteResult gd;
  gd.name = "theorem1_gd_bound";
  SuiteResult da;
  da.name = "theorem2_da_bound";

  for (const int dim : {1, 5}) {
    for (const double distance : {1.0, 100.0}) {
      for (const double d0 : {1e-4, 1e-2}) {
        Vec x0(static_cast<std::size_t>(dim), 0.0);
        Vec xstar(static_cast<std::size_t>(dim),
                  distance / std::sqrt(static_cast<double>(dim)));
        AbsDistanceOracle oracle(xstar);
        const double true_distance = distance_l2(x0, xstar);

        for (const bool linear_weights : {false, true}) {
          RunOptions options;
          options.d0 = d0;
          options.steps = steps;
          options.schedule = linear_weights ? WeightSchedule::polynomial(1.0)
                                            : WeightSchedule::constant();
          const RunTrace trace = run_method(Method::prodigy_gd, oracle, x0, options);
          for (const BoundReport& report :
               theorem1_bounds(trace, true_distance, oracle.lipschitz(), 0.0)) {
            ++gd.trials;
            if (!report.holds) ++gd.failures;
          }
        }

        RunOptions options;
        options.d0 = d0;
        options.steps = steps;
        const RunTrace trace = run_method(Method::prodigy_da, oracle, x0, options);
        for (const long n : {100L, 1000L, steps}) {
          const RunTrace prefix = trace_prefix(trace, n);
          const BoundReport report =
              theorem2_report(prefix, true_distance, oracle.lipschitz(), d0, 0.0);
          ++da.trials;
          if (!report.holds) ++da.failures;
        }
      }
    }
  }

  results.push_back(std::move(gd));
  results.push_back(std::move(da));
  return results;
}

std::vector<SuiteResult> verify_lowerbound() {
  std::vector<SuiteResult> results;

  {
    SuiteResult r;
    r.name = "resisting_oracle_game";
    for (const Method method :
         {Method::prodigy_gd, Method::prodigy_da, Method::coord_da, Method::prodigy_adam,
          Method::dadapt, Method::dog}) {
      for (const long n : {5L, 10L, 20L}) {
        const auto game = run_resisting_oracle(make_game_runner(method), n, 1e-3);
        ++r.trials;
        if (game.degenerate_probe || game.premise_failed || !game.holds) {
          ++r.failures;
          r.notes.push_back(method_name(method) + " n=" + std::to_string(n));
        }
      }
    }
    results.push_back(std::move(r));
  }

  {
    SuiteResult r;
    r.name = "exponential_boundedness";
    const double d0 = 1e-2;
    for (const Method method :
         {Method::prodigy_gd, Method::prodigy_da, Method::dadapt, Method::dog}) {
      for (std::uint64_t stream = 0; stream < 25; ++stream) {
        RandomStreamOracle oracle(3, stream);
        RunOptions options;
        options.d0 = d0;
        options.steps = 40;
        options.track_average_objective = false;
        const RunTrace trace =
            run_method(method, oracle, Vec(3, 0.0), options);
        ++r.trials;
        if (!check_exponential_bounded(trace, d0).holds) {
          ++r.failures;
          r.notes.push_back(method_name(method) + " stream=" + std::to_string(stream));
        }
      }
    }
    results.push_back(std::move(r));
  }

  return results;
}

}  // namespace prodigy::theory
