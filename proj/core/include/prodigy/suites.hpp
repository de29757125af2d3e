#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prodigy/theory.hpp"

namespace prodigy::theory {

/// Outcome of one randomized or grid-driven verification suite.
struct SuiteResult {
  std::string name;
  long trials = 0;
  long failures = 0;
  std::vector<std::string> notes;

  bool ok() const { return failures == 0 && trials > 0; }
};

/// Randomized certification of the sequence inequalities (the sqrt-sum and
/// log-sum propositions and the d-sequence minimum lemma), preconditions
/// enforced by construction.
std::vector<SuiteResult> verify_lemmas(std::uint64_t seed = 0, long trials = 1000);

/// Convergence-bound certification on a small synthetic grid: the per-step
/// gradient-descent bound for constant and linear weights, and the selected-
/// step dual-averaging bound at several horizons.
std::vector<SuiteResult> verify_bounds();

/// Lower-bound game against every distance-estimating method at several
/// horizons, plus the exponential-growth envelope on random gradient streams.
std::vector<SuiteResult> verify_lowerbound();

/// Restriction of a trace to its first `steps` rows, with the trailing
/// distance estimate fixed up so step-indexed lookups still work. Because
/// every recorded method is incremental, the prefix equals the trace of a
/// shorter run.
RunTrace trace_prefix(const RunTrace& trace, long steps);

/// Adversarial bounded-gradient server: the returned subgradient is a pure
/// hash of the query point (seeded per stream), with l2 norm at most
/// `bound`. Values are served as 0; only the gradient stream matters for
/// growth-envelope checks.
class RandomStreamOracle final : public ProblemOracle {
 public:
  RandomStreamOracle(int dim, std::uint64_t seed, double bound = 1.0);

  int dim() const override { return dim_; }
  double lipschitz() const override { return bound_; }
  Evaluation eval(std::span<const double> x) const override;

 private:
  int dim_;
  std::uint64_t seed_;
  double bound_;
};

}  // namespace prodigy::theory
