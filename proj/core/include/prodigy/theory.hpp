#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "prodigy/oracle.hpp"
#include "prodigy/trace.hpp"
#include "prodigy/vec.hpp"

namespace prodigy::theory {

/// One evaluated inequality: `holds` is observed <= bound up to the shared
/// floating-point slack (relative 1e-9 plus absolute 1e-12).
struct BoundReport {
  std::string context;
  long step = -1;
  double observed = 0.0;
  double bound = 0.0;
  bool holds = false;
};

bool bound_holds(double observed, double bound);

/// 1 + log2(a): the floor-at-one logarithm in the adaptation-cost factors.
double log2plus(double a);

// --- sequence inequalities -------------------------------------------------

/// For nonnegative a with a positive total:
///   sqrt(sum a) <= sum_k a_k / sqrt(sum_{i<=k} a_i) <= 2 sqrt(sum a).
/// Terms with a zero prefix sum are skipped.
struct SqrtSumCheck {
  double lower = 0.0, middle = 0.0, upper = 0.0;
  bool holds = false;
};
SqrtSumCheck check_prop_sqrt_sums(std::span<const double> a);

/// For nonnegative a and A > 0:
///   sum_k a_k / (A + sum_{i<=k} a_i) <= log(A + sum a) - log A.
struct LogSumCheck {
  double lhs = 0.0, rhs = 0.0;
  bool holds = false;
};
LogSumCheck check_prop_log_sums(std::span<const double> a, double A);

/// For positive non-decreasing d_0 <= ... <= d_N:
///   min_{t<N} d_{t+1} / sqrt(sum_{k<=t} d_k^2) <= 4 sqrt(log2plus(d_N/d_0)) / sqrt(N).
/// The guarantee is stated under N >= 2 log2plus(d_N/d_0); both sides are
/// evaluated regardless and `precondition_ok` reports whether the input was
/// in the covered class.
struct DSequenceCheck {
  double lhs = 0.0, rhs = 0.0;
  bool holds = false;
  bool precondition_ok = false;
};
DSequenceCheck check_d_sequence_lemma(std::span<const double> d);

// --- convergence bounds ------------------------------------------------------

/// Per-step guarantee for the gradient-descent variant: after step n,
///   f(avg_n) - f* <= sqrt(2 lambda_n) D G d_{n+1} (2 + log(1 + sum lambda_k^2))
///                    / sqrt(sum_{k<=n} lambda_k d_k^2).
/// The trace must carry f_avg (throws std::invalid_argument otherwise).
std::vector<BoundReport> theorem1_bounds(const RunTrace& trace, double distance,
                                         double lipschitz, double f_star);

/// Dual-averaging guarantee evaluated at the selected step:
///   f(avg_t) - f* <= 4 G D sqrt(log2plus(D/d0)) / sqrt(n)
/// with t = argmin_{k<n} d_{k+1} / sqrt(sum_{i<=k} d_i^2) over an n-step trace.
double theorem2_bound(long n, double distance, double lipschitz, double d0);
long theorem2_select_t(const RunTrace& trace);
BoundReport theorem2_report(const RunTrace& trace, double distance, double lipschitz,
                            double d0, double f_star);

// --- growth envelopes --------------------------------------------------------

/// ||x_k - x0|| <= 2^k d0 for every recorded iterate including the final one.
struct ExpBoundedCheck {
  bool holds = true;
  long first_violation = -1;
};
ExpBoundedCheck check_exponential_bounded(const RunTrace& trace, double d0);

/// For a trace whose step sizes obey gamma_k <= d_k / G (reported via
/// `in_class`), checks ||x_k - x0|| <= (2c+1)^k ||x_1 - x0||. When the trace
/// is out of class the growth bound is not asserted.
struct SlowGrowthCheck {
  bool in_class = true;
  bool holds = true;
  long first_violation = -1;
};
SlowGrowthCheck check_slow_growth_bound(const RunTrace& trace, double c, double lipschitz);

// --- adversarial lower-bound game -------------------------------------------

/// Runs a method against a gradient server that always answers with slope -1
/// (value -|x - x0|, so queries on either side of the anchor see the same
/// linear landscape; negative-side queries are counted as reflections). After
/// n steps the server commits to f(x) = |x - x*| + x* with x* = 2^(n+1) x1,
/// where x1 is the method's first displacement. For any method whose iterates
/// stay exponentially bounded relative to x1 the best achieved gap obeys
///   min_{k<=n} f(x_k) - f* >= D G sqrt(log2(D / x1)) / (2 sqrt(n+1)),  G = 1.
struct ResistingGameResult {
  double x1 = 0.0;
  double distance = 0.0;  // committed D = 2^(n+1) x1
  double gap = 0.0;
  double lower_bound = 0.0;
  bool holds = false;
  bool degenerate_probe = false;  // the first step did not move
  bool premise_failed = false;    // growth exceeded the exponential envelope
  long reflections = 0;
};

/// A method hooked into the game: run `steps` steps on the oracle from x0
/// with initial estimate d0, recording query points.
using MethodRunner =
    std::function<RunTrace(const ProblemOracle& oracle, const Vec& x0, long steps, double d0)>;

ResistingGameResult run_resisting_oracle(const MethodRunner& runner, long n, double d0);

}  // namespace prodigy::theory
