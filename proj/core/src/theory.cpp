#include "prodigy/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "prodigy/compensated.hpp"

namespace prodigy::theory {

namespace {

constexpr double kRelSlack = 1e-9;
constexpr double kAbsSlack = 1e-12;

/// Probing oracle for the lower-bound game: slope -1 toward larger |x - x0|,
/// consistent with a linear function on whichever side the method explores.
class LinearProbeOracle final : public ProblemOracle {
 public:
  int dim() const override { return 1; }
  double lipschitz() const override { return 1.0; }
  Evaluation eval(std::span<const double> x) const override {
    if (x.size() != 1) throw std::invalid_argument("eval: dimension mismatch");
    if (x[0] < 0.0) return {x[0], Vec{1.0}};
    return {-x[0], Vec{-1.0}};
  }
};

}  // namespace

bool bound_holds(double observed, double bound) {
  return observed <= bound * (1.0 + kRelSlack) + kAbsSlack;
}

double log2plus(double a) { return 1.0 + std::log2(a); }

SqrtSumCheck check_prop_sqrt_sums(std::span<const double> a) {
  double total = 0.0;
  for (double v : a) {
    if (v < 0.0) throw std::invalid_argument("check_prop_sqrt_sums: negative entry");
    total += v;
  }
  if (!(total > 0.0)) throw std::invalid_argument("check_prop_sqrt_sums: zero total");

  SqrtSumCheck out;
  double prefix = 0.0;
  for (double v : a) {
    prefix += v;
    if (prefix > 0.0) out.middle += v / std::sqrt(prefix);
  }
  out.lower = std::sqrt(total);
  out.upper = 2.0 * std::sqrt(total);
  out.holds = bound_holds(out.lower, out.middle) && bound_holds(out.middle, out.upper);
  return out;
}

LogSumCheck check_prop_log_sums(std::span<const double> a, double A) {
  if (!(A > 0.0)) throw std::invalid_argument("check_prop_log_sums: A must be positive");
  LogSumCheck out;
  double prefix = A;
  double total = 0.0;
  for (double v : a) {
    if (v < 0.0) throw std::invalid_argument("check_prop_log_sums: negative entry");
    prefix += v;
    total += v;
    out.lhs += v / prefix;
  }
  out.rhs = std::log(A + total) - std::log(A);
  out.holds = bound_holds(out.lhs, out.rhs);
  return out;
}

DSequenceCheck check_d_sequence_lemma(std::span<const double> d) {
  if (d.size() < 2) {
    throw std::invalid_argument("check_d_sequence_lemma: need at least two entries");
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0)) throw std::invalid_argument("check_d_sequence_lemma: entries must be positive");
    if (i > 0 && d[i] < d[i - 1]) {
      throw std::invalid_argument("check_d_sequence_lemma: sequence must be non-decreasing");
    }
  }
  const long N = static_cast<long>(d.size()) - 1;

  DSequenceCheck out;
  out.precondition_ok =
      static_cast<double>(N) >= 2.0 * log2plus(d[d.size() - 1] / d[0]);

  double prefix_sq = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (long t = 0; t < N; ++t) {
    prefix_sq += d[static_cast<std::size_t>(t)] * d[static_cast<std::size_t>(t)];
    best = std::min(best, d[static_cast<std::size_t>(t) + 1] / std::sqrt(prefix_sq));
  }
  out.lhs = best;
  out.rhs = 4.0 * std::sqrt(log2plus(d[d.size() - 1] / d[0])) /
            std::sqrt(static_cast<double>(N));
  out.holds = bound_holds(out.lhs, out.rhs);
  return out;
}

std::vector<BoundReport> theorem1_bounds(const RunTrace& trace, double distance,
                                         double lipschitz, double f_star) {
  if (!std::isfinite(f_star)) {
    throw std::invalid_argument("theorem1_bounds: optimum value unavailable");
  }
  std::vector<BoundReport> reports;
  reports.reserve(trace.rows.size());

  CompensatedSum lambda_sq_sum;
  CompensatedSum lambda_d_sq_sum;
  for (const TraceRow& row : trace.rows) {
    if (std::isnan(row.f_avg)) {
      throw std::invalid_argument("theorem1_bounds: trace has no averaged objective");
    }
    lambda_sq_sum.add(row.lambda * row.lambda);
    lambda_d_sq_sum.add(row.lambda * row.d * row.d);

    BoundReport report;
    report.context = "theorem1";
    report.step = row.step;
    report.observed = row.f_avg - f_star;
    const double d_next = trace.d_after(row.step);
    report.bound = std::sqrt(2.0 * row.lambda) * distance * lipschitz * d_next *
                   (2.0 + std::log1p(lambda_sq_sum.value())) /
                   std::sqrt(lambda_d_sq_sum.value());
    report.holds = bound_holds(report.observed, report.bound);
    reports.push_back(std::move(report));
  }
  return reports;
}

double theorem2_bound(long n, double distance, double lipschitz, double d0) {
  if (n < 1) throw std::invalid_argument("theorem2_bound: need n >= 1");
  if (!(d0 > 0.0) || !(distance >= d0)) {
    throw std::invalid_argument("theorem2_bound: need D >= d0 > 0");
  }
  return 4.0 * lipschitz * distance * std::sqrt(log2plus(distance / d0)) /
         std::sqrt(static_cast<double>(n));
}

long theorem2_select_t(const RunTrace& trace) {
  if (trace.rows.empty()) throw std::invalid_argument("theorem2_select_t: empty trace");
  double prefix_sq = 0.0;
  double best = std::numeric_limits<double>::infinity();
  long best_t = 0;
  for (const TraceRow& row : trace.rows) {
    prefix_sq += row.d * row.d;
    const double value = trace.d_after(row.step) / std::sqrt(prefix_sq);
    if (value < best) {
      best = value;
      best_t = row.step;
    }
  }
  return best_t;
}

BoundReport theorem2_report(const RunTrace& trace, double distance, double lipschitz,
                            double d0, double f_star) {
  if (!std::isfinite(f_star)) {
    throw std::invalid_argument("theorem2_report: optimum value unavailable");
  }
  const long t = theorem2_select_t(trace);
  const TraceRow& row = trace.rows[static_cast<std::size_t>(t)];
  if (std::isnan(row.f_avg)) {
    throw std::invalid_argument("theorem2_report: trace has no averaged objective");
  }
  BoundReport report;
  report.context = "theorem2";
  report.step = t;
  report.observed = row.f_avg - f_star;
  report.bound = theorem2_bound(trace.steps(), distance, lipschitz, d0);
  report.holds = bound_holds(report.observed, report.bound);
  return report;
}

ExpBoundedCheck check_exponential_bounded(const RunTrace& trace, double d0) {
  ExpBoundedCheck out;
  const auto envelope = [d0](long k) { return std::ldexp(d0, static_cast<int>(k)); };
  for (const TraceRow& row : trace.rows) {
    if (!bound_holds(row.dist_x0, envelope(row.step))) {
      return {false, row.step};
    }
  }
  if (!bound_holds(trace.final_dist_x0, envelope(trace.steps()))) {
    return {false, trace.steps()};
  }
  return out;
}

SlowGrowthCheck check_slow_growth_bound(const RunTrace& trace, double c, double lipschitz) {
  if (!(c > 0.0)) throw std::invalid_argument("check_slow_growth_bound: c must be positive");
  if (!(lipschitz > 0.0)) {
    throw std::invalid_argument("check_slow_growth_bound: needs a positive Lipschitz bound");
  }
  SlowGrowthCheck out;
  for (const TraceRow& row : trace.rows) {
    if (row.step_size > (row.d / lipschitz) * (1.0 + kRelSlack)) {
      out.in_class = false;
      out.first_violation = row.step;
      return out;  // bound not asserted for methods outside the class
    }
  }
  if (trace.rows.size() < 2) return out;

  const double first_move = trace.rows[1].dist_x0;
  const double factor = 2.0 * c + 1.0;
  double envelope = first_move;
  for (std::size_t k = 1; k < trace.rows.size(); ++k) {
    if (!bound_holds(trace.rows[k].dist_x0, envelope)) {
      return {true, false, trace.rows[k].step};
    }
    envelope *= factor;
  }
  if (!bound_holds(trace.final_dist_x0, envelope)) {
    return {true, false, trace.steps()};
  }
  return out;
}

ResistingGameResult run_resisting_oracle(const MethodRunner& runner, long n, double d0) {
  if (n < 0) throw std::invalid_argument("run_resisting_oracle: negative horizon");
  if (!(d0 > 0.0)) throw std::invalid_argument("run_resisting_oracle: d0 must be positive");

  LinearProbeOracle oracle;
  const long steps = std::max(n, 1L);
  const RunTrace trace = runner(oracle, Vec{0.0}, steps, d0);
  if (trace.points.size() != static_cast<std::size_t>(steps)) {
    throw std::invalid_argument("run_resisting_oracle: runner must record query points");
  }

  // Reflected iterate magnitudes x~_0..x~_steps (query points plus the final one).
  std::vector<double> magnitudes;
  magnitudes.reserve(static_cast<std::size_t>(steps) + 1);
  ResistingGameResult result;
  for (const Vec& q : trace.points) {
    magnitudes.push_back(std::abs(q[0]));
    if (q[0] < 0.0) ++result.reflections;
  }
  magnitudes.push_back(std::abs(trace.final_x[0]));
  if (trace.final_x[0] < 0.0) ++result.reflections;

  result.x1 = magnitudes[1];
  if (!(result.x1 > 0.0)) {
    result.degenerate_probe = true;
    return result;
  }

  double max_magnitude = 0.0;
  for (long k = 0; k <= n; ++k) {
    max_magnitude = std::max(max_magnitude, magnitudes[static_cast<std::size_t>(k)]);
  }
  // The guarantee only covers methods that stay below 2^n x1 over the horizon.
  if (max_magnitude > std::ldexp(result.x1, static_cast<int>(n)) * (1.0 + kRelSlack)) {
    result.premise_failed = true;
  }

  const double x_star = std::ldexp(result.x1, static_cast<int>(n) + 1);
  result.distance = x_star;  // |x0 - x*| with x0 = 0
  double best_gap = std::numeric_limits<double>::infinity();
  for (long k = 0; k <= n; ++k) {
    // Revealed function: f(x) = |x - x*| + x*, so f - f* = |x - x*|.
    best_gap = std::min(best_gap, std::abs(magnitudes[static_cast<std::size_t>(k)] - x_star));
  }
  result.gap = best_gap;
  result.lower_bound = result.distance * 1.0 * std::sqrt(std::log2(result.distance / result.x1)) /
                       (2.0 * std::sqrt(static_cast<double>(n) + 1.0));
  if (!result.premise_failed) result.holds = result.gap >= result.lower_bound;
  return result;
}

}  // namespace prodigy::theory
