#pragma once

#include <optional>
#include <span>

#include "prodigy/vec.hpp"

namespace prodigy {

struct Evaluation {
  double value = 0.0;
  Vec subgradient;
};

/// First-order oracle for a convex, possibly non-smooth objective.
///
/// eval() returns the value and one valid subgradient at x. Oracles are
/// immutable after construction and safe to evaluate concurrently. When a
/// Lipschitz constant is declared, every returned subgradient satisfies
/// ||g||_2 <= lipschitz(); lipschitz_inf() bounds entries coordinate-wise.
/// A value of 0 means the bound is not used by the method.
class ProblemOracle {
 public:
  virtual ~ProblemOracle() = default;

  virtual int dim() const = 0;
  virtual Evaluation eval(std::span<const double> x) const = 0;

  virtual double lipschitz() const = 0;
  virtual double lipschitz_inf() const { return lipschitz(); }

  /// Known optimum value and minimizer, when the problem carries them.
  virtual std::optional<double> optimum_value() const { return std::nullopt; }
  virtual std::optional<Vec> minimizer() const { return std::nullopt; }
};

}  // namespace prodigy
