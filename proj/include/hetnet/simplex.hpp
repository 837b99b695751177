#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hetnet {

enum class Sense { kGreaterEqual, kLessEqual, kEqual };

struct LinearConstraint {
  std::vector<double> coeffs;
  Sense sense = Sense::kGreaterEqual;
  double bound = 0.0;
};

/// minimize objective' x  subject to constraints, x >= 0.
struct LpProblem {
  std::vector<double> objective;
  std::vector<LinearConstraint> constraints;

  std::size_t variables() const { return objective.size(); }
  void add(std::vector<double> coeffs, Sense sense, double bound);
  /// Throws InvalidInput on non-finite data, N == 0, or ragged rows.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
std::string to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double value = 0.0;
};

/// Dense two-phase simplex with Bland's rule. Rows are equilibrated by their
/// largest coefficient; the final basic solution is re-solved directly from
/// the original rows. Deterministic.
LpSolution solve_lp(const LpProblem& problem);

}  // namespace hetnet
