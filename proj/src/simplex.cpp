#include "hetnet/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "hetnet/error.hpp"

namespace hetnet {

void LpProblem::add(std::vector<double> coeffs, Sense sense, double bound) {
  constraints.push_back({std::move(coeffs), sense, bound});
}

void LpProblem::validate() const {
  if (objective.empty()) throw InvalidInput("LP needs at least one variable");
  for (double c : objective)
    if (!std::isfinite(c)) throw InvalidInput("LP objective must be finite");
  for (const auto& row : constraints) {
    if (row.coeffs.size() != objective.size()) throw InvalidInput("LP constraint has wrong width");
    if (!std::isfinite(row.bound)) throw InvalidInput("LP bound must be finite");
    for (double a : row.coeffs)
      if (!std::isfinite(a)) throw InvalidInput("LP coefficients must be finite");
  }
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-12;
constexpr double kCostTol = 1e-12;
constexpr double kFeasTol = 1e-9;

// Tableau with `rows` constraint rows and one cost row at index `rows`.
// Last column is the right-hand side.
class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols) : t_(Eigen::MatrixXd::Zero(rows + 1, cols + 1)), basis_(rows) {}

  Eigen::MatrixXd& data() { return t_; }
  std::vector<Eigen::Index>& basis() { return basis_; }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  double& rhs(Eigen::Index r) { return t_(r, cols()); }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Minimizes the cost row over columns [0, usable). Returns false if unbounded.
  bool optimize(Eigen::Index usable) {
    const Eigen::Index m = rows();
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index c = 0; c < usable; ++c) {
        if (t_(m, c) < -kCostTol) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < m; ++r) {
        const double a = t_(r, enter);
        if (a <= kPivotTol) continue;
        const double ratio = t_(r, cols()) / a;
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && basis_[static_cast<std::size_t>(r)] <
                                                    basis_[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem) {
  problem.validate();
  const auto n = static_cast<Eigen::Index>(problem.variables());

  // Equilibrate and orient rows so every right-hand side is non-negative.
  struct Row {
    Eigen::VectorXd a;
    Sense sense;
    double b;
  };
  std::vector<Row> rows;
  for (const auto& c : problem.constraints) {
    Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(c.coeffs.data(), n);
    double b = c.bound;
    Sense sense = c.sense;
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0.0) {
      const bool ok = sense == Sense::kGreaterEqual ? b <= 0.0 : sense == Sense::kLessEqual ? b >= 0.0 : b == 0.0;
      if (!ok) return {LpStatus::kInfeasible, {}, 0.0};
      continue;
    }
    a /= scale;
    b /= scale;
    if (b < 0.0) {
      a = -a;
      b = -b;
      if (sense == Sense::kGreaterEqual) sense = Sense::kLessEqual;
      else if (sense == Sense::kLessEqual) sense = Sense::kGreaterEqual;
    }
    rows.push_back({std::move(a), sense, b});
  }
  const auto m = static_cast<Eigen::Index>(rows.size());

  Eigen::VectorXd cost = Eigen::Map<const Eigen::VectorXd>(problem.objective.data(), n);
  const double cost_scale = std::max(cost.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  cost /= cost_scale;

  if (m == 0) {
    if ((cost.array() < 0.0).any()) return {LpStatus::kUnbounded, {}, 0.0};
    return {LpStatus::kOptimal, std::vector<double>(static_cast<std::size_t>(n), 0.0), 0.0};
  }

  // Column layout: [x (n) | slack/surplus (one per inequality) | artificial (one per >= or = row)].
  Eigen::Index slacks = 0, artificials = 0;
  for (const auto& r : rows) {
    if (r.sense != Sense::kEqual) ++slacks;
    if (r.sense != Sense::kLessEqual) ++artificials;
  }
  const Eigen::Index art_begin = n + slacks;
  Tableau tab(m, art_begin + artificials);
  auto& t = tab.data();
  Eigen::Index s = n, art = art_begin;
  std::vector<Eigen::Index> art_row;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    t.row(i).head(n) = r.a.transpose();
    tab.rhs(i) = r.b;
    if (r.sense == Sense::kLessEqual) {
      t(i, s) = 1.0;
      tab.basis()[static_cast<std::size_t>(i)] = s++;
    } else {
      if (r.sense == Sense::kGreaterEqual) t(i, s++) = -1.0;
      t(i, art) = 1.0;
      art_row.push_back(i);
      tab.basis()[static_cast<std::size_t>(i)] = art++;
    }
  }

  // Phase 1: minimize the sum of artificials.
  if (artificials > 0) {
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis()[static_cast<std::size_t>(i)] >= art_begin) t.row(m) -= t.row(i);
    }
    for (Eigen::Index c = art_begin; c < tab.cols(); ++c) t(m, c) = 0.0;
    tab.optimize(tab.cols());
    // Each artificial left in the basis must be zero relative to its own row.
    for (Eigen::Index i = 0; i < m; ++i) {
      const Eigen::Index b = tab.basis()[static_cast<std::size_t>(i)];
      if (b < art_begin) continue;
      const double own_rhs = rows[static_cast<std::size_t>(art_row[static_cast<std::size_t>(b - art_begin)])].b;
      if (tab.rhs(i) > kFeasTol * own_rhs + 1e-15) return {LpStatus::kInfeasible, {}, 0.0};
    }

    // Drive remaining (zero-valued) artificials out of the basis.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis()[static_cast<std::size_t>(i)] < art_begin) continue;
      for (Eigen::Index c = 0; c < art_begin; ++c) {
        if (std::abs(t(i, c)) > 1e-9) {
          tab.pivot(i, c);
          break;
        }
      }
    }
  }

  // Phase 2 on the structural and slack columns.
  t.row(m).setZero();
  t.row(m).head(n) = cost.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index b = tab.basis()[static_cast<std::size_t>(i)];
    if (b < art_begin && t(m, b) != 0.0) t.row(m) -= t(m, b) * t.row(i);
  }
  if (!tab.optimize(art_begin)) return {LpStatus::kUnbounded, {}, 0.0};

  // One step of iterative refinement of the final vertex against the
  // equilibrated rows; kept only if the worst relative row residual does not grow.
  std::vector<Eigen::Index> basic_cols;
  for (Eigen::Index b : tab.basis())
    if (b < art_begin) basic_cols.push_back(b);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, art_begin);
  Eigen::VectorXd rhs(m);
  {
    Eigen::Index sc = n;
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto& r = rows[static_cast<std::size_t>(i)];
      A.row(i).head(n) = r.a.transpose();
      rhs(i) = r.b;
      if (r.sense == Sense::kLessEqual) A(i, sc++) = 1.0;
      else if (r.sense == Sense::kGreaterEqual) A(i, sc++) = -1.0;
    }
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(art_begin);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index b = tab.basis()[static_cast<std::size_t>(i)];
    if (b < art_begin) z(b) = tab.rhs(i);
  }
  if (!basic_cols.empty()) {
    const auto k_count = static_cast<Eigen::Index>(basic_cols.size());
    Eigen::MatrixXd B(m, k_count);
    Eigen::VectorXd xb(k_count);
    for (Eigen::Index k = 0; k < k_count; ++k) {
      B.col(k) = A.col(basic_cols[static_cast<std::size_t>(k)]);
      xb(k) = z(basic_cols[static_cast<std::size_t>(k)]);
    }
    const auto worst = [&](const Eigen::VectorXd& x) {
      const Eigen::VectorXd scale = rhs.cwiseAbs() + B.cwiseAbs() * x.cwiseAbs();
      double w = 0.0;
      for (Eigen::Index i = 0; i < m; ++i) {
        const double r = std::abs((B.row(i) * x)(0) - rhs(i));
        if (r > 0.0) w = std::max(w, scale(i) > 0.0 ? r / scale(i) : std::numeric_limits<double>::infinity());
      }
      return w;
    };
    const Eigen::VectorXd correction = B.colPivHouseholderQr().solve(rhs - B * xb);
    const Eigen::VectorXd refined = xb + correction;
    if (refined.allFinite() && worst(refined) <= worst(xb)) xb = refined;
    for (Eigen::Index k = 0; k < k_count; ++k) z(basic_cols[static_cast<std::size_t>(k)]) = std::max(0.0, xb(k));
  }

  LpSolution sol;
  sol.status = LpStatus::kOptimal;
  sol.x.resize(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) sol.x[static_cast<std::size_t>(j)] = std::max(0.0, z(j));
  sol.value = 0.0;
  for (std::size_t j = 0; j < sol.x.size(); ++j) sol.value += problem.objective[j] * sol.x[j];
  return sol;
}

}  // namespace hetnet
