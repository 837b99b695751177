#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the code paths it is used to check.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

/// Literal 1-based evaluation of  c[k] = sum_{l} g[l] h[k+1-l],  k = 1..2L-1.
inline std::vector<cplx> convolve(const std::vector<cplx>& g, const std::vector<cplx>& h) {
  const std::size_t L = h.size();
  std::vector<cplx> c(2 * L - 1);
  for (std::size_t k = 1; k <= 2 * L - 1; ++k) {
    cplx acc{};
    for (std::size_t l = 1; l <= L; ++l) {
      if (k + 1 < l + 1 || k + 1 - l > L) continue;
      acc += g[l - 1] * h[k - l];
    }
    c[k - 1] = acc;
  }
  return c;
}

/// sum_i g_i * h_i over antennas.
inline std::vector<cplx> composite(const std::vector<std::vector<cplx>>& g, const std::vector<std::vector<cplx>>& h) {
  std::vector<cplx> sum(2 * h.front().size() - 1);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto c = convolve(g[i], h[i]);
    for (std::size_t t = 0; t < c.size(); ++t) sum[t] += c[t];
  }
  return sum;
}

inline double energy(const std::vector<cplx>& v) {
  double e = 0.0;
  for (const auto& x : v) e += std::norm(x);
  return e;
}

/// ZF beamformers built a second way: each user's (2L-1) x (M L) convolution
/// matrix is assembled column by column from the impulse response of a unit
/// weight at (antenna m, tap l), stacked, and inverted with Eigen's
/// complete orthogonal decomposition. Returns [user][antenna][tap] for the
/// requested alpha (1-based), unit aggregate norm.
inline std::vector<std::vector<std::vector<cplx>>> zf_by_columns(
    const std::vector<std::vector<std::vector<cplx>>>& h, std::size_t alpha) {
  const std::size_t N = h.size(), M = h.front().size(), L = h.front().front().size(), R = 2 * L - 1;
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(N * R), static_cast<Eigen::Index>(M * L));
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t l = 0; l < L; ++l) {
      const auto col = static_cast<Eigen::Index>(m * L + l);
      for (std::size_t n = 0; n < N; ++n) {
        std::vector<cplx> unit(L);
        unit[l] = 1.0;
        const auto response = convolve(unit, h[n][m]);
        for (std::size_t r = 0; r < R; ++r) H(static_cast<Eigen::Index>(n * R + r), col) = response[r];
      }
    }
  }
  const Eigen::MatrixXcd pinv = H.completeOrthogonalDecomposition().pseudoInverse();
  std::vector<std::vector<std::vector<cplx>>> out(N, std::vector<std::vector<cplx>>(M, std::vector<cplx>(L)));
  for (std::size_t n = 0; n < N; ++n) {
    Eigen::VectorXcd w = pinv.col(static_cast<Eigen::Index>(n * R + alpha - 1));
    w /= w.norm();
    for (std::size_t m = 0; m < M; ++m)
      for (std::size_t l = 0; l < L; ++l) out[n][m][l] = w(static_cast<Eigen::Index>(m * L + l));
  }
  return out;
}

struct Row2 {
  double a1, a2;
  int sense;  // +1: >=, -1: <=
  double b;
};

struct GridResult {
  bool feasible = false;
  double x1 = 0.0, x2 = 0.0, value = std::numeric_limits<double>::infinity();
};

/// Exhaustive search of  min w1 x1 + w2 x2  over the grid {0, h, 2h, ...}^2
/// within [0, upper]^2. For each x1 the x2 column is scanned upward; with
/// w2 > 0 the first feasible x2 is the column optimum.
inline GridResult grid_search(double w1, double w2, const std::vector<Row2>& rows, double step, double upper) {
  GridResult best;
  const auto count = static_cast<long>(std::floor(upper / step + 0.5));
  const auto ok = [&](double x1, double x2) {
    for (const auto& r : rows) {
      const double lhs = r.a1 * x1 + r.a2 * x2;
      const double tol = 1e-12 * (std::abs(r.a1) + std::abs(r.a2) + std::abs(r.b) + 1.0);
      if (r.sense > 0 ? lhs < r.b - tol : lhs > r.b + tol) return false;
    }
    return true;
  };
  for (long i = 0; i <= count; ++i) {
    const double x1 = static_cast<double>(i) * step;
    if (w1 * x1 >= best.value) break;
    for (long j = 0; j <= count; ++j) {
      const double x2 = static_cast<double>(j) * step;
      const double v = w1 * x1 + w2 * x2;
      if (v >= best.value) break;
      if (ok(x1, x2)) {
        best = {true, x1, x2, v};
        break;
      }
    }
  }
  return best;
}

struct Lp2 {
  double w1 = 1.0, w2 = 1.0;
  std::vector<Row2> rows;
  bool feasible = true;
  double x1 = 0.0, x2 = 0.0;  ///< least point when feasible
};

/// Random two-user min-power LP in SINR form:
///   g1 x1 - c12 x2 >= b1,   g2 x2 - c21 x1 >= b2,
/// optionally with extra rows. Feasible instances are built around a least
/// point on the `step` grid inside [0, 1.6]^2; infeasible ones either have
/// coupling too strong for any non-negative solution or a cap that excludes
/// the least point by at least 0.05.
inline Lp2 random_lp2(std::mt19937_64& rng, double step) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto grid = [&](double hi) { return std::floor(u(rng) * hi / step) * step; };
  Lp2 lp;
  lp.w1 = 0.5 + 1.5 * u(rng);
  lp.w2 = 0.5 + 1.5 * u(rng);
  const double g1 = 0.5 + 4.0 * u(rng), g2 = 0.5 + 4.0 * u(rng);
  const int kind = static_cast<int>(u(rng) * 10.0);
  if (kind == 0) {
    // c12 c21 > g1 g2 with positive right-hand sides: no non-negative solution.
    const double c12 = g1 * (1.2 + u(rng)), c21 = g2 * (1.2 + u(rng));
    lp.rows = {{g1, -c12, +1, 0.1 + u(rng)}, {-c21, g2, +1, 0.1 + u(rng)}};
    lp.feasible = false;
    return lp;
  }
  lp.x1 = step + grid(1.6);
  lp.x2 = step + grid(1.6);
  const double c12 = 0.5 * g1 * lp.x1 / lp.x2 * u(rng);
  const double c21 = 0.5 * g2 * lp.x2 / lp.x1 * u(rng);
  lp.rows = {{g1, -c12, +1, g1 * lp.x1 - c12 * lp.x2}, {-c21, g2, +1, g2 * lp.x2 - c21 * lp.x1}};
  const double a1 = 0.2 + u(rng), a2 = 0.2 + u(rng);
  const double at = a1 * lp.x1 + a2 * lp.x2;
  if (kind <= 2) {
    lp.rows.push_back({a1, a2, -1, at - 0.05 - 0.2 * u(rng)});
    lp.feasible = false;
  } else if (kind <= 5) {
    lp.rows.push_back({a1, a2, -1, at + 0.01 + u(rng)});
  } else if (kind <= 7) {
    lp.rows.push_back({a1, a2, +1, at * u(rng)});
  }
  return lp;
}

}  // namespace oracle
