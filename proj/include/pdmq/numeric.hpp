#pragma once

// Finite-difference solver for weighted Sturm-Liouville problems
//
//   -(mu R')' + q R = eps w R on (0, rho_max], R(0) = R(rho_max) = 0,
//
// with q = mu U. Flux-form assembly gives a symmetric tridiagonal stiffness
// matrix and a diagonal mass matrix; eigenvalues come from bisection on the
// inertia of K - sigma M, eigenvectors from inverse iteration.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pdmq/error.hpp"
#include "pdmq/radial.hpp"

namespace pdmq {

template <class P>
concept SturmLiouvilleProblem = requires(const P& p, double x) {
  { p.mu(x) } -> std::convertible_to<double>;
  { p.potential(x) } -> std::convertible_to<double>;
  { p.weight(x) } -> std::convertible_to<double>;
  { p.default_rho_max() } -> std::convertible_to<double>;
};

/// -R'' + x^2 R = eps R on the half line with R(0) = 0; exact spectrum 4k + 3.
struct HalfLineOscillator {
  double mu(double) const noexcept { return 1.0; }
  double mu_prime(double) const noexcept { return 0.0; }
  double potential(double x) const noexcept { return x * x; }
  double weight(double) const noexcept { return 1.0; }
  double origin_exponent() const noexcept { return 1.0; }
  double default_rho_max() const noexcept { return 12.0; }

  static double exact_eigenvalue(std::size_t k) noexcept { return 4.0 * static_cast<double>(k) + 3.0; }
};

enum class Provenance { Analytic, Numeric };

inline const char* to_string(Provenance p) { return p == Provenance::Analytic ? "analytic" : "numeric"; }

struct DiscreteProblem {
  Grid grid;
  std::vector<double> diagonal;      // K_jj
  std::vector<double> off_diagonal;  // K_{j,j+1}, size N - 1
  std::vector<double> mass;          // M_jj = w(rho_j)

  std::size_t size() const noexcept { return diagonal.size(); }
};

template <SturmLiouvilleProblem P>
DiscreteProblem discretize(const P& problem, const Grid& grid) {
  if (grid.n_points < 100) throw Error(ErrorKind::GridTooCoarse, "grid needs at least 100 interior nodes");
  if (!(grid.rho_max > 0.0)) throw Error(ErrorKind::DomainError, "rho_max must be positive");

  const std::size_t n = grid.n_points;
  const double h = grid.h();
  const double inv_h2 = 1.0 / (h * h);

  // mu at the N + 1 midpoints rho_{j+1/2}, j = 0..N
  std::vector<double> mu_half(n + 1);
  for (std::size_t j = 0; j <= n; ++j) mu_half[j] = problem.mu((static_cast<double>(j) + 0.5) * h);

  DiscreteProblem dp{grid, std::vector<double>(n), std::vector<double>(n - 1), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    const double rho = grid.node(j + 1);
    const double q = problem.mu(rho) * problem.potential(rho);
    dp.diagonal[j] = (mu_half[j] + mu_half[j + 1]) * inv_h2 + q;
    dp.mass[j] = problem.weight(rho);
    if (j + 1 < n) dp.off_diagonal[j] = -mu_half[j + 1] * inv_h2;
    if (!std::isfinite(dp.diagonal[j]) || !std::isfinite(mu_half[j]) || !(dp.mass[j] > 0.0))
      throw Error(ErrorKind::SingularCoefficient, "non-finite coefficient at rho = " + std::to_string(rho));
  }
  return dp;
}

struct InertiaCount {
  std::size_t negatives = 0;
  double shift = 0.0;  // the shift actually factored
};

/// Number of negative pivots of the LDL^T factorization of K - sigma M,
/// i.e. the number of eigenvalues below sigma. A zero pivot perturbs the
/// shift by 1e-14 relative; three failed retries raise FactorizationBreakdown.
inline InertiaCount inertia(const DiscreteProblem& dp, double sigma) {
  const std::size_t n = dp.size();
  for (int attempt = 0; attempt <= 3; ++attempt) {
    std::size_t negatives = 0;
    bool breakdown = false;
    double pivot = dp.diagonal[0] - sigma * dp.mass[0];
    for (std::size_t j = 0;; ++j) {
      if (pivot == 0.0) {
        breakdown = true;
        break;
      }
      if (pivot < 0.0) ++negatives;
      if (j + 1 == n) break;
      const double b = dp.off_diagonal[j];
      pivot = dp.diagonal[j + 1] - sigma * dp.mass[j + 1] - b * (b / pivot);
    }
    if (!breakdown) return {negatives, sigma};
    sigma += 1e-14 * std::max(1.0, std::abs(sigma));
  }
  throw Error(ErrorKind::FactorizationBreakdown, "zero pivot persists near sigma = " + std::to_string(sigma));
}

/// Gershgorin interval for the spectrum of M^{-1/2} K M^{-1/2}.
inline std::pair<double, double> gershgorin_bounds(const DiscreteProblem& dp) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const std::size_t n = dp.size();
  for (std::size_t j = 0; j < n; ++j) {
    double radius = 0.0;
    if (j > 0) radius += std::abs(dp.off_diagonal[j - 1]) / std::sqrt(dp.mass[j] * dp.mass[j - 1]);
    if (j + 1 < n) radius += std::abs(dp.off_diagonal[j]) / std::sqrt(dp.mass[j] * dp.mass[j + 1]);
    const double center = dp.diagonal[j] / dp.mass[j];
    lo = std::min(lo, center - radius);
    hi = std::max(hi, center + radius);
  }
  const double pad = 1e-10 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return {lo - pad, hi + pad};
}

struct BisectionStep {
  double sigma;
  std::size_t negatives;
};

/// The `count` smallest generalized eigenvalues, ascending, each bracketed to
/// width <= 1e-12 max(1, |eps|). Optionally records every inertia evaluation.
inline std::vector<double> eigenvalues(const DiscreteProblem& dp, std::size_t count,
                                       std::vector<BisectionStep>* trace = nullptr) {
  if (count > dp.size()) throw Error(ErrorKind::DomainError, "requested more eigenvalues than grid nodes");
  const auto [global_lo, global_hi] = gershgorin_bounds(dp);

  std::vector<double> out;
  out.reserve(count);
  double floor = global_lo;
  for (std::size_t index = 0; index < count; ++index) {
    double lo = floor;
    double hi = global_hi;
    for (int iter = 0; iter < 400; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid)) || mid == lo || mid == hi) break;
      const InertiaCount c = inertia(dp, mid);
      if (trace) trace->push_back({c.shift, c.negatives});
      if (c.negatives > index) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out.push_back(0.5 * (lo + hi));
    floor = lo;
  }
  return out;
}

struct EigenResult {
  double epsilon = 0.0;
  std::vector<double> R;  // at the interior nodes, unit norm under the weight
  std::size_t index = 0;
  Provenance provenance = Provenance::Numeric;
  int iterations = 0;
  double residual = 0.0;
};

namespace detail {

// LU factorization with partial pivoting of a general tridiagonal matrix
// (lower dl, diagonal d, upper du); du2 holds the fill-in second superdiagonal.
class TridiagonalLU {
 public:
  TridiagonalLU(std::vector<double> dl, std::vector<double> d, std::vector<double> du)
      : dl_(std::move(dl)), d_(std::move(d)), du_(std::move(du)), du2_(d_.size(), 0.0), swap_(d_.size(), false) {
    const std::size_t n = d_.size();
    double scale = 0.0;
    for (double v : d_) scale = std::max(scale, std::abs(v));
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] == 0.0) d_[i] = tiny;
        const double f = dl_[i] / d_[i];
        dl_[i] = f;
        d_[i + 1] -= f * du_[i];
      } else {
        const double f = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = f;
        const double tmp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = tmp - f * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -f * du_[i + 1];
        }
        swap_[i] = true;
      }
    }
    if (d_[n - 1] == 0.0) d_[n - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swap_[i]) {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - dl_[i] * b[i];
      } else {
        b[i + 1] -= dl_[i] * b[i];
      }
    }
    b[n - 1] /= d_[n - 1];
    if (n >= 2) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t i = n - 2; i-- > 0;) b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
  }

 private:
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<bool> swap_;
};

inline double weighted_norm(const DiscreteProblem& dp, std::span<const double> x) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * x[j] * dp.mass[j];
  return std::sqrt(s * dp.grid.h());
}

}  // namespace detail

/// Weighted inner product sum_j a_j b_j w_j h.
inline double weighted_inner(const DiscreteProblem& dp, std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j] * dp.mass[j];
  return s * dp.grid.h();
}

/// Sign changes between samples above 1e-10 of the peak magnitude.
inline std::size_t count_nodes(std::span<const double> r) {
  double peak = 0.0;
  for (double v : r) peak = std::max(peak, std::abs(v));
  const double floor = 1e-10 * peak;
  std::size_t nodes = 0;
  int last = 0;
  for (double v : r) {
    if (std::abs(v) <= floor) continue;
    const int sign = v > 0.0 ? 1 : -1;
    if (last != 0 && sign != last) ++nodes;
    last = sign;
  }
  return nodes;
}

/// Inverse iteration at the shift `epsilon`. The result has unit weighted
/// norm and its first non-negligible sample is positive.
inline EigenResult eigenfunction(const DiscreteProblem& dp, double epsilon) {
  const std::size_t n = dp.size();
  std::vector<double> dl(n - 1), d(n), du(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = dp.diagonal[j] - epsilon * dp.mass[j];
    if (j + 1 < n) dl[j] = du[j] = dp.off_diagonal[j];
  }
  const detail::TridiagonalLU lu(dl, d, du);

  double k_norm = 0.0, m_norm = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double row = std::abs(dp.diagonal[j]);
    if (j > 0) row += std::abs(dp.off_diagonal[j - 1]);
    if (j + 1 < n) row += std::abs(dp.off_diagonal[j]);
    k_norm = std::max(k_norm, row);
    m_norm = std::max(m_norm, dp.mass[j]);
  }

  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = 1.0 + 0.5 * std::sin(0.37 * static_cast<double>(j) + 0.1);
  {
    const double nrm = detail::weighted_norm(dp, x);
    for (double& v : x) v /= nrm;
  }

  EigenResult out;
  out.epsilon = epsilon;
  for (int iter = 1; iter <= 50; ++iter) {
    std::vector<double> y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = dp.mass[j] * x[j];
    lu.solve(y);
    const double nrm = detail::weighted_norm(dp, y);
    for (double& v : y) v /= nrm;
    if (weighted_inner(dp, x, y) < 0.0)
      for (double& v : y) v = -v;

    double change = 0.0, x_max = 0.0, res = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      change = std::max(change, std::abs(y[j] - x[j]));
      x_max = std::max(x_max, std::abs(y[j]));
      double r = (dp.diagonal[j] - epsilon * dp.mass[j]) * y[j];
      if (j > 0) r += dp.off_diagonal[j - 1] * y[j - 1];
      if (j + 1 < n) r += dp.off_diagonal[j] * y[j + 1];
      res = std::max(res, std::abs(r));
    }
    x = std::move(y);
    out.residual = res / ((k_norm + std::abs(epsilon) * m_norm) * x_max);
    out.iterations = iter;
    if (iter >= 2 && out.residual <= 1e-10 && change <= 1e-12 * x_max) break;
    if (iter == 50)
      throw Error(ErrorKind::SlowConvergence, "inverse iteration did not converge at eps = " + std::to_string(epsilon));
  }

  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  for (double v : x) {
    if (std::abs(v) > 1e-8 * peak) {
      if (v < 0.0)
        for (double& w : x) w = -w;
      break;
    }
  }
  out.R = std::move(x);
  out.index = inertia(dp, epsilon - 5e-11 * std::max(1.0, std::abs(epsilon))).negatives;
  return out;
}

struct SolveOptions {
  std::size_t n_points = 4000;
  std::optional<double> rho_max;  // default: problem.default_rho_max()
  bool extrapolate = true;        // Richardson from h and h/2
  bool adapt_domain = true;       // grow rho_max (fixed h) until the tails decay
  double tail_tolerance = 1e-7;
  int max_extensions = 10;
};

struct NumericSpectrum {
  Grid grid;                            // final base grid
  std::vector<double> eigenvalues;      // extrapolated when enabled
  std::vector<double> base_eigenvalues; // on `grid`
  std::vector<EigenResult> states;      // on `grid`
  bool domain_converged = true;
  int extensions = 0;
  double tail = 0.0;
};

namespace detail {

// Largest |R| sqrt(w) over the outer 10% of the domain, relative to the peak.
inline double tail_ratio(const DiscreteProblem& dp, std::span<const double> r) {
  double peak = 0.0, tail = 0.0;
  const double cut = 0.9 * dp.grid.rho_max;
  for (std::size_t j = 0; j < r.size(); ++j) {
    const double v = std::abs(r[j]) * std::sqrt(dp.mass[j]);
    peak = std::max(peak, v);
    if (dp.grid.node(j + 1) >= cut) tail = std::max(tail, v);
  }
  return peak > 0.0 ? tail / peak : 0.0;
}

}  // namespace detail

/// Lowest `count` eigenpairs. The domain starts at the problem's default
/// rho_max and, when adapt_domain is on, is extended by 25% at fixed spacing
/// until every eigenfunction's tail ratio falls below tail_tolerance.
template <SturmLiouvilleProblem P>
NumericSpectrum solve(const P& problem, std::size_t count, const SolveOptions& opts = {}) {
  const double rho0 = opts.rho_max.value_or(problem.default_rho_max());
  const double h0 = rho0 / static_cast<double>(opts.n_points + 1);

  NumericSpectrum out;
  Grid grid{opts.n_points, rho0};
  for (int ext = 0;; ++ext) {
    const DiscreteProblem dp = discretize(problem, grid);
    out.base_eigenvalues = eigenvalues(dp, count);
    out.states.clear();
    out.tail = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      EigenResult state = eigenfunction(dp, out.base_eigenvalues[i]);
      out.tail = std::max(out.tail, detail::tail_ratio(dp, state.R));
      out.states.push_back(std::move(state));
    }
    out.grid = grid;
    out.extensions = ext;
    if (!opts.adapt_domain || out.tail <= opts.tail_tolerance) break;
    if (ext == opts.max_extensions) {
      out.domain_converged = false;
      break;
    }
    grid.rho_max *= 1.25;
    grid.n_points = static_cast<std::size_t>(std::llround(grid.rho_max / h0)) - 1;
    grid.rho_max = h0 * static_cast<double>(grid.n_points + 1);
  }

  out.eigenvalues = out.base_eigenvalues;
  if (opts.extrapolate) {
    const Grid fine{2 * out.grid.n_points + 1, out.grid.rho_max};
    const auto fine_values = eigenvalues(discretize(problem, fine), count);
    for (std::size_t i = 0; i < count; ++i)
      out.eigenvalues[i] = (4.0 * fine_values[i] - out.base_eigenvalues[i]) / 3.0;
  }
  return out;
}

}  // namespace pdmq
