#pragma once

// Radial equation for a PDM quadrupole particle with radial mass g(rho), and
// its symmetrized weighted Sturm-Liouville form
//
//   -(mu R')' + mu U R = eps rho R,   mu = rho / g.
//
// The eigenvalue enters the expanded equation only through g(rho) eps, so
// after multiplying by mu the weight is rho for every mass profile.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pdmq/error.hpp"
#include "pdmq/model.hpp"

namespace pdmq {

/// g(rho) = eta rho^p.
struct PdmProfile {
  double eta = 1.0;
  int power = 1;

  double g(double rho) const noexcept { return eta * std::pow(rho, power); }
  double dg(double rho) const noexcept { return eta * power * std::pow(rho, power - 1); }
  double d2g(double rho) const noexcept {
    return power == 1 ? 0.0 : eta * power * (power - 1) * std::pow(rho, power - 2);
  }
  // closed-form logarithmic derivatives
  double dg_over_g(double rho) const noexcept { return power / rho; }
  double d2g_over_g(double rho) const noexcept { return power * (power - 1) / (rho * rho); }
};

struct QuantumNumbers {
  int n_rho = 0;
  int m = 0;
  double k_z = 0.0;
};

/// Coefficients of R'' + P R' + C R + g eps R = 0 (the expanded radial
/// equation), assembled term by term. Independent of the symmetrized path.
struct ExpandedCoefficients {
  double first_derivative;  // P(rho)
  double potential;         // C(rho); eps-independent part of R's coefficient
  double eps_factor;        // g(rho)
};

class RadialProblem {
 public:
  RadialProblem(PdmProfile profile, PhysicalParams params, ElectricFieldKind kind, QuantumNumbers qn)
      : profile_(profile), params_(params), kind_(kind), qn_(qn) {}

  const PdmProfile& profile() const noexcept { return profile_; }
  const PhysicalParams& params() const noexcept { return params_; }
  ElectricFieldKind field_kind() const noexcept { return kind_; }
  const QuantumNumbers& quantum_numbers() const noexcept { return qn_; }

  double mu(double rho) const noexcept { return rho / profile_.g(rho); }
  double mu_prime(double rho) const noexcept {
    // d/drho (rho^(1-p) / eta)
    return (1.0 - profile_.power) * std::pow(rho, -profile_.power) / profile_.eta;
  }
  double weight(double rho) const noexcept { return rho; }

  /// eps-independent effective potential U(rho).
  double potential(double rho) const {
    const double gp = profile_.dg_over_g(rho);
    const double gpp = profile_.d2g_over_g(rho);
    const double qb = params_.QB();
    const double m = qn_.m;
    double u = 0.25 * (gpp + gp / rho) - (7.0 / 16.0) * gp * gp;
    u += m * m / (rho * rho) + qb * qb * rho * rho - 2.0 * qb * m + qn_.k_z * qn_.k_z;
    if (kind_ != ElectricFieldKind::None) u += profile_.g(rho) * effective_scalar_potential(params_, kind_, rho);
    return u;
  }

  /// Expanded form, built from g, g', g'' directly.
  ExpandedCoefficients expanded(double rho) const {
    const double g = profile_.g(rho);
    const double g1 = profile_.dg(rho);
    const double g2 = profile_.d2g(rho);
    const double qb = params_.QB();
    const double m = qn_.m;
    const double laplacian_term = -0.25 * (g2 / g + g1 / (rho * g));
    const double gradient_term = (7.0 / 16.0) * (g1 / g) * (g1 / g);
    const double v = kind_ == ElectricFieldKind::None ? 0.0 : effective_scalar_potential(params_, kind_, rho);
    ExpandedCoefficients c{};
    c.first_derivative = -(g1 / g - 1.0 / rho);
    c.potential = laplacian_term + gradient_term - g * v - m * m / (rho * rho) - qb * qb * rho * rho +
                  2.0 * qb * m - qn_.k_z * qn_.k_z;
    c.eps_factor = g;
    return c;
  }

  /// |l~| : sqrt(m^2 + 1/16) for p = 1, sqrt(m^2 + 1/4) for p = 2.
  double ell_tilde() const noexcept {
    const double m2 = static_cast<double>(qn_.m) * qn_.m;
    return profile_.power == 1 ? std::sqrt(m2 + 1.0 / 16.0) : std::sqrt(m2 + 0.25);
  }

  /// Leading power s of R ~ rho^s at the origin.
  double origin_exponent() const noexcept {
    return profile_.power == 1 ? ell_tilde() + 0.5 : ell_tilde() + 1.0;
  }

  /// Gaussian decay scale 12 / sqrt(Q B0).
  double default_rho_max() const noexcept { return 12.0 / std::sqrt(params_.QB()); }

 private:
  PdmProfile profile_;
  PhysicalParams params_;
  ElectricFieldKind kind_;
  QuantumNumbers qn_;
};

inline RadialProblem assemble(const PdmProfile& profile, const PhysicalParams& params, ElectricFieldKind kind,
                              const QuantumNumbers& qn) {
  if (profile.power != 1 && profile.power != 2)
    throw Error(ErrorKind::UnsupportedProfile,
                "mass power must be 1 or 2 (got " + std::to_string(profile.power) + ")");
  if (qn.n_rho < 0) throw Error(ErrorKind::InvalidParams, "n_rho must be non-negative");
  params.validate();
  if (!(profile.eta > 0.0)) throw Error(ErrorKind::InvalidParams, "eta must be positive");
  return RadialProblem(profile, params, kind, qn);
}

/// Uniform grid rho_j = j h on (0, rho_max], j = 1..N, h = rho_max / (N + 1).
/// Dirichlet nodes sit at j = 0 and j = N + 1.
struct Grid {
  std::size_t n_points = 4000;
  double rho_max = 12.0;

  double h() const noexcept { return rho_max / static_cast<double>(n_points + 1); }
  double node(std::size_t j) const noexcept { return static_cast<double>(j) * h(); }  // j in 1..N

  std::vector<double> nodes() const {
    std::vector<double> out(n_points);
    for (std::size_t j = 0; j < n_points; ++j) out[j] = node(j + 1);
    return out;
  }
};

enum class ResidualForm { Symmetric, Expanded };

namespace detail {

template <class Problem>
std::vector<double> pointwise_residual(const Problem& problem, const Grid& grid, double eps,
                                       std::span<const double> r_samples, ResidualForm form) {
  const std::size_t n = r_samples.size();
  if (n != grid.n_points) throw Error(ErrorKind::GridTooCoarse, "sample count does not match the grid");
  if (n < 5) throw Error(ErrorKind::GridTooCoarse, "residual needs at least 5 interior samples");

  // Differentiate the regular factor phi = R / rho^s, with s the origin
  // exponent, using 5-point centered stencils; the rho^s factor is
  // differentiated exactly.
  const double s = problem.origin_exponent();
  const double h = grid.h();
  std::vector<double> phi(n);
  for (std::size_t j = 0; j < n; ++j) phi[j] = r_samples[j] / std::pow(grid.node(j + 1), s);

  std::vector<double> out(n, 0.0);
  for (std::size_t j = 2; j + 2 < n; ++j) {
    const double rho = grid.node(j + 1);
    const double d1 = (-phi[j + 2] + 8.0 * phi[j + 1] - 8.0 * phi[j - 1] + phi[j - 2]) / (12.0 * h);
    const double d2 =
        (-phi[j + 2] + 16.0 * phi[j + 1] - 30.0 * phi[j] + 16.0 * phi[j - 1] - phi[j - 2]) / (12.0 * h * h);
    const double rs = std::pow(rho, s);
    const double f = phi[j];
    const double r0 = r_samples[j];
    const double r1 = rs * (d1 + s * f / rho);
    const double r2 = rs * (d2 + 2.0 * s * d1 / rho + s * (s - 1.0) * f / (rho * rho));
    if (form == ResidualForm::Symmetric) {
      const double mu = problem.mu(rho);
      out[j] = -mu * r2 - problem.mu_prime(rho) * r1 + mu * problem.potential(rho) * r0 -
               eps * problem.weight(rho) * r0;
    } else {
      const auto c = problem.expanded(rho);
      out[j] = r2 + c.first_derivative * r1 + c.potential * r0 + c.eps_factor * eps * r0;
    }
  }
  return out;
}

}  // namespace detail

/// Pointwise residual of -(mu R')' + mu U R - eps rho R at the grid nodes
/// (zero where the stencil does not fit).
inline std::vector<double> pointwise_residual(const RadialProblem& problem, const Grid& grid, double eps,
                                              std::span<const double> r_samples,
                                              ResidualForm form = ResidualForm::Symmetric) {
  return detail::pointwise_residual(problem, grid, eps, r_samples, form);
}

/// max_j |-(mu R')' + mu U R - eps rho R| / (1 + |eps rho R|) over the nodes
/// where the stencil fits.
inline double residual(const RadialProblem& problem, const Grid& grid, double eps,
                       std::span<const double> r_samples) {
  const auto res = pointwise_residual(problem, grid, eps, r_samples, ResidualForm::Symmetric);
  double worst = 0.0;
  for (std::size_t j = 2; j + 2 < r_samples.size(); ++j) {
    const double scale = 1.0 + std::abs(eps * problem.weight(grid.node(j + 1)) * r_samples[j]);
    worst = std::max(worst, std::abs(res[j]) / scale);
  }
  return worst;
}

}  // namespace pdmq
