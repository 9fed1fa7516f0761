#pragma once

// Physical parameters, the diagonal quadrupole tensor and the effective
// fields seen by a neutral particle with an electric quadrupole moment in the
// field B = (B0 rho^2 / 2) z-hat. Units: hbar = 2 m0 = c = 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "pdmq/error.hpp"

namespace pdmq {

struct PhysicalParams {
  double Q = 1.0;       // quadrupole strength
  double B0 = 1.0;      // magnetic amplitude
  double eta = 1.0;     // mass scale
  double lambda = 0.0;  // electric amplitude

  double QB() const noexcept { return Q * B0; }

  /// Throws InvalidParams unless Q*B0 > 0 and eta > 0. The field-algebra
  /// operations below accept any values; solvers call this first.
  void validate() const {
    if (!std::isfinite(Q) || !std::isfinite(B0) || !std::isfinite(eta) || !std::isfinite(lambda))
      throw Error(ErrorKind::InvalidParams, "parameters must be finite");
    if (!(Q * B0 > 0.0))
      throw Error(ErrorKind::InvalidParams, "Q*B0 must be positive (got " + std::to_string(Q * B0) + ")");
    if (!(eta > 0.0))
      throw Error(ErrorKind::InvalidParams, "eta must be positive (got " + std::to_string(eta) + ")");
  }
};

/// Diagonal quadrupole tensor diag(Q, Q, -2Q) in cylindrical (rho, phi, z).
class QuadrupoleTensor {
 public:
  using Matrix = std::array<std::array<double, 3>, 3>;

  explicit QuadrupoleTensor(double q) noexcept : diagonal_{q, q, -2.0 * q} {}

  /// Accepts only matrices of the form diag(Q, Q, -2Q).
  static QuadrupoleTensor from_matrix(const Matrix& m) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j && m[i][j] != 0.0)
          throw Error(ErrorKind::InvalidParams, "non-diagonal quadrupole tensors are not supported");
    const double q = m[0][0];
    if (m[1][1] != q || m[2][2] != -2.0 * q)
      throw Error(ErrorKind::InvalidParams, "diagonal must be (Q, Q, -2Q)");
    return QuadrupoleTensor(q);
  }

  double rho_rho() const noexcept { return diagonal_[0]; }
  double phi_phi() const noexcept { return diagonal_[1]; }
  double z_z() const noexcept { return diagonal_[2]; }
  const std::array<double, 3>& diagonal() const noexcept { return diagonal_; }

  double trace() const noexcept { return diagonal_[0] + diagonal_[1] + diagonal_[2]; }
  bool is_symmetric() const noexcept { return true; }

 private:
  std::array<double, 3> diagonal_;
};

enum class ElectricFieldKind { None, CoulombType, LinearType };

inline const char* to_string(ElectricFieldKind kind) {
  switch (kind) {
    case ElectricFieldKind::None: return "none";
    case ElectricFieldKind::CoulombType: return "coulomb";
    case ElectricFieldKind::LinearType: return "linear";
  }
  return "unknown";
}

/// Radial component E_rho(rho): lambda/rho (Coulomb-type) or lambda*rho/2
/// (linear-type). Both are static and curl-free.
inline double radial_electric_field(ElectricFieldKind kind, double lambda, double rho) {
  switch (kind) {
    case ElectricFieldKind::None: return 0.0;
    case ElectricFieldKind::CoulombType:
      if (rho <= 0.0) throw Error(ErrorKind::DomainError, "Coulomb-type field is singular at rho = 0");
      return lambda / rho;
    case ElectricFieldKind::LinearType: return 0.5 * lambda * rho;
  }
  return 0.0;
}

/// dE_rho/drho, closed form.
inline double radial_electric_field_derivative(ElectricFieldKind kind, double lambda, double rho) {
  switch (kind) {
    case ElectricFieldKind::None: return 0.0;
    case ElectricFieldKind::CoulombType:
      if (rho <= 0.0) throw Error(ErrorKind::DomainError, "Coulomb-type field is singular at rho = 0");
      return -lambda / (rho * rho);
    case ElectricFieldKind::LinearType: return 0.5 * lambda;
  }
  return 0.0;
}

/// Azimuthal component of A_eff = Q x B; the rho and z components vanish.
inline double effective_vector_potential(const PhysicalParams& p, double rho) {
  if (rho < 0.0) throw Error(ErrorKind::DomainError, "rho must be non-negative");
  return -p.Q * p.B0 * rho;
}

/// Axial component of B_eff = curl A_eff.
inline double effective_magnetic_field(const PhysicalParams& p) noexcept { return -2.0 * p.Q * p.B0; }

/// Divergence of the purely azimuthal, phi-independent A_eff.
inline double effective_vector_potential_divergence(const PhysicalParams&, double) noexcept { return 0.0; }

/// V_eff = -Q_vec . E, evaluated as Q times the radial derivative of E_rho.
/// Gives +Q lambda / rho^2 for the Coulomb-type field and -Q lambda / 2 for
/// the linear-type one.
inline double effective_scalar_potential(const PhysicalParams& p, ElectricFieldKind kind, double rho) {
  if (kind == ElectricFieldKind::CoulombType && rho <= 0.0)
    throw Error(ErrorKind::DomainError, "Coulomb-type potential sampled at rho = 0");
  if (kind == ElectricFieldKind::None) return 0.0;
  return -p.Q * radial_electric_field_derivative(kind, p.lambda, rho);
}

struct EffectiveFields {
  double A_eff_phi;  // at the requested radius
  double B_eff_z;
  double V_eff;      // at the requested radius
};

inline EffectiveFields effective_fields(const PhysicalParams& p, ElectricFieldKind kind, double rho) {
  return {effective_vector_potential(p, rho), effective_magnetic_field(p), effective_scalar_potential(p, kind, rho)};
}

struct LandauReport {
  bool uniform;
  double value;   // mean of the sampled curl
  double spread;  // max - min over the samples
};

/// Samples B_z = (1/rho) d(rho A_phi)/drho by centered differences at
/// several radii and checks that it is the constant -2 Q B0.
inline LandauReport landau_condition_check(const PhysicalParams& p,
                                           std::span<const double> radii = {}) {
  static constexpr std::array<double, 8> kDefaultRadii{0.05, 0.3, 0.7, 1.0, 1.9, 3.4, 6.0, 11.0};
  if (radii.empty()) radii = kDefaultRadii;

  const double expected = effective_magnetic_field(p);
  const double tol = expected == 0.0 ? 1e-12 : 1e-10 * std::abs(expected);

  std::vector<double> samples;
  samples.reserve(radii.size());
  for (double rho : radii) {
    if (!(rho > 0.0)) throw Error(ErrorKind::DomainError, "sample radii must be positive");
    const double h = 1e-3 * rho;
    const double flux_plus = (rho + h) * effective_vector_potential(p, rho + h);
    const double flux_minus = (rho - h) * effective_vector_potential(p, rho - h);
    samples.push_back((flux_plus - flux_minus) / (2.0 * h) / rho);
  }

  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());

  LandauReport report{true, mean, *hi - *lo};
  if (report.spread > tol || std::abs(mean - expected) > tol) {
    throw Error(ErrorKind::NonUniformField,
                "effective magnetic field varies across samples (spread " + std::to_string(report.spread) + ")");
  }
  return report;
}

}  // namespace pdmq
