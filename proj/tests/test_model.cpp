#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>

#include "pdmq/model.hpp"

using namespace pdmq;

TEST(EffectiveFields, VectorPotentialValues) {
  EXPECT_DOUBLE_EQ(effective_vector_potential({1, 2, 1, 0}, 3.0), -6.0);
  EXPECT_DOUBLE_EQ(effective_vector_potential({1, 1, 1, 0}, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(effective_vector_potential({2, 0.5, 1, 0}, 1.0), -1.0);
  EXPECT_THROW(effective_vector_potential({1, 1, 1, 0}, -1.0), Error);
}

TEST(EffectiveFields, MagneticField) {
  EXPECT_DOUBLE_EQ(effective_magnetic_field({1, 2, 1, 0}), -4.0);
  EXPECT_DOUBLE_EQ(effective_magnetic_field({0, 5, 1, 0}), 0.0);
  EXPECT_DOUBLE_EQ(effective_magnetic_field({1, 1, 1, 0}), -2.0);
}

TEST(EffectiveFields, ScalarPotentialValues) {
  EXPECT_DOUBLE_EQ(effective_scalar_potential({2, 1, 1, 3}, ElectricFieldKind::CoulombType, 1.0), 6.0);
  for (double rho : {0.1, 1.0, 7.5})
    EXPECT_DOUBLE_EQ(effective_scalar_potential({2, 1, 1, 3}, ElectricFieldKind::LinearType, rho), -3.0);
  EXPECT_DOUBLE_EQ(effective_scalar_potential({5, 1, 1, 0}, ElectricFieldKind::CoulombType, 0.1), 0.0);
  EXPECT_THROW(effective_scalar_potential({1, 1, 1, 1}, ElectricFieldKind::CoulombType, 0.0), Error);
}

TEST(EffectiveFields, CoulombGauge) {
  for (double rho : {0.0, 0.5, 3.0}) EXPECT_EQ(effective_vector_potential_divergence({1, 1, 1, 0}, rho), 0.0);
}

TEST(Landau, Examples) {
  const auto a = landau_condition_check({1, 1, 1, 0});
  EXPECT_TRUE(a.uniform);
  EXPECT_NEAR(a.value, -2.0, 1e-12);
  const auto b = landau_condition_check({0, 1, 1, 0});
  EXPECT_TRUE(b.uniform);
  EXPECT_EQ(b.value, 0.0);
  const auto c = landau_condition_check({3, 2, 1, 0});
  EXPECT_TRUE(c.uniform);
  EXPECT_NEAR(c.value, -12.0, 1e-11);
}

TEST(Landau, UniformOverRandomSweep) {
  std::mt19937_64 rng(20261014);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const PhysicalParams p{u(rng), u(rng), 1.0, 0.0};
    const auto rep = landau_condition_check(p);
    EXPECT_TRUE(rep.uniform) << "Q=" << p.Q << " B0=" << p.B0;
    EXPECT_NEAR(rep.value, -2.0 * p.Q * p.B0, 1e-9 * std::max(1.0, std::abs(p.Q * p.B0)));
  }
}

TEST(Quadrupole, TraceIsZero) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(QuadrupoleTensor(u(rng)).trace(), 0.0);
}

TEST(Quadrupole, RejectsNonDiagonal) {
  std::array<std::array<double, 3>, 3> ok{{{1, 0, 0}, {0, 1, 0}, {0, 0, -2}}};
  EXPECT_NO_THROW(QuadrupoleTensor::from_matrix(ok));
  auto off = ok;
  off[0][1] = 0.5;
  EXPECT_THROW(QuadrupoleTensor::from_matrix(off), Error);
  auto bad = ok;
  bad[2][2] = -1.0;
  EXPECT_THROW(QuadrupoleTensor::from_matrix(bad), Error);
}

TEST(Params, Validation) {
  EXPECT_NO_THROW(PhysicalParams({1, 1, 1, 0}).validate());
  EXPECT_NO_THROW(PhysicalParams({-1, -2, 1, 0}).validate());
  EXPECT_THROW(PhysicalParams({1, -1, 1, 0}).validate(), Error);
  EXPECT_THROW(PhysicalParams({0, 1, 1, 0}).validate(), Error);
  EXPECT_THROW(PhysicalParams({1, 1, 0, 0}).validate(), Error);
  try {
    PhysicalParams({1, -1, 1, 0}).validate();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParams);
  }
}

TEST(EffectiveFields, RadialScalingLaws) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(0.05, 20.0);
  const PhysicalParams p{1.5, 1.0, 1.0, 0.7};
  const double c0 = effective_scalar_potential(p, ElectricFieldKind::CoulombType, 1.0);
  const double l0 = effective_scalar_potential(p, ElectricFieldKind::LinearType, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double rho = r(rng);
    EXPECT_NEAR(effective_scalar_potential(p, ElectricFieldKind::CoulombType, rho) * rho * rho, c0, 1e-13 * std::abs(c0));
    EXPECT_EQ(effective_scalar_potential(p, ElectricFieldKind::LinearType, rho), l0);
  }
}

TEST(EffectiveFields, ScalarPotentialMatchesFieldDerivative) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> r(0.2, 10.0);
  const PhysicalParams p{0.8, 1.0, 1.0, 2.5};
  for (auto kind : {ElectricFieldKind::CoulombType, ElectricFieldKind::LinearType}) {
    for (int i = 0; i < 50; ++i) {
      const double rho = r(rng);
      const double h = 1e-4 * rho;
      // fourth-order central difference of the field profile
      const auto e = [&](double x) { return radial_electric_field(kind, p.lambda, x); };
      const double de = (-e(rho + 2 * h) + 8 * e(rho + h) - 8 * e(rho - h) + e(rho - 2 * h)) / (12 * h);
      const double v = effective_scalar_potential(p, kind, rho);
      EXPECT_NEAR(v, -p.Q * de, 1e-8 * std::abs(v));
    }
  }
}

TEST(EffectiveFields, NoFieldIsZero) {
  EXPECT_EQ(effective_scalar_potential({1, 1, 1, 3}, ElectricFieldKind::None, 2.0), 0.0);
}
