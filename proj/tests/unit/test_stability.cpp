#include "omm/config.hpp"
#include "omm/errors.hpp"
#include "omm/stability.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

namespace omm {
namespace {

DriftMatrix drift_for(const ParameterSet& p) {
  Config c;
  c.params = p;
  return build_drift(effective_from_config(c));
}

ParameterSet zero_coupling() {
  ParameterSet p = ParameterSet::baseline();
  p.set("G0", 0.0);
  p.set("G_m", 0.0);
  return p;
}

TEST(Stability, ZeroCouplingIsStable) {
  const DriftMatrix a = drift_for(zero_coupling());
  const StabilityReport s = is_stable(a);
  EXPECT_TRUE(s.stable);
  // Phonon blocks [[0, w], [-w, -g]] decay at g/2, the slowest rate here.
  EXPECT_NEAR(s.spectral_abscissa, -constants::two_pi * 100.0 / 2.0, 1e-6);
  EXPECT_TRUE(routh_hurwitz(a).stable);
  EXPECT_TRUE(testing::exact_routh(a.matrix()).stable);
}

TEST(Stability, BaselineIsUnstable) {
  const DriftMatrix a = drift_for(ParameterSet::baseline());
  const StabilityReport s = is_stable(a);
  EXPECT_FALSE(s.stable);
  EXPECT_NEAR(s.spectral_abscissa / constants::two_pi, 462385.0, 500.0);
  const RouthReport r = routh_hurwitz(a);
  EXPECT_FALSE(r.stable);
  EXPECT_EQ(r.sign_changes, 2);
  const testing::ExactRouth x = testing::exact_routh(a.matrix());
  EXPECT_FALSE(x.stable);
  EXPECT_EQ(x.sign_changes, 2);
}

TEST(Stability, OptomechanicalCouplingAloneIsStable) {
  ParameterSet p = ParameterSet::baseline();
  p.set("G_m", 0.0);
  const DriftMatrix a = drift_for(p);
  EXPECT_TRUE(is_stable(a).stable);
  EXPECT_TRUE(routh_hurwitz(a).stable);
}

TEST(Stability, StrongMagnomechanicalDriveIsUnstable) {
  ParameterSet p = ParameterSet::baseline();
  p.set("G0", 1e6);
  p.set("G_m1", 6e6);
  const DriftMatrix a = drift_for(p);
  EXPECT_FALSE(is_stable(a).stable);
  EXPECT_FALSE(routh_hurwitz(a).stable);
}

TEST(Stability, MarginalCountsAsUnstable) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = -1.0;
  const DriftMatrix a = make_drift(m);
  EXPECT_FALSE(is_stable(a).stable);
  const RouthReport r = routh_hurwitz(a);
  EXPECT_FALSE(r.stable);
  EXPECT_TRUE(r.zero_pivot);
}

TEST(Routh, KnownPolynomials) {
  // (s + 1)(s + 2)(s + 3)
  EXPECT_TRUE(routh_hurwitz(std::vector<long double>{6, 11, 6, 1}).stable);
  // s^2 - 1
  EXPECT_FALSE(routh_hurwitz(std::vector<long double>{-1, 0, 1}).stable);
  // s^3 + s^2 + 2s + 8: two right-half-plane roots
  const RouthReport r = routh_hurwitz(std::vector<long double>{8, 2, 1, 1});
  EXPECT_FALSE(r.stable);
  EXPECT_EQ(r.sign_changes, 2);
  EXPECT_THROW(routh_hurwitz(std::vector<long double>{1, 0}), Error);
}

TEST(Routh, CharacteristicPolynomialMatchesSpectrum) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    const DriftMatrix a = build_drift(testing::random_effective(rng));
    const std::vector<long double> p = characteristic_polynomial(a.matrix());
    ASSERT_EQ(p.size(), 11u);
    EXPECT_EQ(p.back(), 1.0L);
    const StabilityReport s = is_stable(a);
    for (const std::complex<double>& lambda : s.eigenvalues) {
      std::complex<long double> acc = 0;
      std::complex<long double> pow = 1;
      long double mag = 0;
      for (long double c : p) {
        acc += c * pow;
        mag += std::fabs(c) * std::abs(pow);
        pow *= std::complex<long double>(lambda);
      }
      EXPECT_LT(std::abs(acc) / mag, 1e-10);
    }
  }
}

double stability_threshold_gm1() {
  // G_m2 = 0 keeps the G_m1 = 0 end stable; bisect on the eigenvalue test.
  ParameterSet p = ParameterSet::baseline();
  p.set("G_m2", 0.0);
  double lo = 0.0;
  double hi = 2e6;
  p.set("G_m1", hi);
  EXPECT_FALSE(is_stable(drift_for(p)).stable);
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    p.set("G_m1", mid);
    (is_stable(drift_for(p)).stable ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

TEST(Routh, AgreesWithEigenvaluesAroundThreshold) {
  const double threshold = stability_threshold_gm1();
  EXPECT_GT(threshold, 1e3);
  EXPECT_LT(threshold, 1e5);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  ParameterSet p = ParameterSet::baseline();
  p.set("G_m2", 0.0);
  int stable = 0;
  for (int i = 0; i < 100; ++i) {
    double f = u(rng);
    if (std::abs(f - 1.0) < 1e-6) f = 1.0 + 1e-3;
    p.set("G_m1", threshold * f);
    const DriftMatrix a = drift_for(p);
    const bool eig = is_stable(a).stable;
    const bool routh = routh_hurwitz(a).stable;
    const bool exact = testing::exact_routh(a.matrix()).stable;
    EXPECT_EQ(eig, routh) << "G_m1 = " << threshold * f;
    EXPECT_EQ(eig, exact) << "G_m1 = " << threshold * f;
    EXPECT_EQ(eig, f < 1.0);
    stable += eig;
  }
  EXPECT_GT(stable, 20);
  EXPECT_LT(stable, 80);
}

TEST(Routh, AgreesOnRandomDrifts) {
  std::mt19937_64 rng(17);
  int stable = 0;
  for (int i = 0; i < 100; ++i) {
    const DriftMatrix a = build_drift(testing::random_effective(rng, 1.2));
    const bool eig = is_stable(a).stable;
    EXPECT_EQ(eig, routh_hurwitz(a).stable) << i;
    EXPECT_EQ(eig, testing::exact_routh(a.matrix()).stable) << i;
    stable += eig;
  }
  EXPECT_GT(stable, 0);
  EXPECT_LT(stable, 100);
}

}  // namespace
}  // namespace omm
