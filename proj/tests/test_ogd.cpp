#include <cmath>

#include <gtest/gtest.h>

#include "simbo/ogd.hpp"
#include "simbo/problems.hpp"

using namespace simbo;

TEST(OgdStep, ZeroGradientIsAFixedPoint) {
  const Eigen::Vector3d x(1.5, -2.0, 0.25);
  EXPECT_EQ(ogd_step(x, Eigen::Vector3d::Zero(), 0.7), Eigen::VectorXd(x));
}

TEST(OgdStep, Arithmetic) {
  const Eigen::VectorXd x = ogd_step(Eigen::Vector2d(1.0, 1.0), Eigen::Vector2d(1.0, 1.0), 0.2);
  EXPECT_NEAR(x(0), 0.8, 1e-15);
  EXPECT_NEAR(x(1), 0.8, 1e-15);
}

TEST(OgdStep, RejectsBadInput) {
  EXPECT_THROW(ogd_step(Eigen::Vector2d::Zero(), Eigen::Vector3d::Zero(), 0.1), std::invalid_argument);
  EXPECT_THROW(ogd_step(Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(), 0.0), std::invalid_argument);
}

TEST(ContractionFactor, Examples) {
  EXPECT_NEAR(contraction_factor(1.0 / 3.0, 1.0, 5.0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(contraction_factor(2.0 / 6.0, 1.0, 5.0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(contraction_factor(0.39, 1.0, 5.0), 0.95, 1e-14);
  EXPECT_NEAR(OgdConfig::optimal(1.0, 5.0).h, 1.0 / 3.0, 1e-15);
}

TEST(ContractionFactor, RejectsStepOutsideStableRange) {
  EXPECT_THROW(contraction_factor(0.0, 1.0, 5.0), std::invalid_argument);
  EXPECT_THROW(contraction_factor(0.4, 1.0, 5.0), std::invalid_argument);
  EXPECT_THROW(contraction_factor(-0.1, 1.0, 5.0), std::invalid_argument);
}

TEST(OgdRun, SineTrackingSettlesInABoundedBand) {
  const Problem p = make_quadratic(15, 1.0, 5.0, 0, Signal{Sine{1.0}});
  Eigen::VectorXd x = Eigen::VectorXd::Zero(15);
  double lo = 1e300, hi = 0.0;
  for (long k = 0; k < 500; ++k) {
    if (k >= 100) {
      const double err = (x - minimizer(p, k)).norm();
      lo = std::min(lo, err);
      hi = std::max(hi, err);
    }
    x = ogd_step(x, gradient(p, x, k), 1.0 / 3.0);
  }
  EXPECT_GE(hi, 0.05);
  EXPECT_LE(hi, 1.0);
  EXPECT_GT(lo, 0.0);
}

TEST(OgdRun, PerStepBoundHoldsOnEveryStep) {
  const Problem p = make_quadratic(15, 1.0, 5.0, 3, Signal{Sine{1.0}});
  const double h = 1.0 / 3.0;
  const double rho = contraction_factor(h, 1.0, 5.0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(15);
  for (long k = 0; k < 500; ++k) {
    const Eigen::VectorXd xs = minimizer(p, k), xs_next = minimizer(p, k + 1);
    const Eigen::VectorXd x_next = ogd_step(x, gradient(p, x, k), h);
    EXPECT_LE((x_next - xs_next).norm(), rho * (x - xs).norm() + (xs - xs_next).norm() + 1e-9) << "k=" << k;
    x = x_next;
  }
}

TEST(OgdRun, ConstantSignalConvergesGeometrically) {
  const Problem p = make_quadratic(15, 1.0, 5.0, 8, Signal{Constant{make_linear_term(15, 8)}});
  const double rho = contraction_factor(1.0 / 3.0, 1.0, 5.0);
  const Eigen::VectorXd xs = minimizer(p, 0);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(15);
  const double e0 = (x - xs).norm();
  for (long k = 0; k < 120; ++k) {
    EXPECT_LE((x - xs).norm(), std::pow(rho, static_cast<double>(k)) * e0 + 1e-9) << "k=" << k;
    x = ogd_step(x, gradient(p, x, k), 1.0 / 3.0);
  }
  EXPECT_LT((x - xs).norm(), 1e-12);
}
