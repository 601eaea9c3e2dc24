#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>
#include <gsl/gsl_eigen.h>
#include <gsl/gsl_matrix.h>
#include <gsl/gsl_sort_vector.h>

#include "simbo/problems.hpp"
#include "simbo/random.hpp"
#include "simbo/rls.hpp"

using namespace simbo;

namespace {

// Eigenvalues by GSL's symmetric QR solver, sorted ascending. Kept apart from
// Eigen so that the library is not checked against itself.
std::vector<double> gsl_symmetric_eigenvalues(const Eigen::MatrixXd& A) {
  const auto n = static_cast<std::size_t>(A.rows());
  gsl_matrix* m = gsl_matrix_alloc(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gsl_matrix_set(m, i, j, A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  gsl_vector* eval = gsl_vector_alloc(n);
  gsl_eigen_symm_workspace* w = gsl_eigen_symm_alloc(n);
  gsl_eigen_symm(m, eval, w);
  gsl_sort_vector(eval);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = gsl_vector_get(eval, i);
  gsl_eigen_symm_free(w);
  gsl_vector_free(eval);
  gsl_matrix_free(m);
  return out;
}

Eigen::VectorXd b_bar_of(Eigen::Index n) { return make_linear_term(n, 11); }

std::vector<Signal> stationary_signals(Eigen::Index n) {
  return {Signal{Sine{1.0}}, Signal{Ramp{b_bar_of(n)}}, Signal{SineRamp{1.0, b_bar_of(n)}},
          Signal{SineSquared{10.0}}, Signal{Constant{b_bar_of(n)}}};
}

// max_k || b_{k+m} + sum_i d_i b_{k+i} ||_inf over the first `count` windows
double recurrence_residual(const Signal& s, const InternalModel& model, double Ts, Eigen::Index n, long count) {
  const Eigen::Index m = model.order();
  double worst = 0.0;
  for (long k = 0; k < count; ++k) {
    Eigen::VectorXd acc = signal_value(s, k + m, Ts, n);
    for (Eigen::Index i = 0; i < m; ++i) acc += model.d(i) * signal_value(s, k + i, Ts, n);
    worst = std::max(worst, acc.lpNorm<Eigen::Infinity>());
  }
  return worst;
}

}  // namespace

TEST(MakeQuadratic, ScalarIntervalForcesTheOnlyEigenvalue) {
  const auto p = make_quadratic(1, 2.0, 2.0, 123);
  ASSERT_EQ(p.A.rows(), 1);
  EXPECT_NEAR(p.A(0, 0), 2.0, 1e-15);
}

TEST(MakeQuadratic, PaperSizedProblemHitsBothEigenvalueBounds) {
  const auto p = make_quadratic(15, 1.0, 5.0, 0);
  EXPECT_LT((p.A - p.A.transpose()).norm(), 1e-15);
  const auto eig = gsl_symmetric_eigenvalues(p.A);
  EXPECT_NEAR(eig.front(), 1.0, 1e-10);
  EXPECT_NEAR(eig.back(), 5.0, 1e-10);
}

TEST(MakeQuadratic, SpectrumMatchesIndependentEigensolver) {
  const auto p = make_quadratic(3, 1.0, 5.0, 7);
  // The generator pins the endpoints and then draws the interior eigenvalue
  // as its first uniform variate; replay that draw.
  Rng replay(7);
  std::vector<double> expected{1.0, 5.0, replay.uniform(1.0, 5.0)};
  std::sort(expected.begin(), expected.end());
  const auto eig = gsl_symmetric_eigenvalues(p.A);
  ASSERT_EQ(eig.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(eig[i], expected[i], 1e-10) << "eigenvalue " << i;
}

TEST(MakeQuadratic, RejectsInvalidBounds) {
  EXPECT_THROW(make_quadratic(4, 0.0, 5.0, 1), std::invalid_argument);
  EXPECT_THROW(make_quadratic(4, -1.0, 5.0, 1), std::invalid_argument);
  EXPECT_THROW(make_quadratic(4, 6.0, 5.0, 1), std::invalid_argument);
  EXPECT_THROW(make_quadratic(0, 1.0, 5.0, 1), std::invalid_argument);
}

TEST(MakeQuadratic, IsBitReproducibleInTheSeed) {
  const auto a = make_quadratic(15, 1.0, 5.0, 42);
  const auto b = make_quadratic(15, 1.0, 5.0, 42);
  const auto c = make_quadratic(15, 1.0, 5.0, 43);
  EXPECT_TRUE((a.A.array() == b.A.array()).all());
  EXPECT_FALSE((a.A.array() == c.A.array()).all());
  EXPECT_TRUE((make_linear_term(15, 42).array() == make_linear_term(15, 42).array()).all());
}

TEST(MakeQuadratic, LinearTermEntriesStayAwayFromZero) {
  const Eigen::VectorXd b = make_linear_term(1000, 5);
  EXPECT_GE(b.minCoeff(), 0.5);
  EXPECT_LE(b.maxCoeff(), 1.5);
}

TEST(SignalValue, SineStartsAtZero) {
  const Eigen::VectorXd b = signal_value(Signal{Sine{1.0}}, 0, 0.1, 2);
  EXPECT_EQ(b, Eigen::Vector2d::Zero());
}

TEST(SignalValue, RampAtUnitTimeEqualsDirection) {
  const Eigen::VectorXd dir = b_bar_of(4);
  const Eigen::VectorXd b = signal_value(Signal{Ramp{dir}}, 10, 0.1, 4);
  EXPECT_LT((b - dir).lpNorm<Eigen::Infinity>(), 1e-15);
}

TEST(SignalValue, SineSquaredScalar) {
  const Eigen::VectorXd b = signal_value(Signal{SineSquared{10.0}}, 1, 0.1, 1);
  EXPECT_NEAR(b(0), 0.70807342, 1e-8);
}

TEST(SignalValue, SineRampIsTheSumOfItsParts) {
  const Eigen::VectorXd dir = b_bar_of(3);
  for (long k : {0L, 7L, 250L}) {
    const Eigen::VectorXd sum = signal_value(Signal{Sine{1.0}}, k, 0.1, 3) + signal_value(Signal{Ramp{dir}}, k, 0.1, 3);
    EXPECT_LT((signal_value(Signal{SineRamp{1.0, dir}}, k, 0.1, 3) - sum).norm(), 1e-13);
  }
}

TEST(SignalValue, SwitchUsesAbsoluteStepOnEitherSide) {
  const Eigen::VectorXd dir = b_bar_of(2);
  const Signal s = make_switch(Signal{Ramp{dir}}, Signal{Sine{1.0}}, 50);
  EXPECT_EQ(signal_value(s, 49, 0.1, 2), signal_value(Signal{Ramp{dir}}, 49, 0.1, 2));
  EXPECT_EQ(signal_value(s, 50, 0.1, 2), signal_value(Signal{Sine{1.0}}, 50, 0.1, 2));
  EXPECT_EQ(signal_value(s, 77, 0.1, 2), signal_value(Signal{Sine{1.0}}, 77, 0.1, 2));
}

TEST(SignalValue, RejectsDirectionOfWrongLength) {
  EXPECT_THROW(signal_value(Signal{Ramp{b_bar_of(3)}}, 1, 0.1, 4), std::invalid_argument);
  EXPECT_THROW(signal_value(Signal{Constant{b_bar_of(2)}}, 1, 0.1, 4), std::invalid_argument);
}

TEST(TrueDenominator, RampIsDoubleIntegrator) {
  const auto model = true_denominator(Signal{Ramp{b_bar_of(3)}}, 0.1);
  ASSERT_EQ(model.order(), 2);
  EXPECT_DOUBLE_EQ(model.d(0), 1.0);
  EXPECT_DOUBLE_EQ(model.d(1), -2.0);
  EXPECT_EQ(recurrence_residual(Signal{Ramp{Eigen::VectorXd::Ones(1)}}, model, 1.0, 1, 100), 0.0);
}

TEST(TrueDenominator, SineIsOscillator) {
  const auto model = true_denominator(Signal{Sine{1.0}}, 0.1);
  ASSERT_EQ(model.order(), 2);
  EXPECT_DOUBLE_EQ(model.d(0), 1.0);
  EXPECT_NEAR(model.d(1), -1.99000833, 1e-8);
  EXPECT_LT(recurrence_residual(Signal{Sine{1.0}}, model, 0.1, 1, 100), 1e-10);
}

TEST(TrueDenominator, SineSquaredMatchesHandExpandedProduct) {
  const auto model = true_denominator(Signal{SineSquared{10.0}}, 0.1);
  ASSERT_EQ(model.order(), 3);
  // (z - 1)(z^2 - 2cz + 1) = z^3 - (1 + 2c) z^2 + (1 + 2c) z - 1 with c = cos(2)
  const double c = std::cos(2.0);
  EXPECT_NEAR(model.d(0), -1.0, 1e-15);
  EXPECT_NEAR(model.d(1), 1.0 + 2.0 * c, 1e-15);
  EXPECT_NEAR(model.d(2), -(1.0 + 2.0 * c), 1e-15);
  EXPECT_LT(recurrence_residual(Signal{SineSquared{10.0}}, model, 0.1, 1, 100), 1e-10);
}

TEST(TrueDenominator, SineRampIsFourthOrderProduct) {
  const auto model = true_denominator(Signal{SineRamp{1.0, b_bar_of(2)}}, 0.1);
  ASSERT_EQ(model.order(), 4);
  // (z^2 - 2z + 1)(z^2 - 2cz + 1), c = cos(0.1), expanded by hand
  const double c = std::cos(0.1);
  EXPECT_NEAR(model.d(0), 1.0, 1e-14);
  EXPECT_NEAR(model.d(1), -2.0 - 2.0 * c, 1e-14);
  EXPECT_NEAR(model.d(2), 2.0 + 4.0 * c, 1e-14);
  EXPECT_NEAR(model.d(3), -2.0 - 2.0 * c, 1e-14);
}

TEST(TrueDenominator, ConstantIsSingleIntegrator) {
  const auto model = true_denominator(Signal{Constant{b_bar_of(2)}}, 0.1);
  ASSERT_EQ(model.order(), 1);
  EXPECT_DOUBLE_EQ(model.d(0), -1.0);
}

TEST(TrueDenominator, RejectsSwitch) {
  const Signal s = make_switch(Signal{Sine{}}, Signal{Ramp{b_bar_of(2)}}, 5);
  EXPECT_THROW(true_denominator(s, 0.1), std::invalid_argument);
}

TEST(TrueDenominator, AnnihilatesEveryStationarySignal) {
  for (const auto& s : stationary_signals(5)) {
    const auto model = true_denominator(s, 0.1);
    // Scale the tolerance with the signal size; the ramp reaches ~1.5 * 10.
    EXPECT_LT(recurrence_residual(s, model, 0.1, 5, 100), 1e-10 * 16) << signal_name(s);
  }
}

TEST(TrueDenominator, GroundTruthRootsLieOnTheUnitCircle) {
  for (const auto& s : stationary_signals(1)) {
    const auto model = true_denominator(s, 0.1);
    const Eigen::Index m = model.order();
    Eigen::MatrixXd F = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i + 1 < m; ++i) F(i, i + 1) = 1.0;
    F.row(m - 1) = -model.d.transpose();
    const auto roots = Eigen::EigenSolver<Eigen::MatrixXd>(F, false).eigenvalues();
    for (Eigen::Index i = 0; i < m; ++i) EXPECT_NEAR(std::abs(roots(i)), 1.0, 1e-6) << signal_name(s);
  }
}

TEST(Minimizer, ZeroLinearTermGivesOrigin) {
  const QuadraticProblem p{make_quadratic(4, 1.0, 5.0, 3).A, 1.0, 5.0, Signal{Constant{Eigen::VectorXd::Zero(4)}}, 0.1};
  EXPECT_LT(minimizer(p, 9).norm(), 1e-15);
}

TEST(Minimizer, CarriesTheStationaritySign) {
  const QuadraticProblem p{2.0 * Eigen::MatrixXd::Identity(2, 2), 2.0, 2.0,
                           Signal{Constant{Eigen::Vector2d(2.0, 2.0)}}, 0.1};
  const Eigen::VectorXd x = minimizer(p, 0);
  EXPECT_NEAR(x(0), -1.0, 1e-15);
  EXPECT_NEAR(x(1), -1.0, 1e-15);
}

TEST(Minimizer, SatisfiesStationarityOnRandomProblem) {
  const QuadraticProblem p = make_quadratic(15, 1.0, 5.0, 0, Signal{SineRamp{1.0, b_bar_of(15)}});
  const Eigen::VectorXd x = minimizer(p, 37);
  EXPECT_LT((p.A * x + linear_term(p, 37)).norm(), 1e-12);
}

TEST(Gradient, IdentityHessianWithoutLinearTermIsIdentityMap) {
  const QuadraticProblem p{Eigen::MatrixXd::Identity(3, 3), 1.0, 1.0, Signal{Constant{Eigen::VectorXd::Zero(3)}}, 0.1};
  const Eigen::Vector3d x(0.3, -7.0, 2.5);
  EXPECT_EQ(gradient(p, x, 4), Eigen::VectorXd(x));
}

TEST(Gradient, VanishesAtTheMinimizerForEveryProblemKind) {
  std::vector<Problem> problems;
  for (const auto& s : stationary_signals(15)) problems.emplace_back(make_quadratic(15, 1.0, 5.0, 2, s));
  problems.emplace_back(make_quadratic(15, 1.0, 5.0, 2, make_switch(Signal{Ramp{b_bar_of(15)}}, Signal{Sine{}}, 40)));
  problems.emplace_back(make_tv_hessian(15, 1.0, 0.1, 2));
  for (const auto& p : problems)
    for (long k : {0L, 1L, 39L, 40L, 123L, 999L}) {
      const Eigen::VectorXd x = minimizer(p, k);
      const double scale = std::max(1.0, linear_term(p, k).norm());
      EXPECT_LT(gradient(p, x, k).norm(), 1e-10 * scale) << "k=" << k;
    }
}

TEST(Gradient, MatchesCentralDifferences) {
  const Problem p = make_quadratic(15, 1.0, 5.0, 0, Signal{SineRamp{1.0, b_bar_of(15)}});
  Rng rng(99);
  const Eigen::VectorXd x = rng.uniform_vector(15, -2.0, 2.0);
  const long k = 17;
  const double step = 1e-5;
  const Eigen::VectorXd g = gradient(p, x, k);
  for (Eigen::Index i = 0; i < 15; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(15);
    e(i) = step;
    const double fd = (cost(p, x + e, k) - cost(p, x - e, k)) / (2.0 * step);
    EXPECT_NEAR(fd, g(i), 1e-6 * std::max(1.0, std::abs(g(i)))) << "coordinate " << i;
  }
}

TEST(Gradient, RejectsDimensionMismatch) {
  const Problem p = make_quadratic(4, 1.0, 5.0, 0);
  EXPECT_THROW(gradient(p, Eigen::VectorXd::Zero(3), 0), std::invalid_argument);
}

TEST(TvHessian, SpectrumStaysInsideTheInterval) {
  const auto p = make_tv_hessian(15, 1.0, 0.1, 4);
  EXPECT_LT((p.V.transpose() * p.V - Eigen::MatrixXd::Identity(15, 15)).norm(), 1e-12);
  for (long k = 0; k < 200; ++k) {
    const auto eig = gsl_symmetric_eigenvalues(hessian(p, k));
    EXPECT_GE(eig.front(), 1.0 - 1e-12) << "k=" << k;
    EXPECT_LE(eig.back(), 5.0 + 1e-12) << "k=" << k;
  }
}

TEST(SignalExcitation, StatedOrderIsPersistentlyExcitingOnShortWindows) {
  // Scalar copies of the signals (n = 1) so that the Hankel rank reflects the
  // time structure alone.
  const std::vector<Signal> signals{Signal{Sine{1.0}}, Signal{SineRamp{1.0, Eigen::VectorXd::Ones(1)}},
                                    Signal{SineSquared{10.0}}, Signal{Constant{Eigen::VectorXd::Ones(1)}}};
  for (const auto& s : signals) {
    const Eigen::Index m = true_denominator(s, 0.1).order();
    for (long start : {1L, 40L, 333L}) {
      if (start == 333 && std::holds_alternative<SineRamp>(s.kind)) continue;  // see below
      std::vector<double> samples;
      for (long k = start; k < start + 3 * m; ++k) samples.push_back(signal_value(s, k, 0.1, 1)(0));
      EXPECT_TRUE(pe_order(std::span<const double>(samples), m, 3 * m)) << signal_name(s) << " from " << start;
    }
  }
}

TEST(SignalExcitation, SineRampFallsBelowTheRelativeRankThresholdFarFromTheOrigin) {
  // At k = 333 the ramp term (~33) dwarfs the fourth-order content of the
  // sine (~1e-4), so the 4 x 9 Hankel matrix has a singular-value ratio near
  // 2e-10 and the 1e-9 relative threshold reports rank deficiency. A longer
  // window restores the ratio above threshold.
  const Signal s{SineRamp{1.0, Eigen::VectorXd::Ones(1)}};
  std::vector<double> samples;
  for (long k = 333; k < 333 + 20; ++k) samples.push_back(signal_value(s, k, 0.1, 1)(0));
  EXPECT_FALSE(pe_order(std::span<const double>(samples), 4, 12));
  EXPECT_TRUE(pe_order(std::span<const double>(samples), 4, 20));
}
