#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/gauge.hpp"
#include "phasekit/generators.hpp"

namespace phasekit {
namespace {

TEST(DiagonalPhases, WrapsAndRandomRange) {
    const DiagonalPhases d({3 * pi, -pi, 0.5});
    EXPECT_EQ(d[0], pi);
    EXPECT_EQ(d[1], pi);
    EXPECT_EQ(d[2], 0.5);
    std::mt19937_64 rng(1);
    const DiagonalPhases r = DiagonalPhases::random(50, rng);
    for (double t : r.thetas()) {
        EXPECT_GT(t, -pi);
        EXPECT_LE(t, pi);
    }
}

TEST(GaugeTransformMatrix, ZeroPhasesLeaveMatrix) {
    const UnitaryMatrix a = random_generic_unitary(4, 2);
    const UnitaryMatrix b = gauge_transform_matrix(a, DiagonalPhases::zero(4), DiagonalPhases::zero(4));
    EXPECT_EQ(b.matrix(), a.matrix());
}

TEST(GaugeTransformMatrix, FirstRowNegated) {
    const UnitaryMatrix a = random_generic_unitary(3, 3);
    const UnitaryMatrix b = gauge_transform_matrix(a, DiagonalPhases({pi, 0.0, 0.0}), DiagonalPhases::zero(3));
    Matrix expected = a.matrix();
    expected.row(0) *= -1.0;
    EXPECT_LT(max_abs_difference(b.matrix(), expected), 1e-15);
}

TEST(GaugeTransformMatrix, EntryLaw) {
    std::mt19937_64 rng(4);
    const UnitaryMatrix a = random_generic_unitary(4, 4);
    const DiagonalPhases l = DiagonalPhases::random(4, rng);
    const DiagonalPhases r = DiagonalPhases::random(4, rng);
    const UnitaryMatrix b = gauge_transform_matrix(a, l, r);
    for (std::size_t j = 1; j <= 4; ++j) {
        for (std::size_t k = 1; k <= 4; ++k) {
            EXPECT_LT(std::abs(b.entry(j, k) - std::polar(1.0, l[j - 1] + r[k - 1]) * a.entry(j, k)), 1e-15);
        }
    }
}

TEST(GaugeTransformMatrix, OverallPhaseRedundancy) {
    std::mt19937_64 rng(5);
    const UnitaryMatrix a = random_generic_unitary(3, 5);
    const DiagonalPhases l = DiagonalPhases::random(3, rng);
    const DiagonalPhases r = DiagonalPhases::random(3, rng);
    std::vector<double> ls = l.thetas(), rs = r.thetas();
    for (double& t : ls) t += 0.8;
    for (double& t : rs) t -= 0.8;
    const UnitaryMatrix b1 = gauge_transform_matrix(a, l, r);
    const UnitaryMatrix b2 = gauge_transform_matrix(a, DiagonalPhases(ls), DiagonalPhases(rs));
    EXPECT_LT(max_abs_difference(b1.matrix(), b2.matrix()), 1e-14);
}

TEST(GaugeTransformMatrix, SizeMismatch) {
    const UnitaryMatrix a = random_generic_unitary(3, 6);
    EXPECT_THROW(gauge_transform_matrix(a, DiagonalPhases::zero(2), DiagonalPhases::zero(3)), DimensionMismatch);
}

TEST(GaugeTransformCurve, ZeroAndConstantGauge) {
    const StateCurve c = oracle::latitude_curve(1.0, 2.0, 101);
    const std::vector<double> zero(c.points(), 0.0);
    const StateCurve same = gauge_transform_curve(c, zero);
    for (std::size_t i = 0; i < c.points(); ++i) EXPECT_EQ(same.states()[i].values(), c.states()[i].values());
    const std::vector<double> constant(c.points(), 1.3);
    const double g0 = *geometric_phase(c);
    EXPECT_LT(circular_distance(*geometric_phase(gauge_transform_curve(c, constant)), g0), 1e-12);
}

TEST(GaugeTransformCurve, GridMismatch) {
    const StateCurve c = oracle::latitude_curve(1.0, 2.0, 11);
    const std::vector<double> short_alpha(5, 0.0);
    EXPECT_THROW(gauge_transform_curve(c, short_alpha), GridMismatch);
}

TEST(GaugeTransformFrames, ColumnLaw) {
    const FrameEvolution f = random_frame_evolution(3, 1, 201);
    std::mt19937_64 rng(7);
    std::vector<std::vector<double>> alpha;
    for (int j = 0; j < 3; ++j) alpha.push_back(oracle::smooth_gauge(f.grid(), rng));
    const FrameEvolution g = gauge_transform_frames(f, alpha);
    for (std::size_t i = 0; i < f.points(); i += 50) {
        for (int j = 0; j < 3; ++j) {
            const Vector expected = f.frames()[i].matrix().col(j) * std::polar(1.0, alpha[j][i]);
            EXPECT_LT((g.frames()[i].matrix().col(j) - expected).cwiseAbs().maxCoeff(), 1e-15);
        }
    }
    alpha.pop_back();
    EXPECT_THROW(gauge_transform_frames(f, alpha), DimensionMismatch);
}

TEST(VerifyGaugeRecursion, TrivialPhases) {
    const UnitaryMatrix a = random_generic_unitary(4, 8);
    const GaugeRecursionReport r = verify_gauge_recursion(a, DiagonalPhases::zero(4), DiagonalPhases::zero(4));
    EXPECT_TRUE(r.passed);
    EXPECT_LT(r.zeta_deviation, 1e-15);
}

TEST(VerifyGaugeRecursion, RandomThreeAndSix) {
    std::mt19937_64 rng(9);
    const UnitaryMatrix a3 = random_generic_unitary(3, 9);
    EXPECT_TRUE(verify_gauge_recursion(a3, DiagonalPhases::random(3, rng), DiagonalPhases::random(3, rng)).passed);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const UnitaryMatrix a6 = random_generic_unitary(6, seed);
        const auto r = verify_gauge_recursion(a6, DiagonalPhases::random(6, rng), DiagonalPhases::random(6, rng));
        EXPECT_TRUE(r.passed) << "seed " << seed << " zeta " << r.zeta_deviation << " residual "
                              << r.residual_deviation;
    }
}

TEST(VerifyGaugeRecursion, NonGenericInput) {
    EXPECT_THROW(verify_gauge_recursion(UnitaryMatrix::identity(3), DiagonalPhases::zero(3), DiagonalPhases::zero(3)),
                 NonGenericMatrix);
}

TEST(VerifyInvariantsUnderGauge, NearIdentityGenericMatrices) {
    std::mt19937_64 rng(10);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix m = Matrix::Identity(4, 4);
        for (Eigen::Index r = 0; r < 4; ++r) {
            for (Eigen::Index c = 0; c < 4; ++c) m(r, c) += 0.2 * Complex(normal(rng), normal(rng));
        }
        Eigen::HouseholderQR<Matrix> qr(m);
        const UnitaryMatrix a = validate_unitary(Matrix(qr.householderQ()));
        const GaugeInvarianceReport r = verify_invariants_under_gauge(a, 10, static_cast<std::uint64_t>(trial));
        EXPECT_TRUE(r.passed);
    }
}

TEST(VerifyInvariantsUnderGauge, ManyTrials) {
    const GaugeInvarianceReport r3 = verify_invariants_under_gauge(random_generic_unitary(3, 1), 1000, 1);
    EXPECT_TRUE(r3.passed);
    EXPECT_EQ(r3.trials, 1000u);
    EXPECT_EQ(r3.first_failing_trial, r3.trials);
    const GaugeInvarianceReport r8 = verify_invariants_under_gauge(random_generic_unitary(8, 1), 100, 2);
    EXPECT_TRUE(r8.passed);
    EXPECT_LT(r8.max_delta4_deviation, 1e-12);
    EXPECT_LT(r8.max_phase_list_deviation, 1e-10);
}

}  // namespace
}  // namespace phasekit
