#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "phasekit/canonical_form.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/generators.hpp"

namespace phasekit {
namespace {

UnitVector unit(std::initializer_list<Complex> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (const auto& x : xs) v(i++) = x;
    return UnitVector::normalized(v);
}

TEST(RhoLadder, Examples) {
    EXPECT_EQ(rho_ladder(unit({1.0, 0.0})).rho, (std::vector<double>{1.0, 1.0}));
    const auto r = rho_ladder(unit({1.0, 1.0, 1.0})).rho;
    ASSERT_EQ(r.size(), 3u);
    EXPECT_NEAR(r[0], 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(r[1], std::sqrt(2.0 / 3.0), 1e-15);
    EXPECT_NEAR(r[2], 1.0, 1e-15);
    EXPECT_EQ(rho_ladder(unit({0.0, 0.0, 1.0})).rho, (std::vector<double>{0.0, 0.0, 1.0}));
}

TEST(CosetRepresentative, AlphaUnitBasis) {
    Matrix expected(2, 2);
    expected << 0.0, 1.0, 1.0, 0.0;
    const UnitaryMatrix a = coset_representative(unit({1.0, 0.0}));
    EXPECT_LT(max_abs_difference(a.matrix(), expected), 1e-14);
}

TEST(CosetRepresentative, BetaUniform) {
    const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
    Matrix expected(3, 3);
    expected << -1 / s2, -1 / s6, 1 / s3,
                 1 / s2, -1 / s6, 1 / s3,
                 0.0,     2 / s6, 1 / s3;
    const UnitaryMatrix a = coset_representative(unit({1.0, 1.0, 1.0}));
    EXPECT_LT(max_abs_difference(a.matrix(), expected), 1e-14);
}

TEST(CosetRepresentative, NonGeneric) {
    EXPECT_THROW(coset_representative(unit({0.0, 1.0})), NonGenericVector);
    EXPECT_THROW(coset_representative(unit({1e-9, 1.0})), NonGenericVector);
}

TEST(CosetRepresentative, StructureAgainstOracles) {
    std::mt19937_64 rng(11);
    for (std::size_t n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            const UnitVector zeta = random_unit_vector(n, rng);
            const Matrix a = coset_representative(zeta).matrix();
            const auto d = static_cast<Eigen::Index>(n);
            for (Eigen::Index r = 0; r < d; ++r) {
                for (Eigen::Index c = 0; c + 1 < r; ++c) EXPECT_EQ(a(r, c), Complex(0.0, 0.0));
            }
            for (Eigen::Index r = 1; r < d; ++r) {
                EXPECT_GT(a(r, r - 1).real(), 0.0);
                EXPECT_LT(std::abs(a(r, r - 1).imag()), 1e-14);
            }
            EXPECT_EQ(Vector(a.col(d - 1)), zeta.values());
            EXPECT_LT(max_abs_difference(a, oracle::coset_closed_form_reference(zeta.values())), 1e-12);
            EXPECT_LT(max_abs_difference(a, oracle::coset_by_gram_schmidt(zeta.values())), 1e-12);
        }
    }
}

TEST(CanonicalParams, ValidatesDimensions) {
    EXPECT_NO_THROW(CanonicalParams({unit({1.0, 1.0, 1.0}), unit({1.0, 1.0})}, 0.0));
    EXPECT_THROW(CanonicalParams({unit({1.0, 1.0, 1.0}), unit({1.0, 1.0, 1.0})}, 0.0), DimensionMismatch);
    EXPECT_THROW(CanonicalParams({unit({1.0, 1.0, 1.0})}, 0.0), DimensionMismatch);
    const CanonicalParams p({unit({1.0, 0.0})}, 3 * pi);
    EXPECT_EQ(p.chi(), pi);
    EXPECT_EQ(p.dimension(), 2u);
}

TEST(CanonicalParams, ParameterCountIsNSquared) {
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 8; ++n) {
        std::vector<UnitVector> vs;
        for (std::size_t m = n; m >= 2; --m) vs.push_back(random_unit_vector(m, rng));
        const CanonicalParams p(vs, 0.1);
        EXPECT_EQ(p.real_parameter_count(), n * n);
        EXPECT_EQ(chart_dimension(p), n * n);
    }
}

TEST(Decompose, TwoByTwoCoset) {
    const UnitaryMatrix a = coset_representative(unit({1.0, 1.0}));
    const CanonicalParams p = decompose(a);
    ASSERT_EQ(p.vectors().size(), 1u);
    EXPECT_NEAR((p.vectors()[0].values() - unit({1.0, 1.0}).values()).cwiseAbs().maxCoeff(), 0.0, 1e-15);
    EXPECT_NEAR(p.chi(), 0.0, 1e-15);
}

TEST(Decompose, IdentityIsNonGenericAtTopLevel) {
    for (std::size_t n = 2; n <= 5; ++n) {
        try {
            (void)decompose(UnitaryMatrix::identity(n));
            FAIL();
        } catch (const NonGenericMatrix& e) {
            EXPECT_EQ(e.level(), n);
        }
    }
}

TEST(Decompose, RoundTripRandom) {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const UnitaryMatrix a = random_generic_unitary(n, seed);
            const CanonicalParams p = decompose(a);
            EXPECT_EQ(p.dimension(), n);
            EXPECT_LT(max_abs_difference(reconstruct(p).matrix(), a.matrix()), 1e-10);
            EXPECT_GT(genericity_margin(p), 1e-8);
        }
    }
}

TEST(Reconstruct, SingleFactorExamples) {
    Matrix swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    EXPECT_LT(max_abs_difference(reconstruct(CanonicalParams({unit({1.0, 0.0})}, 0.0)).matrix(), swap), 1e-15);
    Matrix flipped(2, 2);
    flipped << 0.0, 1.0, -1.0, 0.0;
    EXPECT_LT(max_abs_difference(reconstruct(CanonicalParams({unit({1.0, 0.0})}, pi)).matrix(), flipped), 1e-15);
}

TEST(Reconstruct, ThreeLevelProductByHand) {
    std::mt19937_64 rng(5);
    const UnitVector zeta = random_unit_vector(3, rng);
    const UnitVector alpha = random_unit_vector(2, rng);
    const double chi = 0.4;
    Matrix lower = Matrix::Identity(3, 3);
    lower.topLeftCorner(2, 2) = oracle::coset_by_gram_schmidt(alpha.values());
    Matrix phase = Matrix::Identity(3, 3);
    phase(0, 0) = std::polar(1.0, chi);
    const Matrix expected = oracle::coset_by_gram_schmidt(zeta.values()) * lower * phase;
    EXPECT_LT(max_abs_difference(reconstruct(CanonicalParams({zeta, alpha}, chi)).matrix(), expected), 1e-13);
}

TEST(ModulusInvariants, Counts) {
    for (std::size_t n = 2; n <= 10; ++n) {
        const CanonicalParams p = decompose(random_generic_unitary(n, 17));
        EXPECT_EQ(modulus_invariants(p).size(), n * (n - 1) / 2);
        EXPECT_EQ(modulus_invariant_count(n), n * (n - 1) / 2);
        EXPECT_EQ(phase_invariant_list(p).size(), (n - 1) * (n - 2) / 2);
        EXPECT_EQ(phase_invariant_count(n), (n - 1) * (n - 2) / 2);
    }
}

TEST(ModulusInvariants, TwoLevel) {
    const auto m = modulus_invariants(CanonicalParams({unit({1.0, 1.0})}, 0.0));
    ASSERT_EQ(m.size(), 1u);
    EXPECT_NEAR(m[0], 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(PhaseInvariantList, EmptyForTwoLevels) {
    EXPECT_TRUE(phase_invariant_list(CanonicalParams({unit({1.0, 1.0})}, 0.0)).empty());
}

TEST(PhaseInvariantList, ThreeLevelSingleValue) {
    std::mt19937_64 rng(8);
    const UnitVector beta = random_unit_vector(3, rng);
    const UnitVector alpha = random_unit_vector(2, rng);
    const auto list = phase_invariant_list(CanonicalParams({beta, alpha}, 0.0));
    ASSERT_EQ(list.size(), 1u);
    const Complex expected = alpha[0] * std::conj(alpha[1]) * std::conj(beta[1]) * beta[2];
    EXPECT_LT(std::abs(list[0] - expected), 1e-15);
}

TEST(PhaseInvariantList, RealPositiveVectorsGiveZeroPhases) {
    const CanonicalParams p({unit({1.0, 2.0, 3.0, 4.0}), unit({1.0, 1.0, 2.0}), unit({3.0, 1.0})}, 0.0);
    for (const Complex& z : phase_invariant_list(p)) {
        EXPECT_GT(z.real(), 0.0);
        EXPECT_EQ(z.imag(), 0.0);
    }
}

TEST(PhaseInvariantList, NonGenericFactor) {
    EXPECT_THROW(phase_invariant_list(CanonicalParams({unit({1.0, 0.0, 1.0}), unit({1.0, 1.0})}, 0.0)),
                 NonGenericVector);
}

TEST(PerturbCoordinate, ZeroStepIsIdentityAndChartIsInjective) {
    const CanonicalParams p = decompose(random_generic_unitary(4, 2));
    const UnitaryMatrix base = reconstruct(p);
    for (std::size_t c = 0; c < chart_dimension(p); ++c) {
        EXPECT_LT(max_abs_difference(reconstruct(perturb_coordinate(p, c, 0.0)).matrix(), base.matrix()), 1e-14);
        EXPECT_GT(max_abs_difference(reconstruct(perturb_coordinate(p, c, 1e-4)).matrix(), base.matrix()), 1e-6);
    }
    EXPECT_THROW(perturb_coordinate(p, chart_dimension(p), 1e-3), IndexOutOfRange);
}

}  // namespace
}  // namespace phasekit
