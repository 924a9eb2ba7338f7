#include "phasekit/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phasekit {

namespace {

Eigen::VectorXcd phase_vector(std::span<const double> thetas) {
    Eigen::VectorXcd d(static_cast<Eigen::Index>(thetas.size()));
    for (std::size_t i = 0; i < thetas.size(); ++i) d(static_cast<Eigen::Index>(i)) = std::polar(1.0, thetas[i]);
    return d;
}

}  // namespace

DiagonalPhases::DiagonalPhases(std::vector<double> thetas) : thetas_(std::move(thetas)) {
    for (double& t : thetas_) t = wrap_phase(t);
}

DiagonalPhases DiagonalPhases::zero(std::size_t n) { return DiagonalPhases(std::vector<double>(n, 0.0)); }

DiagonalPhases DiagonalPhases::random(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-pi, pi);
    std::vector<double> t(n);
    for (double& x : t) x = dist(rng);
    return DiagonalPhases(std::move(t));
}

UnitaryMatrix gauge_transform_matrix(const UnitaryMatrix& a, const DiagonalPhases& left,
                                     const DiagonalPhases& right, const Tolerances& tol) {
    if (left.size() != a.size() || right.size() != a.size()) {
        throw DimensionMismatch("gauge phases do not match the matrix dimension");
    }
    const Matrix out = phase_vector(left.thetas()).asDiagonal() * a.matrix() *
                       phase_vector(right.thetas()).asDiagonal();
    return validate_unitary(out, tol);
}

StateCurve gauge_transform_curve(const StateCurve& c, std::span<const double> alpha) {
    if (alpha.size() != c.points()) {
        throw GridMismatch("gauge function has " + std::to_string(alpha.size()) +
                           " samples for a curve of " + std::to_string(c.points()) + " points");
    }
    std::vector<UnitVector> states;
    states.reserve(c.points());
    for (std::size_t i = 0; i < c.points(); ++i) states.push_back(c.states()[i].rephased(alpha[i]));
    return StateCurve(c.grid(), std::move(states), c.min_overlap());
}

FrameEvolution gauge_transform_frames(const FrameEvolution& f,
                                      const std::vector<std::vector<double>>& alpha,
                                      const Tolerances& tol) {
    if (alpha.size() != f.dimension()) {
        throw DimensionMismatch("need one gauge function per frame level");
    }
    for (const auto& a : alpha) {
        if (a.size() != f.points()) throw GridMismatch("gauge function length differs from the grid");
    }
    std::vector<UnitaryMatrix> frames;
    frames.reserve(f.points());
    std::vector<double> at(f.dimension());
    for (std::size_t i = 0; i < f.points(); ++i) {
        for (std::size_t j = 0; j < f.dimension(); ++j) at[j] = alpha[j][i];
        const Matrix m = f.frames()[i].matrix() * phase_vector(at).asDiagonal();
        frames.push_back(validate_unitary(m, tol));
    }
    return FrameEvolution(f.grid(), std::move(frames), f.min_overlap());
}

GaugeRecursionReport verify_gauge_recursion(const UnitaryMatrix& a, const DiagonalPhases& left,
                                            const DiagonalPhases& right, const Tolerances& tol) {
    const std::size_t n = a.size();
    if (n < 2) throw DimensionMismatch("gauge recursion needs n >= 2");
    const UnitaryMatrix transformed = gauge_transform_matrix(a, left, right, tol);
    const CosetPeel before = peel_coset(a.matrix(), tol);
    const CosetPeel after = peel_coset(transformed.matrix(), tol);

    GaugeRecursionReport report;
    report.tolerance = 1e-10;
    for (std::size_t j = 0; j < n; ++j) {
        const Complex expected = std::polar(1.0, left[j] + right[n - 1]) * before.last_column[j];
        report.zeta_deviation = std::max(report.zeta_deviation, std::abs(after.last_column[j] - expected));
    }

    const std::span<const double> lt(left.thetas());
    const std::span<const double> rt(right.thetas());
    const Matrix expected_residual = phase_vector(lt.subspan(1)).asDiagonal() * before.residual *
                                     phase_vector(rt.first(n - 1)).asDiagonal();
    report.residual_deviation = max_abs_difference(after.residual, expected_residual);
    report.passed = report.zeta_deviation <= report.tolerance &&
                    report.residual_deviation <= report.tolerance;
    return report;
}

GaugeInvarianceReport verify_invariants_under_gauge(const UnitaryMatrix& a, std::size_t trials,
                                                    std::uint64_t seed, const Tolerances& tol) {
    const std::size_t n = a.size();
    const CanonicalParams params = decompose(a, tol);
    const auto phases0 = phase_invariant_list(params, tol);
    const auto moduli0 = modulus_invariants(params);
    const Delta4Grid grid0(a, tol);

    GaugeInvarianceReport report;
    report.trials = trials;
    report.first_failing_trial = trials;
    std::mt19937_64 rng(seed);

    for (std::size_t t = 0; t < trials; ++t) {
        const auto left = DiagonalPhases::random(n, rng);
        const auto right = DiagonalPhases::random(n, rng);
        const UnitaryMatrix b = gauge_transform_matrix(a, left, right, tol);

        double entry_dev = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                entry_dev = std::max(entry_dev, std::abs(std::abs(b(r, c)) - std::abs(a(r, c))));
            }
        }

        double grid_dev = 0.0;
        const Delta4Grid grid1(b, tol);
        for (std::size_t j = 1; j < n; ++j) {
            for (std::size_t k = 1; k < n; ++k) {
                grid_dev = std::max(grid_dev, std::abs(grid1.at(j, k) - grid0.at(j, k)));
            }
        }

        double general_dev = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t l = j + 1; l <= n; ++l) {
                for (std::size_t k = 1; k <= n; ++k) {
                    for (std::size_t m = k + 1; m <= n; ++m) {
                        general_dev = std::max(general_dev, std::abs(delta4_general(b, j, l, k, m) -
                                                                     delta4_general(a, j, l, k, m)));
                    }
                }
            }
        }

        const CanonicalParams p1 = decompose(b, tol);
        const auto phases1 = phase_invariant_list(p1, tol);
        const auto moduli1 = modulus_invariants(p1);
        double list_dev = 0.0;
        for (std::size_t i = 0; i < phases0.size(); ++i) list_dev = std::max(list_dev, std::abs(phases1[i] - phases0[i]));
        double mod_dev = 0.0;
        for (std::size_t i = 0; i < moduli0.size(); ++i) mod_dev = std::max(mod_dev, std::abs(moduli1[i] - moduli0[i]));

        report.max_entry_modulus_deviation = std::max(report.max_entry_modulus_deviation, entry_dev);
        report.max_delta4_deviation = std::max(report.max_delta4_deviation, grid_dev);
        report.max_delta_general_deviation = std::max(report.max_delta_general_deviation, general_dev);
        report.max_phase_list_deviation = std::max(report.max_phase_list_deviation, list_dev);
        report.max_modulus_invariant_deviation = std::max(report.max_modulus_invariant_deviation, mod_dev);

        const bool ok = entry_dev <= report.modulus_tolerance && grid_dev <= report.delta4_tolerance &&
                        general_dev <= report.delta4_tolerance &&
                        list_dev <= report.phase_list_tolerance && mod_dev <= report.modulus_tolerance;
        if (!ok && report.first_failing_trial == trials) report.first_failing_trial = t;
    }
    report.passed = report.first_failing_trial == trials;
    return report;
}

}  // namespace phasekit
