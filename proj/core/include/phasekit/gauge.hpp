#pragma once

// Gauge transformations of overlap matrices (left/right diagonal phases) and
// of sampled curves (pointwise rephasing), with structured verification of
// the transformation laws of the canonical parameters and of the invariants.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "phasekit/bargmann.hpp"
#include "phasekit/canonical_form.hpp"
#include "phasekit/phase_functionals.hpp"

namespace phasekit {

// diag(e^{i theta_1}, ..., e^{i theta_n}); angles stored in (-pi, pi].
class DiagonalPhases {
public:
    explicit DiagonalPhases(std::vector<double> thetas);
    static DiagonalPhases zero(std::size_t n);
    // Uniform on (-pi, pi].
    static DiagonalPhases random(std::size_t n, std::mt19937_64& rng);

    std::size_t size() const noexcept { return thetas_.size(); }
    const std::vector<double>& thetas() const noexcept { return thetas_; }
    double operator[](std::size_t i) const { return thetas_[i]; }

private:
    std::vector<double> thetas_;
};

// A' = D(left) A D(right), a'_jk = e^{i(theta_j + theta'_k)} a_jk.
UnitaryMatrix gauge_transform_matrix(const UnitaryMatrix& a, const DiagonalPhases& left,
                                     const DiagonalPhases& right, const Tolerances& tol = {});

// psi'(s_i) = e^{i alpha_i} psi(s_i). Throws GridMismatch.
StateCurve gauge_transform_curve(const StateCurve& c, std::span<const double> alpha);

// Column j of every frame picks up e^{i alpha[j-1][i]} at grid point i.
FrameEvolution gauge_transform_frames(const FrameEvolution& f,
                                      const std::vector<std::vector<double>>& alpha,
                                      const Tolerances& tol = {});

struct GaugeRecursionReport {
    double zeta_deviation = 0.0;      // max |zeta'_j - e^{i(theta_j + theta'_n)} zeta_j|
    double residual_deviation = 0.0;  // max-entry gap of the U(n-1) gauge law
    double tolerance = 1e-10;
    bool passed = false;
};

// Checks that peeling A' = D(left) A D(right) yields
//   zeta'_j = e^{i(theta_j + theta'_n)} zeta_j and
//   A'_{n-1} = D(theta_2..theta_n) A_{n-1} D(theta'_1..theta'_{n-1}).
// Throws NonGenericMatrix when either matrix is not generic.
GaugeRecursionReport verify_gauge_recursion(const UnitaryMatrix& a, const DiagonalPhases& left,
                                            const DiagonalPhases& right,
                                            const Tolerances& tol = {});

struct GaugeInvarianceReport {
    std::size_t trials = 0;
    double max_entry_modulus_deviation = 0.0;   // | |a'_jk| - |a_jk| |
    double max_delta4_deviation = 0.0;          // primitive grid, complex difference
    double max_delta_general_deviation = 0.0;   // every Delta_{jlkm}, complex difference
    double max_phase_list_deviation = 0.0;      // phase_invariant_list, complex difference
    double max_modulus_invariant_deviation = 0.0;
    double delta4_tolerance = 1e-12;
    double phase_list_tolerance = 1e-10;
    double modulus_tolerance = 1e-12;
    // Index of the first trial breaking a tolerance, or trials if none did.
    std::size_t first_failing_trial = 0;
    bool passed = false;
};

// Re-randomizes left/right phases `trials` times (seeded) and compares every
// invariant against the untransformed matrix.
GaugeInvarianceReport verify_invariants_under_gauge(const UnitaryMatrix& a, std::size_t trials,
                                                    std::uint64_t seed,
                                                    const Tolerances& tol = {});

}  // namespace phasekit
