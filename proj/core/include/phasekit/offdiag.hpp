#pragma once

// Off-diagonal geometric phases of a frame evolution and their expression
// through four-vertex (and 2l-vertex) Bargmann invariants plus the ordinary
// geometric phases of the individual levels.
//
//   I_j         = exp(-i phi_dyn[C_j])
//   sigma_jk    = exp(i arg(psi_j, phi_k) - i phi_dyn[C_k]),   j != k
//   gamma_jk    = sigma_jk sigma_kj
//   gamma_j     = exp(i phi_g[C_j])
//   gamma_{j1..jl} = sigma_{j1 j2} sigma_{j2 j3} ... sigma_{jl j1}
//
// sigma and I depend on the gauge; every gamma does not. Levels are 1-based.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "phasekit/bargmann.hpp"
#include "phasekit/phase_functionals.hpp"

namespace phasekit {

using MaybeComplex = std::optional<Complex>;

// Endpoint overlaps and per-level phase reports of one evolution; every
// function below accepts either this or the evolution itself.
struct EvolutionSummary {
    explicit EvolutionSummary(const FrameEvolution& f, const PhaseOptions& opts = {});

    UnitaryMatrix initial;   // psi_j as columns
    UnitaryMatrix final;     // phi_j as columns
    UnitaryMatrix overlap;   // a_jk = (psi_j, phi_k)
    std::vector<PhaseReport> levels;
    PhaseOptions options;

    std::size_t dimension() const noexcept { return overlap.size(); }
};

// Undefined when |(psi_j, phi_k)| <= tol.generic. Throws IndexError for j == k.
MaybeComplex sigma(const EvolutionSummary& s, std::size_t j, std::size_t k);
MaybeComplex sigma(const FrameEvolution& f, std::size_t j, std::size_t k, const PhaseOptions& opts = {});

Complex dynamical_factor(const EvolutionSummary& s, std::size_t j);
Complex dynamical_factor(const FrameEvolution& f, std::size_t j, const PhaseOptions& opts = {});

MaybeComplex gamma_pair(const EvolutionSummary& s, std::size_t j, std::size_t k);
MaybeComplex gamma_pair(const FrameEvolution& f, std::size_t j, std::size_t k, const PhaseOptions& opts = {});

// exp(i phi_g[C_j]).
MaybeComplex gamma_diag(const EvolutionSummary& s, std::size_t j);
MaybeComplex gamma_diag(const FrameEvolution& f, std::size_t j, const PhaseOptions& opts = {});

// Cyclic sigma product. Needs at least two pairwise distinct levels
// (DuplicateIndex otherwise).
MaybeComplex gamma_multi(const EvolutionSummary& s, std::span<const std::size_t> levels);
MaybeComplex gamma_multi(const FrameEvolution& f, std::span<const std::size_t> levels, const PhaseOptions& opts = {});

// exp(i arg Delta + i sum phi_g[C_{j_i}]) with Delta = Delta_4(psi_j, phi_k,
// psi_k, phi_j) for a pair and Delta_{2l}(phi_{j1}, psi_{j1}, ..., phi_{jl},
// psi_{jl}) otherwise. Undefined when Delta or any phi_g is.
MaybeComplex gamma_via_invariants(const EvolutionSummary& s, std::span<const std::size_t> levels);
MaybeComplex gamma_via_invariants(const FrameEvolution& f, std::span<const std::size_t> levels,
                                  const PhaseOptions& opts = {});

// gamma_{j1..jl} rebuilt from orders 2 and 3 only:
//   gamma_{j1..jl} = gamma_{j1..j(l-1)} gamma_{j1 j(l-1) jl} / gamma_{j1 j(l-1)}.
// Undefined when any chord sigma vanishes.
MaybeComplex gamma_multi_reduced(const EvolutionSummary& s, std::span<const std::size_t> levels);

struct OffDiagEntry {
    std::vector<std::size_t> levels;
    MaybeComplex direct;
    MaybeComplex via_invariants;
    // Circular distance between the two arguments when both are defined.
    std::optional<double> residual;
    // direct is defined while some phi_g[C_{j_i}] is not.
    bool exceptional = false;
    std::vector<std::size_t> undefined_levels;
};

struct OffDiagReport {
    std::vector<OffDiagEntry> pairs;    // j < k
    std::vector<OffDiagEntry> triples;  // j1 < j2 < j3 in both orientations
    double max_residual = 0.0;
    std::size_t exceptional_count = 0;
    // max | |gamma| - 1 | over every defined direct value.
    double max_modulus_deviation = 0.0;
};

OffDiagReport verify_offdiag_identity(const EvolutionSummary& s);
OffDiagReport verify_offdiag_identity(const FrameEvolution& f, const PhaseOptions& opts = {});

}  // namespace phasekit
