#pragma once

// Sampled curves of unit vectors and of orthonormal frames, and the total,
// dynamical and geometric phase functionals evaluated on them.
//
// The default dynamical-phase quadrature is the Pancharatnam sum
//
//     phi_dyn ~ sum_i arg (psi(s_i), psi(s_{i+1})),
//
// which is exactly reparametrization invariant, converges to
// Im int (psi, dpsi/ds) ds at second order, and makes the geometric phase
// arg (psi_first, psi_last) - phi_dyn exactly gauge invariant at finite
// resolution: the phase of every interior point cancels between the two
// overlaps it enters.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "phasekit/core_types.hpp"

namespace phasekit {

// std::nullopt plays the role of an undefined phase (orthogonal endpoints).
using MaybePhase = std::optional<double>;

inline constexpr double default_min_overlap = 0.9;

class StateCurve {
public:
    // grid strictly increasing, at least two points, one state per point,
    // equal dimensions, and |(psi_i, psi_{i+1})| > min_overlap for every step.
    // Throws GridMismatch, InvalidArgument, DimensionMismatch or CurveNotSmooth.
    StateCurve(std::vector<double> grid, std::vector<UnitVector> states,
               double min_overlap = default_min_overlap);

    std::size_t points() const noexcept { return grid_.size(); }
    std::size_t dimension() const noexcept { return states_.front().size(); }
    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<UnitVector>& states() const noexcept { return states_; }
    double min_overlap() const noexcept { return min_overlap_; }

private:
    std::vector<double> grid_;
    std::vector<UnitVector> states_;
    double min_overlap_;
};

// Frames are unitary matrices whose columns psi_j(s) are the moving basis.
class FrameEvolution {
public:
    // Every column curve must pass the StateCurve checks.
    FrameEvolution(std::vector<double> grid, std::vector<UnitaryMatrix> frames,
                   double min_overlap = default_min_overlap);

    std::size_t points() const noexcept { return grid_.size(); }
    std::size_t dimension() const noexcept { return frames_.front().size(); }
    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<UnitaryMatrix>& frames() const noexcept { return frames_; }
    double min_overlap() const noexcept { return min_overlap_; }

    // Curve traced by column j (1-based).
    StateCurve column_curve(std::size_t j) const;

private:
    std::vector<double> grid_;
    std::vector<UnitaryMatrix> frames_;
    double min_overlap_;
};

enum class Quadrature { pancharatnam, trapezoid };

struct PhaseOptions {
    Tolerances tol{};
    Quadrature quadrature = Quadrature::pancharatnam;
};

struct PhaseReport {
    MaybePhase total;
    double dynamical = 0.0;
    MaybePhase geometric;
    double endpoint_overlap_modulus = 0.0;
};

MaybePhase total_phase(const StateCurve& c, const Tolerances& tol = {});

// Pancharatnam: sum of successive overlap phases. Trapezoid:
// Im sum_i (psi_i, psi_{i+1} - psi_i). Neither is reduced mod 2 pi.
double dynamical_phase(const StateCurve& c, Quadrature q = Quadrature::pancharatnam);

// total - dynamical reduced to (-pi, pi]; undefined iff total is.
MaybePhase geometric_phase(const StateCurve& c, const PhaseOptions& opts = {});

PhaseReport phase_report(const StateCurve& c, const PhaseOptions& opts = {});

// One report per column, level 1 first.
std::vector<PhaseReport> frame_phase_bundle(const FrameEvolution& f, const PhaseOptions& opts = {});

// A = (frame at s_first)^H (frame at s_last), a_jk = (psi_j, phi_k).
UnitaryMatrix endpoint_overlap_matrix(const FrameEvolution& f, const Tolerances& tol = {});

// Same states on a new strictly increasing grid of equal length.
StateCurve regrid(const StateCurve& c, std::vector<double> grid);

std::vector<double> uniform_grid(double begin, double end, std::size_t points);

}  // namespace phasekit
