#include "phasekit/phase_functionals.hpp"

#include <cmath>
#include <string>

namespace phasekit {

namespace {

void check_grid(const std::vector<double>& grid, std::size_t samples) {
    if (grid.size() != samples) {
        throw GridMismatch("grid has " + std::to_string(grid.size()) + " points but " +
                           std::to_string(samples) + " samples were given");
    }
    if (grid.size() < 2) throw GridMismatch("a sampled curve needs at least two points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw InvalidArgument("grid contains a non-finite value");
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw InvalidArgument("grid must be strictly increasing (index " + std::to_string(i) +
                                  ")");
        }
    }
}

}  // namespace

StateCurve::StateCurve(std::vector<double> grid, std::vector<UnitVector> states,
                       double min_overlap)
    : grid_(std::move(grid)), states_(std::move(states)), min_overlap_(min_overlap) {
    check_grid(grid_, states_.size());
    for (std::size_t i = 0; i + 1 < states_.size(); ++i) {
        if (states_[i + 1].size() != states_[0].size()) {
            throw DimensionMismatch("curve states have unequal dimensions");
        }
        const double overlap = std::abs(inner_product(states_[i], states_[i + 1]));
        if (!(overlap > min_overlap_)) throw CurveNotSmooth(i, overlap);
    }
}

FrameEvolution::FrameEvolution(std::vector<double> grid, std::vector<UnitaryMatrix> frames,
                               double min_overlap)
    : grid_(std::move(grid)), frames_(std::move(frames)), min_overlap_(min_overlap) {
    check_grid(grid_, frames_.size());
    const std::size_t n = frames_.front().size();
    for (const auto& f : frames_) {
        if (f.size() != n) throw DimensionMismatch("frames have unequal dimensions");
    }
    for (std::size_t i = 0; i + 1 < frames_.size(); ++i) {
        const Matrix& a = frames_[i].matrix();
        const Matrix& b = frames_[i + 1].matrix();
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const double overlap = std::abs(a.col(j).dot(b.col(j)));
            if (!(overlap > min_overlap_)) throw CurveNotSmooth(i, overlap);
        }
    }
}

StateCurve FrameEvolution::column_curve(std::size_t j) const {
    if (j < 1 || j > dimension()) throw IndexOutOfRange("frame level out of range");
    std::vector<UnitVector> states;
    states.reserve(frames_.size());
    for (const auto& f : frames_) {
        states.push_back(UnitVector::normalized(f.matrix().col(static_cast<Eigen::Index>(j - 1))));
    }
    return StateCurve(grid_, std::move(states), min_overlap_);
}

MaybePhase total_phase(const StateCurve& c, const Tolerances& tol) {
    const Complex overlap = inner_product(c.states().front(), c.states().back());
    if (!(std::abs(overlap) > tol.generic)) return std::nullopt;
    return principal_arg(overlap, tol.generic);
}

double dynamical_phase(const StateCurve& c, Quadrature q) {
    const auto& s = c.states();
    // Neumaier compensated summation.
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const Complex overlap = inner_product(s[i], s[i + 1]);
        // The smoothness guard keeps |overlap| > min_overlap, so arg is defined.
        const double term = q == Quadrature::pancharatnam ? std::arg(overlap) : overlap.imag();
        const double next = sum + term;
        carry += std::abs(sum) >= std::abs(term) ? (sum - next) + term : (term - next) + sum;
        sum = next;
    }
    return sum + carry;
}

MaybePhase geometric_phase(const StateCurve& c, const PhaseOptions& opts) {
    const MaybePhase total = total_phase(c, opts.tol);
    if (!total) return std::nullopt;
    return wrap_phase(*total - dynamical_phase(c, opts.quadrature));
}

PhaseReport phase_report(const StateCurve& c, const PhaseOptions& opts) {
    PhaseReport r;
    r.endpoint_overlap_modulus = std::abs(inner_product(c.states().front(), c.states().back()));
    r.total = total_phase(c, opts.tol);
    r.dynamical = dynamical_phase(c, opts.quadrature);
    if (r.total) r.geometric = wrap_phase(*r.total - r.dynamical);
    return r;
}

std::vector<PhaseReport> frame_phase_bundle(const FrameEvolution& f, const PhaseOptions& opts) {
    std::vector<PhaseReport> out;
    out.reserve(f.dimension());
    for (std::size_t j = 1; j <= f.dimension(); ++j) out.push_back(phase_report(f.column_curve(j), opts));
    return out;
}

UnitaryMatrix endpoint_overlap_matrix(const FrameEvolution& f, const Tolerances& tol) {
    const Matrix a = f.frames().front().matrix().adjoint() * f.frames().back().matrix();
    return validate_unitary(a, tol);
}

StateCurve regrid(const StateCurve& c, std::vector<double> grid) {
    return StateCurve(std::move(grid), c.states(), c.min_overlap());
}

std::vector<double> uniform_grid(double begin, double end, std::size_t points) {
    if (points < 2 || !(end > begin)) throw InvalidArgument("uniform grid needs points >= 2 and end > begin");
    std::vector<double> g(points);
    const double h = (end - begin) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = begin + h * static_cast<double>(i);
    g.back() = end;
    return g;
}

}  // namespace phasekit
