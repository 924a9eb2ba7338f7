#include "phasekit/offdiag.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phasekit {

namespace {

UnitaryMatrix initial_frame(const FrameEvolution& f) { return f.frames().front(); }
UnitaryMatrix final_frame(const FrameEvolution& f) { return f.frames().back(); }

void check_level(const EvolutionSummary& s, std::size_t j) {
    if (j < 1 || j > s.dimension()) {
        throw IndexOutOfRange("level " + std::to_string(j) + " outside [1, " +
                              std::to_string(s.dimension()) + "]");
    }
}

void check_distinct(const EvolutionSummary& s, std::span<const std::size_t> levels) {
    if (levels.size() < 2) throw IndexError("off-diagonal phases need at least two levels");
    for (std::size_t a = 0; a < levels.size(); ++a) {
        check_level(s, levels[a]);
        for (std::size_t b = a + 1; b < levels.size(); ++b) {
            if (levels[a] == levels[b]) {
                throw DuplicateIndex("level " + std::to_string(levels[a]) + " repeated");
            }
        }
    }
}

}  // namespace

EvolutionSummary::EvolutionSummary(const FrameEvolution& f, const PhaseOptions& opts)
    : initial(initial_frame(f)),
      final(final_frame(f)),
      overlap(endpoint_overlap_matrix(f, opts.tol)),
      levels(frame_phase_bundle(f, opts)),
      options(opts) {}

MaybeComplex sigma(const EvolutionSummary& s, std::size_t j, std::size_t k) {
    check_level(s, j);
    check_level(s, k);
    if (j == k) throw IndexError("sigma_jk is defined for j != k only");
    const Complex a = s.overlap.entry(j, k);
    if (!(std::abs(a) > s.options.tol.generic)) return std::nullopt;
    return std::polar(1.0, std::arg(a) - s.levels[k - 1].dynamical);
}

MaybeComplex sigma(const FrameEvolution& f, std::size_t j, std::size_t k, const PhaseOptions& opts) {
    return sigma(EvolutionSummary(f, opts), j, k);
}

Complex dynamical_factor(const EvolutionSummary& s, std::size_t j) {
    check_level(s, j);
    return std::polar(1.0, -s.levels[j - 1].dynamical);
}

Complex dynamical_factor(const FrameEvolution& f, std::size_t j, const PhaseOptions& opts) {
    return dynamical_factor(EvolutionSummary(f, opts), j);
}

MaybeComplex gamma_pair(const EvolutionSummary& s, std::size_t j, std::size_t k) {
    const MaybeComplex jk = sigma(s, j, k);
    const MaybeComplex kj = sigma(s, k, j);
    if (!jk || !kj) return std::nullopt;
    return *jk * *kj;
}

MaybeComplex gamma_pair(const FrameEvolution& f, std::size_t j, std::size_t k, const PhaseOptions& opts) {
    return gamma_pair(EvolutionSummary(f, opts), j, k);
}

MaybeComplex gamma_diag(const EvolutionSummary& s, std::size_t j) {
    check_level(s, j);
    const MaybePhase g = s.levels[j - 1].geometric;
    if (!g) return std::nullopt;
    return std::polar(1.0, *g);
}

MaybeComplex gamma_diag(const FrameEvolution& f, std::size_t j, const PhaseOptions& opts) {
    return gamma_diag(EvolutionSummary(f, opts), j);
}

MaybeComplex gamma_multi(const EvolutionSummary& s, std::span<const std::size_t> levels) {
    check_distinct(s, levels);
    Complex product(1.0, 0.0);
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const MaybeComplex f = sigma(s, levels[i], levels[(i + 1) % levels.size()]);
        if (!f) return std::nullopt;
        product *= *f;
    }
    return product;
}

MaybeComplex gamma_multi(const FrameEvolution& f, std::span<const std::size_t> levels,
                         const PhaseOptions& opts) {
    return gamma_multi(EvolutionSummary(f, opts), levels);
}

MaybeComplex gamma_via_invariants(const EvolutionSummary& s, std::span<const std::size_t> levels) {
    check_distinct(s, levels);
    std::vector<FrameVertex> pattern;
    if (levels.size() == 2) {
        const std::size_t j = levels[0];
        const std::size_t k = levels[1];
        pattern = {{Family::initial, j}, {Family::final, k}, {Family::initial, k}, {Family::final, j}};
    } else {
        for (std::size_t level : levels) {
            pattern.push_back({Family::final, level});
            pattern.push_back({Family::initial, level});
        }
    }
    const BargmannValue delta = interleaved_invariant(s.initial, s.final, pattern, s.options.tol);
    if (!delta.defined) return std::nullopt;

    double phase = std::arg(delta.value);
    for (std::size_t level : levels) {
        const MaybePhase g = s.levels[level - 1].geometric;
        if (!g) return std::nullopt;
        phase += *g;
    }
    return std::polar(1.0, wrap_phase(phase));
}

MaybeComplex gamma_via_invariants(const FrameEvolution& f, std::span<const std::size_t> levels,
                                  const PhaseOptions& opts) {
    return gamma_via_invariants(EvolutionSummary(f, opts), levels);
}

MaybeComplex gamma_multi_reduced(const EvolutionSummary& s, std::span<const std::size_t> levels) {
    check_distinct(s, levels);
    if (levels.size() <= 3) return gamma_multi(s, levels);
    const std::size_t l = levels.size();
    const MaybeComplex head = gamma_multi_reduced(s, levels.first(l - 1));
    const std::size_t tri[3] = {levels[0], levels[l - 2], levels[l - 1]};
    const MaybeComplex tail = gamma_multi(s, tri);
    const MaybeComplex chord = gamma_pair(s, levels[0], levels[l - 2]);
    if (!head || !tail || !chord) return std::nullopt;
    return *head * *tail / *chord;
}

OffDiagReport verify_offdiag_identity(const EvolutionSummary& s) {
    OffDiagReport report;
    const std::size_t n = s.dimension();

    auto evaluate = [&](std::vector<std::size_t> levels) {
        OffDiagEntry e;
        e.levels = std::move(levels);
        e.direct = gamma_multi(s, e.levels);
        e.via_invariants = gamma_via_invariants(s, e.levels);
        for (std::size_t level : e.levels) {
            if (!s.levels[level - 1].geometric) e.undefined_levels.push_back(level);
        }
        if (e.direct) {
            report.max_modulus_deviation =
                std::max(report.max_modulus_deviation, std::abs(std::abs(*e.direct) - 1.0));
            if (e.via_invariants) {
                e.residual = circular_distance(std::arg(*e.direct), std::arg(*e.via_invariants));
                report.max_residual = std::max(report.max_residual, *e.residual);
            } else if (!e.undefined_levels.empty()) {
                e.exceptional = true;
                ++report.exceptional_count;
            }
        }
        return e;
    };

    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t k = j + 1; k <= n; ++k) report.pairs.push_back(evaluate({j, k}));
    }
    for (std::size_t a = 1; a <= n; ++a) {
        for (std::size_t b = a + 1; b <= n; ++b) {
            for (std::size_t c = b + 1; c <= n; ++c) {
                report.triples.push_back(evaluate({a, b, c}));
                report.triples.push_back(evaluate({a, c, b}));
            }
        }
    }
    return report;
}

OffDiagReport verify_offdiag_identity(const FrameEvolution& f, const PhaseOptions& opts) {
    return verify_offdiag_identity(EvolutionSummary(f, opts));
}

}  // namespace phasekit
