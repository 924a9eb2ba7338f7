#include <algorithm>
#include <cmath>
#include <random>

#include "phasekit/bargmann.hpp"
#include "phasekit/canonical_form.hpp"
#include "phasekit/cli/commands.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/gauge.hpp"
#include "phasekit/generators.hpp"
#include "phasekit/offdiag.hpp"

namespace phasekit::cli {

namespace {

constexpr double identity_tolerance = 1e-10;
constexpr double offdiag_tolerance = 1e-8;

// Accumulates one named property: the largest deviation seen and whether it
// stayed within tolerance.
struct Property {
    std::string name;
    double tolerance;
    double max_deviation = 0.0;

    void record(double deviation) { max_deviation = std::max(max_deviation, deviation); }
    bool passed() const { return max_deviation <= tolerance; }
};

struct SuiteResult {
    Json properties = Json::array();
    Json extra = Json::object();
    bool passed = true;

    void add(const Property& p) {
        properties.push_back({{"name", p.name},
                              {"max_deviation", p.max_deviation},
                              {"tolerance", p.tolerance},
                              {"passed", p.passed()}});
        passed = passed && p.passed();
    }

    void add_exact(const std::string& name, std::size_t value, std::size_t expected) {
        properties.push_back({{"name", name}, {"value", value}, {"expected", expected}, {"passed", value == expected}});
        passed = passed && value == expected;
    }
};

void require_n(const VerifyFlags& f, std::size_t minimum, const char* suite) {
    if (f.n < minimum) {
        throw InvalidArgument(std::string("suite ") + suite + " needs --n >= " + std::to_string(minimum));
    }
}

SuiteResult gauge_suite(const VerifyFlags& f, const GlobalOptions& opts, std::mt19937_64& rng) {
    require_n(f, 2, "gauge");
    Property moduli{"entry_moduli", identity_tolerance};
    Property delta4{"primitive_delta4", identity_tolerance};
    Property delta_general{"general_delta4", identity_tolerance};
    Property phase_list{"phase_invariant_list", identity_tolerance};
    Property modulus_inv{"modulus_invariants", identity_tolerance};
    Property zeta{"recursion_last_column", identity_tolerance};
    Property residual{"recursion_residual_block", identity_tolerance};
    for (std::size_t t = 0; t < f.trials; ++t) {
        const UnitaryMatrix a = random_generic_unitary(f.n, rng(), opts.tol);
        const GaugeInvarianceReport inv = verify_invariants_under_gauge(a, 1, rng(), opts.tol);
        moduli.record(inv.max_entry_modulus_deviation);
        delta4.record(inv.max_delta4_deviation);
        delta_general.record(inv.max_delta_general_deviation);
        phase_list.record(inv.max_phase_list_deviation);
        modulus_inv.record(inv.max_modulus_invariant_deviation);
        const DiagonalPhases left = DiagonalPhases::random(f.n, rng);
        const DiagonalPhases right = DiagonalPhases::random(f.n, rng);
        const GaugeRecursionReport rec = verify_gauge_recursion(a, left, right, opts.tol);
        zeta.record(rec.zeta_deviation);
        residual.record(rec.residual_deviation);
    }
    SuiteResult r;
    for (const auto& p : {moduli, delta4, delta_general, phase_list, modulus_inv, zeta, residual}) r.add(p);
    return r;
}

SuiteResult reduction_suite(const VerifyFlags& f, const GlobalOptions& opts, std::mt19937_64& rng) {
    require_n(f, 3, "reduction");
    Property fan_generic{"bargmann_fan_triangles", identity_tolerance};
    Property fan_frame{"bargmann_fan_quadrilaterals", identity_tolerance};
    Property recursion{"delta4_adjacent_recursion", identity_tolerance};
    std::uniform_int_distribution<std::size_t> level(1, f.n);

    auto fan_residual = [&](const std::vector<UnitVector>& vs, ReductionMode mode) {
        const BargmannValue full = bargmann_invariant(vs, opts.tol);
        double sum = 0.0;
        for (const auto& factor : reduce_general_bargmann(vs, mode, opts.tol)) {
            sum += std::arg(evaluate_factor(vs, factor, opts.tol).value);
        }
        return circular_distance(sum, std::arg(full.value));
    };

    for (std::size_t t = 0; t < f.trials; ++t) {
        std::vector<UnitVector> vs;
        for (std::size_t i = 0; i < f.n + 1; ++i) vs.push_back(random_unit_vector(f.n, rng));
        fan_generic.record(fan_residual(vs, ReductionMode::generic));

        const UnitaryMatrix psis = random_generic_unitary(f.n, rng(), opts.tol);
        const UnitaryMatrix phis = random_generic_unitary(f.n, rng(), opts.tol);
        std::vector<FrameVertex> pattern;
        for (std::size_t i = 0; i < f.n; ++i) {
            pattern.push_back({Family::initial, level(rng)});
            pattern.push_back({Family::final, level(rng)});
        }
        std::vector<UnitVector> interleaved;
        for (const auto& v : pattern) {
            interleaved.push_back((v.family == Family::initial ? psis : phis).column(v.index - 1));
        }
        fan_frame.record(fan_residual(interleaved, ReductionMode::frame));

        const UnitaryMatrix a = validate_unitary(psis.matrix().adjoint() * phis.matrix(), opts.tol);
        for (std::size_t j = 1; j <= f.n; ++j) {
            for (std::size_t l = j + 1; l <= f.n; ++l) {
                for (std::size_t k = 1; k <= f.n; ++k) {
                    for (std::size_t m = k + 1; m <= f.n; ++m) {
                        double sum = 0.0;
                        for (const auto& [r, c] : reduce_to_adjacent(j, l, k, m)) {
                            sum += std::arg(delta4_primitive(a, r, c));
                        }
                        recursion.record(circular_distance(sum, std::arg(delta4_general(a, j, l, k, m))));
                    }
                }
            }
        }
    }
    SuiteResult r;
    for (const auto& p : {fan_generic, fan_frame, recursion}) r.add(p);
    return r;
}

SuiteResult counting_suite(const VerifyFlags& f, const GlobalOptions& opts, std::mt19937_64& rng) {
    require_n(f, 2, "counting");
    const std::size_t n = f.n;
    const CanonicalParams p = decompose(random_generic_unitary(n, rng(), opts.tol), opts.tol);
    SuiteResult r;
    r.add_exact("modulus_invariant_count", modulus_invariants(p).size(), n * (n - 1) / 2);
    r.add_exact("phase_invariant_count", phase_invariant_list(p, opts.tol).size(), (n - 1) * (n - 2) / 2);
    r.add_exact("real_parameter_count", p.real_parameter_count(), n * n);
    r.add_exact("independent_primitive_count", independent_primitive_set(n).size(), (n - 1) * (n - 2) / 2);

    const std::size_t points = std::min<std::size_t>(f.trials, 20);
    std::size_t min_rank = independent_primitive_set(n).size();
    for (std::size_t t = 0; t < points && n >= 3; ++t) {
        const RankReport rank = independence_rank(decompose(random_generic_unitary(n, rng(), opts.tol), opts.tol),
                                                  1e-6, 1e-6, opts.tol);
        min_rank = std::min(min_rank, rank.rank);
    }
    r.add_exact("independent_primitive_min_rank", min_rank, (n - 1) * (n - 2) / 2);
    r.extra["rank_points"] = n >= 3 ? points : 0;
    return r;
}

SuiteResult roundtrip_suite(const VerifyFlags& f, const GlobalOptions& opts, std::mt19937_64& rng) {
    require_n(f, 1, "roundtrip");
    Property err{"reconstruct_decompose", identity_tolerance};
    double margin = 1.0;
    std::size_t rejections = 0;
    for (std::size_t t = 0; t < f.trials; ++t) {
        const GenericSample s = sample_generic_unitary(f.n, rng(), opts.tol);
        rejections += s.rejections;
        const CanonicalParams p = decompose(s.matrix, opts.tol);
        margin = std::min(margin, genericity_margin(p));
        err.record(max_abs_difference(reconstruct(p, opts.tol).matrix(), s.matrix.matrix()));
    }
    SuiteResult r;
    r.add(err);
    r.extra["min_genericity_margin"] = margin;
    r.extra["rejections"] = rejections;
    return r;
}

SuiteResult offdiag_suite(const VerifyFlags& f, const GlobalOptions& opts, std::mt19937_64& rng) {
    require_n(f, 2, "offdiag");
    Property residual{"identity_residual", offdiag_tolerance};
    Property modulus{"gamma_unit_modulus", identity_tolerance};
    std::size_t exceptional = 0;
    for (std::size_t t = 0; t < f.trials; ++t) {
        const OffDiagReport rep = verify_offdiag_identity(random_frame_evolution(f.n, rng(), 401, opts.tol),
                                                          opts.phase_options());
        residual.record(rep.max_residual);
        modulus.record(rep.max_modulus_deviation);
        exceptional += rep.exceptional_count;
    }
    const EvolutionSummary swap(engineered_swap_evolution(f.n, 1, 2, 201), opts.phase_options());
    const MaybeComplex g = gamma_pair(swap, 1, 2);
    Property swap_gamma{"swap_gamma_is_minus_one", identity_tolerance};
    swap_gamma.record(g ? std::abs(*g + 1.0) : 2.0);
    const bool swap_undefined = !swap.levels[0].geometric && !swap.levels[1].geometric;

    SuiteResult r;
    r.add(residual);
    r.add(modulus);
    r.add(swap_gamma);
    r.add_exact("swap_geometric_phases_undefined", swap_undefined ? 1 : 0, 1);
    r.extra["exceptional_in_generic_trials"] = exceptional;
    return r;
}

SuiteResult run_suite(Suite s, const VerifyFlags& f, const GlobalOptions& opts, std::mt19937_64& rng) {
    switch (s) {
        case Suite::gauge: return gauge_suite(f, opts, rng);
        case Suite::reduction: return reduction_suite(f, opts, rng);
        case Suite::counting: return counting_suite(f, opts, rng);
        case Suite::roundtrip: return roundtrip_suite(f, opts, rng);
        case Suite::offdiag: return offdiag_suite(f, opts, rng);
        case Suite::all: break;
    }
    throw InvalidArgument("suite 'all' is not a single suite");
}

Json suite_json(Suite s, SuiteResult r) {
    Json doc;
    doc["suite"] = suite_name(s);
    doc["properties"] = std::move(r.properties);
    for (auto& [key, value] : r.extra.items()) doc[key] = value;
    doc["passed"] = r.passed;
    return doc;
}

}  // namespace

VerifyOutcome verify_report(const VerifyFlags& flags, const GlobalOptions& opts) {
    opts.tol.validate();
    if (flags.trials < 1) throw InvalidArgument("--trials must be at least 1");
    // One independent random stream per suite.
    auto stream = [&](Suite s) {
        std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                          static_cast<std::uint32_t>(s)};
        return std::mt19937_64(seq);
    };

    Json doc;
    doc["command"] = "verify";
    doc["suite"] = suite_name(flags.suite);
    doc["n"] = flags.n;
    doc["trials"] = flags.trials;
    doc["seed"] = opts.seed;

    VerifyOutcome out;
    out.passed = true;
    if (flags.suite == Suite::all) {
        Json suites = Json::array();
        for (Suite s : {Suite::gauge, Suite::reduction, Suite::counting, Suite::roundtrip, Suite::offdiag}) {
            auto rng = stream(s);
            SuiteResult r = run_suite(s, flags, opts, rng);
            out.passed = out.passed && r.passed;
            suites.push_back(suite_json(s, std::move(r)));
        }
        doc["suites"] = std::move(suites);
    } else {
        auto rng = stream(flags.suite);
        SuiteResult r = run_suite(flags.suite, flags, opts, rng);
        out.passed = r.passed;
        doc["properties"] = std::move(r.properties);
        for (auto& [key, value] : r.extra.items()) doc[key] = value;
    }
    doc["passed"] = out.passed;
    out.report = std::move(doc);
    return out;
}

}  // namespace phasekit::cli
