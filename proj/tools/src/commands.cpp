#include "phasekit/cli/commands.hpp"

#include <functional>

#include "phasekit/bargmann.hpp"
#include "phasekit/canonical_form.hpp"
#include "phasekit/errors.hpp"
#include "phasekit/generators.hpp"
#include "phasekit/offdiag.hpp"

namespace phasekit::cli {

namespace {

Json maybe_phase(const MaybePhase& p) { return p ? Json(*p) : Json(nullptr); }

Json maybe_complex(const MaybeComplex& z) { return z ? complex_json(*z) : Json(nullptr); }

Json maybe_arg(const MaybeComplex& z) { return z ? Json(std::arg(*z)) : Json(nullptr); }

Json levels_json(const std::vector<std::size_t>& levels) {
    Json out = Json::array();
    for (std::size_t l : levels) out.push_back(l);
    return out;
}

Json gamma_entry(const EvolutionSummary& s, const std::vector<std::size_t>& levels) {
    const MaybeComplex g = gamma_multi(s, levels);
    Json e;
    e["levels"] = levels_json(levels);
    e["gamma"] = maybe_complex(g);
    e["arg"] = maybe_arg(g);
    if (!g) e["reason"] = "vanishing_overlap";
    return e;
}

std::vector<std::vector<std::size_t>> ordered_triples(std::size_t n) {
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t a = 1; a <= n; ++a) {
        for (std::size_t b = a + 1; b <= n; ++b) {
            for (std::size_t c = b + 1; c <= n; ++c) {
                out.push_back({a, b, c});
                out.push_back({a, c, b});
            }
        }
    }
    return out;
}

Json identity_entry(const OffDiagEntry& e) {
    Json j;
    j["levels"] = levels_json(e.levels);
    j["direct"] = maybe_complex(e.direct);
    j["via_invariants"] = maybe_complex(e.via_invariants);
    j["residual"] = e.residual ? Json(*e.residual) : Json(nullptr);
    j["exceptional"] = e.exceptional;
    j["undefined_levels"] = levels_json(e.undefined_levels);
    return j;
}

CommandResult guarded(const std::function<Json()>& body) {
    CommandResult r;
    try {
        r.output = render(body());
    } catch (const ParseError& e) {
        r = {exit_bad_input, "", std::string("parse error: ") + e.what()};
    } catch (const NotUnitary& e) {
        r = {exit_not_unitary, "", std::string("not unitary: ") + e.what()};
    } catch (const NonGenericMatrix& e) {
        r = {exit_non_generic, "", std::string("non-generic matrix: ") + e.what()};
    } catch (const Error& e) {
        r = {exit_bad_input, "", std::string("invalid input: ") + e.what()};
    }
    return r;
}

}  // namespace

const char* suite_name(Suite s) {
    switch (s) {
        case Suite::gauge: return "gauge";
        case Suite::reduction: return "reduction";
        case Suite::counting: return "counting";
        case Suite::roundtrip: return "roundtrip";
        case Suite::offdiag: return "offdiag";
        case Suite::all: return "all";
    }
    return "unknown";
}

const char* quadrature_name(Quadrature q) {
    return q == Quadrature::pancharatnam ? "pancharatnam" : "trapezoid";
}

Json decompose_report(const Matrix& m, const GlobalOptions& opts) {
    const UnitaryMatrix a = validate_unitary(m, opts.tol);
    const CanonicalParams p = decompose(a, opts.tol);

    Json vectors = Json::array();
    for (const auto& v : p.vectors()) {
        Json components = Json::array();
        for (Eigen::Index i = 0; i < v.values().size(); ++i) components.push_back(complex_json(v.values()(i)));
        vectors.push_back(std::move(components));
    }

    Json doc;
    doc["command"] = "decompose";
    doc["n"] = a.size();
    doc["params"] = {{"vectors", std::move(vectors)}, {"chi", p.chi()}};
    doc["real_parameter_count"] = p.real_parameter_count();
    doc["genericity_margin"] = genericity_margin(p);
    doc["modulus_invariants"] = modulus_invariants(p);

    try {
        Json list = Json::array();
        for (const Complex& z : phase_invariant_list(p, opts.tol)) {
            list.push_back({{"value", complex_json(z)}, {"arg", std::arg(z)}});
        }
        doc["phase_invariants"] = std::move(list);
    } catch (const NonGenericVector&) {
        doc["phase_invariants"] = nullptr;
        doc["phase_invariants_reason"] = "vanishing_component";
    }

    Json grid = Json::array();
    if (a.size() >= 2) {
        const Delta4Grid g(a, opts.tol);
        for (std::size_t j = 1; j <= g.side(); ++j) {
            for (std::size_t k = 1; k <= g.side(); ++k) {
                Json e;
                e["j"] = j;
                e["k"] = k;
                e["value"] = complex_json(g.at(j, k));
                if (g.defined(j, k)) {
                    e["arg"] = std::arg(g.at(j, k));
                } else {
                    e["arg"] = nullptr;
                    e["reason"] = "vanishing_entry";
                }
                grid.push_back(std::move(e));
            }
        }
    }
    doc["delta4_grid"] = std::move(grid);
    return doc;
}

Json phases_report(const RawEvolution& raw, const GlobalOptions& opts) {
    const FrameEvolution f = to_evolution(raw, opts.tol);
    const auto bundle = frame_phase_bundle(f, opts.phase_options());
    Json levels = Json::array();
    for (std::size_t j = 0; j < bundle.size(); ++j) {
        const PhaseReport& r = bundle[j];
        Json e;
        e["level"] = j + 1;
        e["total"] = maybe_phase(r.total);
        e["dynamical"] = r.dynamical;
        e["geometric"] = maybe_phase(r.geometric);
        e["endpoint_overlap_modulus"] = r.endpoint_overlap_modulus;
        if (!r.total) e["reason"] = "orthogonal_endpoints";
        levels.push_back(std::move(e));
    }
    Json doc;
    doc["command"] = "phases";
    doc["n"] = f.dimension();
    doc["points"] = f.points();
    doc["quadrature"] = quadrature_name(opts.quadrature);
    doc["levels"] = std::move(levels);
    doc["overlap"] = matrix_json(endpoint_overlap_matrix(f, opts.tol).matrix());
    return doc;
}

Json offdiag_report(const RawEvolution& raw, const OffdiagFlags& flags, const GlobalOptions& opts) {
    const FrameEvolution f = to_evolution(raw, opts.tol);
    const EvolutionSummary s(f, opts.phase_options());
    const std::size_t n = s.dimension();
    const bool pairs = flags.pairs || (!flags.triples && !flags.verify_identity);

    Json doc;
    doc["command"] = "offdiag";
    doc["n"] = n;
    doc["quadrature"] = quadrature_name(opts.quadrature);
    if (pairs) {
        Json list = Json::array();
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t k = j + 1; k <= n; ++k) list.push_back(gamma_entry(s, {j, k}));
        }
        doc["pairs"] = std::move(list);
    }
    if (flags.triples) {
        Json list = Json::array();
        for (const auto& t : ordered_triples(n)) list.push_back(gamma_entry(s, t));
        doc["triples"] = std::move(list);
    }
    if (flags.verify_identity) {
        const OffDiagReport r = verify_offdiag_identity(s);
        Json entries = Json::array();
        for (const auto& e : r.pairs) entries.push_back(identity_entry(e));
        for (const auto& e : r.triples) entries.push_back(identity_entry(e));
        doc["identity"] = {{"max_residual", r.max_residual},
                           {"exceptional_count", r.exceptional_count},
                           {"max_modulus_deviation", r.max_modulus_deviation},
                           {"entries", std::move(entries)}};
    }
    return doc;
}

CommandResult cmd_decompose(const std::string& path, const GlobalOptions& opts) {
    return guarded([&] { return decompose_report(read_matrix_file(path), opts); });
}

CommandResult cmd_phases(const std::string& path, const GlobalOptions& opts) {
    return guarded([&] { return phases_report(read_evolution_file(path), opts); });
}

CommandResult cmd_offdiag(const std::string& path, const OffdiagFlags& flags, const GlobalOptions& opts) {
    return guarded([&] { return offdiag_report(read_evolution_file(path), flags, opts); });
}

CommandResult cmd_verify(const VerifyFlags& flags, const GlobalOptions& opts) {
    bool passed = false;
    CommandResult r = guarded([&] {
        VerifyOutcome v = verify_report(flags, opts);
        passed = v.passed;
        return std::move(v.report);
    });
    if (r.exit_code == exit_ok && !passed) r.exit_code = exit_failed;
    return r;
}

CommandResult cmd_generate(const GenerateFlags& flags, const GlobalOptions& opts) {
    return guarded([&]() -> Json {
        switch (flags.kind) {
            case GenerateKind::unitary:
                return matrix_json(random_generic_unitary(flags.n, opts.seed, opts.tol).matrix());
            case GenerateKind::evolution:
                return evolution_json(random_frame_evolution(flags.n, opts.seed, flags.steps, opts.tol));
            case GenerateKind::swap:
                return evolution_json(engineered_swap_evolution(flags.n, flags.level_j, flags.level_k, flags.steps));
            case GenerateKind::constant: {
                const UnitaryMatrix u = random_generic_unitary(flags.n, opts.seed, opts.tol);
                return evolution_json(FrameEvolution(uniform_grid(0.0, 1.0, flags.steps),
                                                     std::vector<UnitaryMatrix>(flags.steps, u)));
            }
        }
        throw InvalidArgument("unknown generator");
    });
}

}  // namespace phasekit::cli
