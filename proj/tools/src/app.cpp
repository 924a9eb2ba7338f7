#include <fstream>
#include <map>
#include <ostream>

#include <CLI11.hpp>

#include "phasekit/cli/commands.hpp"
#include "phasekit/errors.hpp"

namespace phasekit::cli {

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Geometric phases, Bargmann invariants and canonical U(n) factorization", "phasekit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions opts;
    std::string quadrature = "pancharatnam";
    std::string output;
    app.add_option("--seed", opts.seed, "Seed for every random draw")->capture_default_str();
    app.add_option("--tol-generic", opts.tol.generic, "Modulus below which overlaps count as zero")
        ->capture_default_str();
    app.add_option("--tol-unitary", opts.tol.unitary, "Accepted max |M^H M - Id|")->capture_default_str();
    app.add_option("--quadrature", quadrature, "Dynamical-phase quadrature")
        ->check(CLI::IsMember({"pancharatnam", "trapezoid"}))
        ->capture_default_str();
    app.add_option("-o,--output", output, "Write the report to this file instead of stdout");

    std::string input;

    auto* decompose = app.add_subcommand("decompose", "Canonical parameters and invariants of a unitary matrix");
    decompose->add_option("input", input, "Matrix document")->required();

    auto* phases = app.add_subcommand("phases", "Total, dynamical and geometric phase of every level");
    phases->add_option("input", input, "Evolution document")->required();

    OffdiagFlags offdiag_flags;
    auto* offdiag = app.add_subcommand("offdiag", "Off-diagonal geometric phases");
    offdiag->add_option("input", input, "Evolution document")->required();
    offdiag->add_flag("--pairs", offdiag_flags.pairs, "Tabulate gamma_jk for j < k");
    offdiag->add_flag("--triples", offdiag_flags.triples, "Tabulate gamma_jkl in both orientations");
    offdiag->add_flag("--verify-identity", offdiag_flags.verify_identity,
                      "Compare direct values with the invariant reconstruction");

    VerifyFlags verify_flags;
    std::string suite = "all";
    auto* verify = app.add_subcommand("verify", "Seeded property checks; exit 1 on any failure");
    verify->add_option("--suite", suite, "Property suite")
        ->check(CLI::IsMember({"gauge", "reduction", "counting", "roundtrip", "offdiag", "all"}))
        ->capture_default_str();
    verify->add_option("--n", verify_flags.n, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--trials", verify_flags.trials, "Random instances")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    GenerateFlags generate_flags;
    std::string kind;
    std::vector<std::size_t> levels;
    auto* generate = app.add_subcommand("generate", "Write a seeded test matrix or evolution document");
    generate->add_option("kind", kind, "unitary, evolution, swap or constant")
        ->required()
        ->check(CLI::IsMember({"unitary", "evolution", "swap", "constant"}));
    generate->add_option("--n", generate_flags.n, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
    generate->add_option("--steps", generate_flags.steps, "Grid points of an evolution")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1000000}))
        ->capture_default_str();
    generate->add_option("--levels", levels, "Swapped levels j k (swap only)")->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "phasekit: " << e.what() << "\n";
        return exit_bad_input;
    }

    opts.quadrature = quadrature == "trapezoid" ? Quadrature::trapezoid : Quadrature::pancharatnam;
    try {
        opts.tol.validate();
    } catch (const Error& e) {
        err << "phasekit: " << e.what() << "\n";
        return exit_bad_input;
    }

    CommandResult result;
    if (*decompose) {
        result = cmd_decompose(input, opts);
    } else if (*phases) {
        result = cmd_phases(input, opts);
    } else if (*offdiag) {
        result = cmd_offdiag(input, offdiag_flags, opts);
    } else if (*verify) {
        static const std::map<std::string, Suite> suites{{"gauge", Suite::gauge},         {"reduction", Suite::reduction},
                                                         {"counting", Suite::counting},   {"roundtrip", Suite::roundtrip},
                                                         {"offdiag", Suite::offdiag},     {"all", Suite::all}};
        verify_flags.suite = suites.at(suite);
        result = cmd_verify(verify_flags, opts);
    } else {
        static const std::map<std::string, GenerateKind> kinds{{"unitary", GenerateKind::unitary},
                                                               {"evolution", GenerateKind::evolution},
                                                               {"swap", GenerateKind::swap},
                                                               {"constant", GenerateKind::constant}};
        generate_flags.kind = kinds.at(kind);
        if (!levels.empty()) {
            generate_flags.level_j = levels[0];
            generate_flags.level_k = levels[1];
        }
        result = cmd_generate(generate_flags, opts);
    }

    if (!result.error.empty()) err << "phasekit: " << result.error << "\n";
    if (!result.output.empty()) {
        if (output.empty()) {
            out << result.output;
        } else {
            std::ofstream file(output, std::ios::binary);
            if (!(file << result.output)) {
                err << "phasekit: cannot write " << output << "\n";
                return exit_bad_input;
            }
        }
    }
    return result.exit_code;
}

}  // namespace phasekit::cli
