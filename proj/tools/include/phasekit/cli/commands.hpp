#pragma once

// Subcommands of the phasekit tool. Each report builder is a pure function of
// its inputs; the cmd_* wrappers add file reading and map failures to exit
// codes.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "phasekit/cli/io.hpp"
#include "phasekit/phase_functionals.hpp"

namespace phasekit::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_failed = 1,       // a verification property failed
    exit_bad_input = 2,    // unreadable file, parse error, bad flags, invalid data
    exit_not_unitary = 3,
    exit_non_generic = 4,
};

struct GlobalOptions {
    std::uint64_t seed = 0;
    Tolerances tol{};
    Quadrature quadrature = Quadrature::pancharatnam;

    PhaseOptions phase_options() const { return PhaseOptions{tol, quadrature}; }
};

struct OffdiagFlags {
    bool pairs = false;
    bool triples = false;
    bool verify_identity = false;
};

enum class Suite { gauge, reduction, counting, roundtrip, offdiag, all };

struct VerifyFlags {
    Suite suite = Suite::all;
    std::size_t n = 4;
    std::size_t trials = 100;
};

struct VerifyOutcome {
    Json report;
    bool passed = false;
};

const char* suite_name(Suite s);
const char* quadrature_name(Quadrature q);

Json decompose_report(const Matrix& m, const GlobalOptions& opts);
Json phases_report(const RawEvolution& raw, const GlobalOptions& opts);
Json offdiag_report(const RawEvolution& raw, const OffdiagFlags& flags, const GlobalOptions& opts);
VerifyOutcome verify_report(const VerifyFlags& flags, const GlobalOptions& opts);

struct CommandResult {
    int exit_code = exit_ok;
    std::string output;  // rendered report, empty on failure
    std::string error;   // diagnostic, empty on success
};

CommandResult cmd_decompose(const std::string& path, const GlobalOptions& opts);
CommandResult cmd_phases(const std::string& path, const GlobalOptions& opts);
CommandResult cmd_offdiag(const std::string& path, const OffdiagFlags& flags, const GlobalOptions& opts);
CommandResult cmd_verify(const VerifyFlags& flags, const GlobalOptions& opts);

enum class GenerateKind { unitary, evolution, swap, constant };

struct GenerateFlags {
    GenerateKind kind = GenerateKind::unitary;
    std::size_t n = 3;
    std::size_t steps = 401;
    std::size_t level_j = 1;
    std::size_t level_k = 2;
};

CommandResult cmd_generate(const GenerateFlags& flags, const GlobalOptions& opts);

// Parses argv, runs one subcommand, writes the report to `out` (or to the
// --output file) and diagnostics to `err`. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phasekit::cli
