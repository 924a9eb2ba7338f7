#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include "phasekit/cli/commands.hpp"
#include "phasekit/cli/io.hpp"
#include "phasekit/generators.hpp"
#include "phasekit/offdiag.hpp"

namespace phasekit::cli {
namespace {

namespace fs = std::filesystem;

std::string data(const std::string& name) { return std::string(PHASEKIT_TEST_DATA_DIR) + "/" + name; }

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "phasekit");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

// Exit status and stdout of the installed binary.
Invocation spawn(const std::string& args) {
    const std::string command = std::string(PHASEKIT_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) return {-1, "", "popen failed"};
    std::string out;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("phasekit_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

Json parse(const std::string& text) { return Json::parse(text); }

TEST(Io, MatrixRoundTripIsExact) {
    const UnitaryMatrix u = random_generic_unitary(4, 3);
    const Matrix back = parse_matrix(parse(render(matrix_json(u.matrix()))));
    EXPECT_EQ(back, u.matrix());
}

TEST(Io, EvolutionRoundTripIsExact) {
    const FrameEvolution f = random_frame_evolution(3, 4, 21);
    const RawEvolution raw = parse_evolution(parse(render(evolution_json(f))));
    ASSERT_EQ(raw.frames.size(), f.points());
    EXPECT_EQ(raw.grid, f.grid());
    for (std::size_t i = 0; i < f.points(); ++i) EXPECT_EQ(raw.frames[i], f.frames()[i].matrix());
}

TEST(Io, ParseErrors) {
    EXPECT_THROW(parse_matrix(parse(R"({"entries": []})")), ParseError);
    EXPECT_THROW(parse_matrix(parse(R"({"n": 0, "entries": []})")), ParseError);
    EXPECT_THROW(parse_matrix(parse(R"({"n": 1, "entries": [[1]]})")), ParseError);
    EXPECT_THROW(parse_matrix(parse(R"({"n": 1, "entries": [["a", 0]]})")), ParseError);
    EXPECT_THROW(parse_evolution(parse(R"({"n": 1, "grid": [0, 1], "frames": [[[1, 0]]]})")), ParseError);
    EXPECT_THROW(read_matrix_file(data("does_not_exist.json")), ParseError);
}

TEST(Decompose, CosetFileRoundTrips) {
    const Invocation r = invoke({"decompose", data("coset_half.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json doc = parse(r.out);
    const Json& zeta = doc["params"]["vectors"][0];
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(zeta[0][0].get<double>(), h, 1e-15);
    EXPECT_NEAR(zeta[1][0].get<double>(), h, 1e-15);
    EXPECT_NEAR(zeta[0][1].get<double>(), 0.0, 1e-15);
    EXPECT_NEAR(zeta[1][1].get<double>(), 0.0, 1e-15);
    EXPECT_NEAR(doc["params"]["chi"].get<double>(), 0.0, 1e-15);
    EXPECT_EQ(doc["modulus_invariants"].size(), 1u);
    EXPECT_EQ(doc["phase_invariants"].size(), 0u);
    ASSERT_EQ(doc["delta4_grid"].size(), 1u);
    EXPECT_NEAR(doc["delta4_grid"][0]["value"][0].get<double>(), -0.25, 1e-15);
}

TEST(Decompose, ReportsDeltaGridAndPhaseList) {
    TempDir dir;
    const std::string path = dir.file("u.json");
    ASSERT_EQ(invoke({"generate", "unitary", "--n", "4", "--seed", "9", "-o", path}).code, 0);
    const Json doc = parse(invoke({"decompose", path}).out);
    EXPECT_EQ(doc["params"]["vectors"].size(), 3u);
    EXPECT_EQ(doc["modulus_invariants"].size(), 6u);
    EXPECT_EQ(doc["phase_invariants"].size(), 3u);
    EXPECT_EQ(doc["delta4_grid"].size(), 9u);
    const UnitaryMatrix u = random_generic_unitary(4, 9);
    EXPECT_EQ(doc["delta4_grid"][4]["arg"].get<double>(), std::arg(delta4_primitive(u, 2, 2)));
}

TEST(Decompose, ExitCodes) {
    EXPECT_EQ(invoke({"decompose", data("identity3.json")}).code, exit_non_generic);
    EXPECT_NE(invoke({"decompose", data("identity3.json")}).err.find("level 3"), std::string::npos);
    EXPECT_EQ(invoke({"decompose", data("nonsquare.json")}).code, exit_bad_input);
    EXPECT_EQ(invoke({"decompose", data("malformed.json")}).code, exit_bad_input);
    EXPECT_EQ(invoke({"decompose", data("not_unitary.json")}).code, exit_not_unitary);
    EXPECT_EQ(invoke({"decompose", data("does_not_exist.json")}).code, exit_bad_input);
    EXPECT_EQ(invoke({"decompose"}).code, exit_bad_input);
    EXPECT_EQ(invoke({"--tol-generic", "-1", "decompose", data("coset_half.json")}).code, exit_bad_input);
}

TEST(Phases, ConstantFrameIsAllZero) {
    const Invocation r = invoke({"phases", data("constant_frame.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const Json doc = parse(r.out);
    for (const auto& level : doc["levels"]) {
        EXPECT_EQ(level["total"].get<double>(), 0.0);
        EXPECT_EQ(level["dynamical"].get<double>(), 0.0);
        EXPECT_EQ(level["geometric"].get<double>(), 0.0);
    }
    EXPECT_EQ(parse_matrix(doc["overlap"]), Matrix::Identity(2, 2));
}

TEST(Phases, SwapTotalsAreNullWithReason) {
    TempDir dir;
    const std::string path = dir.file("swap.json");
    ASSERT_EQ(invoke({"generate", "swap", "--n", "2", "--steps", "101", "-o", path}).code, 0);
    const Json doc = parse(invoke({"phases", path}).out);
    for (const auto& level : doc["levels"]) {
        EXPECT_TRUE(level["total"].is_null());
        EXPECT_TRUE(level["geometric"].is_null());
        EXPECT_EQ(level["reason"], "orthogonal_endpoints");
    }
}

TEST(Phases, MatchesLibraryBitForBit) {
    TempDir dir;
    const std::string path = dir.file("ev.json");
    ASSERT_EQ(invoke({"--seed", "12", "generate", "evolution", "--n", "3", "--steps", "201", "-o", path}).code, 0);
    for (const char* q : {"pancharatnam", "trapezoid"}) {
        const Json doc = parse(invoke({"--quadrature", q, "phases", path}).out);
        PhaseOptions opts;
        opts.quadrature = std::string(q) == "trapezoid" ? Quadrature::trapezoid : Quadrature::pancharatnam;
        const auto bundle = frame_phase_bundle(random_frame_evolution(3, 12, 201), opts);
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_EQ(doc["levels"][j]["dynamical"].get<double>(), bundle[j].dynamical);
            EXPECT_EQ(doc["levels"][j]["geometric"].get<double>(), *bundle[j].geometric);
            EXPECT_EQ(doc["levels"][j]["total"].get<double>(), *bundle[j].total);
        }
    }
}

TEST(Offdiag, SwapGammaIsMinusOne) {
    TempDir dir;
    const std::string path = dir.file("swap.json");
    ASSERT_EQ(invoke({"generate", "swap", "--n", "2", "--steps", "101", "-o", path}).code, 0);
    const Json doc = parse(invoke({"offdiag", path, "--pairs"}).out);
    ASSERT_EQ(doc["pairs"].size(), 1u);
    EXPECT_NEAR(doc["pairs"][0]["gamma"][0].get<double>(), -1.0, 1e-12);
    EXPECT_NEAR(doc["pairs"][0]["gamma"][1].get<double>(), 0.0, 1e-12);
}

TEST(Offdiag, ConstantFrameAllNull) {
    const Invocation r = invoke({"offdiag", data("constant_frame.json"), "--pairs", "--triples"});
    ASSERT_EQ(r.code, 0);
    const Json doc = parse(r.out);
    for (const auto& e : doc["pairs"]) EXPECT_TRUE(e["gamma"].is_null());
    EXPECT_EQ(doc["triples"].size(), 0u);
}

TEST(Offdiag, VerifyIdentityResidual) {
    TempDir dir;
    const std::string path = dir.file("ev.json");
    ASSERT_EQ(invoke({"--seed", "3", "generate", "evolution", "--n", "4", "--steps", "301", "-o", path}).code, 0);
    const Json doc = parse(invoke({"offdiag", path, "--triples", "--verify-identity"}).out);
    EXPECT_LT(doc["identity"]["max_residual"].get<double>(), 1e-8);
    EXPECT_EQ(doc["triples"].size(), 8u);
    EXPECT_EQ(doc["identity"]["entries"].size(), 6u + 8u);
}

TEST(Verify, CountingReportsLengths) {
    const Invocation r = invoke({"verify", "--suite", "counting", "--n", "6"});
    ASSERT_EQ(r.code, 0) << r.out;
    const Json doc = parse(r.out);
    EXPECT_EQ(doc["properties"][0]["value"], 15);
    EXPECT_EQ(doc["properties"][1]["value"], 10);
    EXPECT_TRUE(doc["passed"].get<bool>());
}

TEST(Verify, GaugeIsDeterministic) {
    const Invocation a = invoke({"verify", "--suite", "gauge", "--n", "4", "--trials", "200", "--seed", "7"});
    const Invocation b = invoke({"verify", "--suite", "gauge", "--n", "4", "--trials", "200", "--seed", "7"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const Invocation c = invoke({"--seed", "7", "verify", "--suite", "gauge", "--n", "4", "--trials", "200"});
    EXPECT_EQ(a.out, c.out);
}

TEST(Verify, RoundtripEight) {
    const Invocation r = invoke({"verify", "--suite", "roundtrip", "--n", "8", "--trials", "100"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(parse(r.out)["passed"].get<bool>());
}

TEST(Verify, ExitCodeFollowsPassedField) {
    for (Suite s : {Suite::gauge, Suite::reduction, Suite::counting, Suite::roundtrip, Suite::offdiag, Suite::all}) {
        const CommandResult r = cmd_verify({s, 3, 2}, GlobalOptions{});
        const bool passed = parse(r.output)["passed"].get<bool>();
        EXPECT_EQ(r.exit_code, passed ? exit_ok : exit_failed) << suite_name(s);
    }
}

TEST(Verify, InvalidSuiteDimension) {
    EXPECT_EQ(invoke({"verify", "--suite", "reduction", "--n", "2"}).code, exit_bad_input);
    EXPECT_EQ(invoke({"verify", "--suite", "bogus"}).code, exit_bad_input);
}

TEST(Binary, ExitCodesAndDeterminism) {
    EXPECT_EQ(spawn("decompose " + data("identity3.json")).code, exit_non_generic);
    EXPECT_EQ(spawn("decompose " + data("nonsquare.json")).code, exit_bad_input);
    EXPECT_EQ(spawn("decompose " + data("not_unitary.json")).code, exit_not_unitary);
    const Invocation a = spawn("verify --suite offdiag --n 3 --trials 3 --seed 5");
    const Invocation b = spawn("verify --suite offdiag --n 3 --trials 3 --seed 5");
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_FALSE(a.out.empty());
}

}  // namespace
}  // namespace phasekit::cli
