#pragma once

// Matrix and evolution documents.
//
//   matrix:    {"n": 2, "entries": [[re, im], ...]}            row-major, n*n pairs
//   evolution: {"n": 2, "grid": [s_0, ...], "frames": [[[re, im], ...], ...]}

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "phasekit/core_types.hpp"
#include "phasekit/phase_functionals.hpp"

namespace phasekit::cli {

using Json = nlohmann::ordered_json;

// Malformed or unreadable input document.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RawEvolution {
    std::size_t n = 0;
    std::vector<double> grid;
    std::vector<Matrix> frames;
};

std::string read_text(const std::string& path);

Matrix parse_matrix(const Json& doc);
RawEvolution parse_evolution(const Json& doc);

Matrix read_matrix_file(const std::string& path);
RawEvolution read_evolution_file(const std::string& path);

// Certifies every frame and builds the evolution (NotUnitary, CurveNotSmooth, ...).
FrameEvolution to_evolution(const RawEvolution& raw, const Tolerances& tol);

Json complex_json(Complex z);
Json matrix_json(const Matrix& m);
Json evolution_json(const FrameEvolution& f);

// Two-space indented dump with a trailing newline.
std::string render(const Json& doc);

}  // namespace phasekit::cli
