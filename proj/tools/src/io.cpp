#include "phasekit/cli/io.hpp"

#include <fstream>
#include <sstream>

namespace phasekit::cli {

namespace {

const Json& field(const Json& doc, const char* key) {
    if (!doc.is_object()) throw ParseError("document is not an object");
    const auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

std::size_t dimension(const Json& doc) {
    const Json& n = field(doc, "n");
    if (!n.is_number_integer() || n.get<long long>() < 1) throw ParseError("\"n\" must be a positive integer");
    return static_cast<std::size_t>(n.get<long long>());
}

double number(const Json& x, const std::string& where) {
    if (!x.is_number()) throw ParseError(where + " is not a number");
    return x.get<double>();
}

Matrix entries(const Json& list, std::size_t n, const std::string& where) {
    if (!list.is_array()) throw ParseError(where + " is not an array");
    if (list.size() != n * n) {
        throw ParseError(where + " has " + std::to_string(list.size()) + " entries, expected " +
                         std::to_string(n * n));
    }
    const auto d = static_cast<Eigen::Index>(n);
    Matrix m(d, d);
    for (std::size_t i = 0; i < list.size(); ++i) {
        const Json& pair = list[i];
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!pair.is_array() || pair.size() != 2) throw ParseError(at + " is not a [re, im] pair");
        m(static_cast<Eigen::Index>(i / n), static_cast<Eigen::Index>(i % n)) =
            Complex(number(pair[0], at), number(pair[1], at));
    }
    return m;
}

Json parse_text(const std::string& text, const std::string& path) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Matrix parse_matrix(const Json& doc) {
    const std::size_t n = dimension(doc);
    return entries(field(doc, "entries"), n, "entries");
}

RawEvolution parse_evolution(const Json& doc) {
    RawEvolution out;
    out.n = dimension(doc);
    const Json& grid = field(doc, "grid");
    const Json& frames = field(doc, "frames");
    if (!grid.is_array()) throw ParseError("grid is not an array");
    if (!frames.is_array()) throw ParseError("frames is not an array");
    if (grid.size() != frames.size()) {
        throw ParseError("grid has " + std::to_string(grid.size()) + " points but there are " +
                         std::to_string(frames.size()) + " frames");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.grid.push_back(number(grid[i], "grid[" + std::to_string(i) + "]"));
        out.frames.push_back(entries(frames[i], out.n, "frames[" + std::to_string(i) + "]"));
    }
    return out;
}

Matrix read_matrix_file(const std::string& path) { return parse_matrix(parse_text(read_text(path), path)); }

RawEvolution read_evolution_file(const std::string& path) {
    return parse_evolution(parse_text(read_text(path), path));
}

FrameEvolution to_evolution(const RawEvolution& raw, const Tolerances& tol) {
    std::vector<UnitaryMatrix> frames;
    frames.reserve(raw.frames.size());
    for (const auto& m : raw.frames) frames.push_back(validate_unitary(m, tol));
    return FrameEvolution(raw.grid, std::move(frames));
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const Matrix& m) {
    Json list = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) list.push_back(complex_json(m(r, c)));
    }
    Json doc;
    doc["n"] = m.rows();
    doc["entries"] = std::move(list);
    return doc;
}

Json evolution_json(const FrameEvolution& f) {
    Json doc;
    doc["n"] = f.dimension();
    doc["grid"] = f.grid();
    Json frames = Json::array();
    for (const auto& frame : f.frames()) frames.push_back(matrix_json(frame.matrix())["entries"]);
    doc["frames"] = std::move(frames);
    return doc;
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace phasekit::cli
