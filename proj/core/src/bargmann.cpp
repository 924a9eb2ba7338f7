#include "phasekit/bargmann.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <string>

namespace phasekit {

namespace {

void check_dims(std::span<const UnitVector> vectors) {
    if (vectors.size() < 2) throw DimensionMismatch("Bargmann invariant needs at least two vectors");
    for (const auto& v : vectors) {
        if (v.size() != vectors.front().size()) {
            throw DimensionMismatch("Bargmann vertices have unequal dimensions");
        }
    }
}

void check_range(const UnitaryMatrix& a, std::size_t i) {
    if (i < 1 || i > a.size()) {
        throw IndexOutOfRange("index " + std::to_string(i) + " outside [1, " +
                              std::to_string(a.size()) + "]");
    }
}

}  // namespace

BargmannValue bargmann_invariant(std::span<const UnitVector> vectors, const Tolerances& tol) {
    check_dims(vectors);
    BargmannValue out{Complex(1.0, 0.0), vectors.size(), true};
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const Complex f = inner_product(vectors[i], vectors[(i + 1) % vectors.size()]);
        if (!(std::abs(f) > tol.generic)) out.defined = false;
        out.value *= f;
    }
    return out;
}

BargmannValue interleaved_invariant(const UnitaryMatrix& psis, const UnitaryMatrix& phis,
                                    std::span<const FrameVertex> pattern, const Tolerances& tol) {
    if (psis.size() != phis.size()) throw DimensionMismatch("frames have different dimensions");
    if (pattern.size() < 2 || pattern.size() % 2 != 0) {
        throw PatternNotAlternating("interleaved pattern must have even length >= 2");
    }
    std::vector<UnitVector> vertices;
    vertices.reserve(pattern.size());
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i > 0 && pattern[i].family == pattern[i - 1].family) {
            throw PatternNotAlternating("vertices " + std::to_string(i - 1) + " and " +
                                        std::to_string(i) + " come from the same frame");
        }
        const UnitaryMatrix& frame = pattern[i].family == Family::initial ? psis : phis;
        check_range(frame, pattern[i].index);
        vertices.push_back(frame.column(pattern[i].index - 1, std::max(tol.norm, 4.0 * tol.unitary)));
    }
    return bargmann_invariant(vertices, tol);
}

Complex delta4_general(const UnitaryMatrix& a, std::size_t j, std::size_t l, std::size_t k,
                       std::size_t m) {
    for (std::size_t i : {j, l, k, m}) check_range(a, i);
    if (!(j < l) || !(k < m)) {
        throw IndexOrder("Delta_{jlkm} needs j < l and k < m");
    }
    return a.entry(j, k) * std::conj(a.entry(l, k)) * a.entry(l, m) * std::conj(a.entry(j, m));
}

Complex delta4_primitive(const UnitaryMatrix& a, std::size_t j, std::size_t k) {
    const std::size_t n = a.size();
    if (j < 1 || k < 1 || j >= n || k >= n) {
        throw IndexOutOfRange("primitive Delta_{jk} needs 1 <= j, k <= n-1");
    }
    return delta4_general(a, j, j + 1, k, k + 1);
}

Delta4Grid::Delta4Grid(const UnitaryMatrix& a, const Tolerances& tol) : side_(a.size() - 1) {
    values_.reserve(side_ * side_);
    defined_.reserve(side_ * side_);
    for (std::size_t j = 1; j <= side_; ++j) {
        for (std::size_t k = 1; k <= side_; ++k) {
            values_.push_back(delta4_primitive(a, j, k));
            bool ok = true;
            for (const auto& [r, c] : {std::pair{j, k}, {j + 1, k}, {j + 1, k + 1}, {j, k + 1}}) {
                ok = ok && std::abs(a.entry(r, c)) > tol.generic;
            }
            defined_.push_back(ok);
        }
    }
}

const Complex& Delta4Grid::at(std::size_t j, std::size_t k) const {
    if (j < 1 || k < 1 || j > side_ || k > side_) throw IndexOutOfRange("grid index out of range");
    return values_[(j - 1) * side_ + (k - 1)];
}

bool Delta4Grid::defined(std::size_t j, std::size_t k) const {
    if (j < 1 || k < 1 || j > side_ || k > side_) throw IndexOutOfRange("grid index out of range");
    return defined_[(j - 1) * side_ + (k - 1)];
}

std::vector<LevelPair> reduce_to_adjacent(std::size_t j, std::size_t l, std::size_t k,
                                          std::size_t m) {
    if (!(j < l) || !(k < m)) throw IndexOrder("Delta_{jlkm} needs j < l and k < m");
    // Row recursion splits [j, l] into adjacent row pairs; column recursion
    // then splits each [k, m].
    std::vector<LevelPair> out;
    out.reserve((l - j) * (m - k));
    for (std::size_t r = j; r < l; ++r) {
        for (std::size_t c = k; c < m; ++c) out.push_back({r, c});
    }
    return out;
}

std::vector<BargmannFactor> reduce_general_bargmann(std::span<const UnitVector> vectors,
                                                    ReductionMode mode, const Tolerances& tol) {
    check_dims(vectors);
    const std::size_t n = vectors.size();
    std::vector<BargmannFactor> out;

    auto require_anchor = [&](std::size_t p) {
        if (!(std::abs(inner_product(vectors[0], vectors[p])) > tol.generic)) {
            throw NonGenericAnchor(0, p);
        }
    };

    if (mode == ReductionMode::generic) {
        if (n <= 3) {
            BargmannFactor whole;
            for (std::size_t i = 0; i < n; ++i) whole.positions.push_back(i);
            out.push_back(std::move(whole));
            return out;
        }
        for (std::size_t p = 2; p + 1 < n; ++p) require_anchor(p);
        for (std::size_t p = 1; p + 1 < n; ++p) out.push_back({{0, p, p + 1}});
        return out;
    }

    if (n % 2 != 0) throw PatternNotAlternating("frame-mode reduction needs an even vertex count");
    if (n <= 4) {
        BargmannFactor whole;
        for (std::size_t i = 0; i < n; ++i) whole.positions.push_back(i);
        out.push_back(std::move(whole));
        return out;
    }
    // Delta_{2l} = prod_{i=2..l} Delta_4(v_0, v_{2i-3}, v_{2i-2}, v_{2i-1}) / positive.
    const std::size_t half = n / 2;
    for (std::size_t i = 2; i < half; ++i) require_anchor(2 * i - 1);
    for (std::size_t i = 2; i <= half; ++i) out.push_back({{0, 2 * i - 3, 2 * i - 2, 2 * i - 1}});
    return out;
}

BargmannValue evaluate_factor(std::span<const UnitVector> vectors, const BargmannFactor& factor,
                              const Tolerances& tol) {
    std::vector<UnitVector> picked;
    picked.reserve(factor.positions.size());
    for (std::size_t p : factor.positions) {
        if (p >= vectors.size()) throw IndexOutOfRange("factor position out of range");
        picked.push_back(vectors[p]);
    }
    return bargmann_invariant(picked, tol);
}

std::vector<LevelPair> independent_primitive_set(std::size_t n) {
    std::vector<LevelPair> out;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        for (std::size_t k = j + 1; k <= n - 1; ++k) out.push_back({j, k});
    }
    return out;
}

RankReport independence_rank(const CanonicalParams& p, double step, double relative_cutoff,
                             const Tolerances& tol) {
    const std::size_t n = p.dimension();
    const auto pairs = independent_primitive_set(n);
    RankReport report;
    report.rows = pairs.size();
    report.cols = chart_dimension(p);
    if (report.rows == 0) return report;

    auto phases = [&](const CanonicalParams& q) {
        const UnitaryMatrix a = reconstruct(q, tol);
        std::vector<double> out;
        out.reserve(pairs.size());
        for (const auto& [j, k] : pairs) {
            out.push_back(principal_arg(delta4_primitive(a, j, k), tol.generic));
        }
        return out;
    };

    Eigen::MatrixXd jac(static_cast<Eigen::Index>(report.rows),
                        static_cast<Eigen::Index>(report.cols));
    for (std::size_t c = 0; c < report.cols; ++c) {
        const auto plus = phases(perturb_coordinate(p, c, step));
        const auto minus = phases(perturb_coordinate(p, c, -step));
        for (std::size_t r = 0; r < report.rows; ++r) {
            jac(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                wrap_phase(plus[r] - minus[r]) / (2.0 * step);
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
    const Eigen::VectorXd sv = svd.singularValues();
    report.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double largest = sv.size() > 0 ? sv(0) : 0.0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > relative_cutoff * largest) ++report.rank;
    }
    return report;
}

}  // namespace phasekit
