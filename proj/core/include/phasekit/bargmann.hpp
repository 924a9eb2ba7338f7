#pragma once

// n-vertex Bargmann invariants, the four-vertex invariants of an overlap
// matrix, and the reductions of both to primitive factors.
//
// Row, column and level indices in this header are 1-based, matching the
// usual a_{jk} notation; positions into a vector sequence are 0-based.

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "phasekit/canonical_form.hpp"
#include "phasekit/core_types.hpp"

namespace phasekit {

struct BargmannValue {
    Complex value;
    std::size_t vertex_count = 0;
    // False when some successive inner product has modulus <= tol.generic.
    bool defined = false;
};

// (v_1, v_2)(v_2, v_3) ... (v_n, v_1). Throws DimensionMismatch on fewer than
// two vectors or unequal dimensions.
BargmannValue bargmann_invariant(std::span<const UnitVector> vectors, const Tolerances& tol = {});

// Which endpoint frame a vertex is drawn from: psi_j (initial) or phi_k (final).
enum class Family { initial, final };

struct FrameVertex {
    Family family;
    std::size_t index;  // 1-based column of the frame
};

// Delta_{2l} over vertices alternating between the columns of `psis` and
// `phis`. The pattern may start with either family but must alternate and
// have even length >= 2 (PatternNotAlternating otherwise).
BargmannValue interleaved_invariant(const UnitaryMatrix& psis, const UnitaryMatrix& phis,
                                    std::span<const FrameVertex> pattern,
                                    const Tolerances& tol = {});

// a_jk conj(a_lk) a_lm conj(a_jm). Requires j < l and k < m (IndexOrder)
// and all indices in [1, n] (IndexOutOfRange).
Complex delta4_general(const UnitaryMatrix& a, std::size_t j, std::size_t l, std::size_t k,
                       std::size_t m);

// Delta_{jk} = delta4_general(a, j, j+1, k, k+1), 1 <= j, k <= n-1.
Complex delta4_primitive(const UnitaryMatrix& a, std::size_t j, std::size_t k);

// All (n-1)^2 primitive invariants of a matrix.
class Delta4Grid {
public:
    Delta4Grid(const UnitaryMatrix& a, const Tolerances& tol = {});

    std::size_t side() const noexcept { return side_; }  // n - 1
    const Complex& at(std::size_t j, std::size_t k) const;
    // All four matrix elements behind Delta_{jk} exceed tol.generic in modulus.
    bool defined(std::size_t j, std::size_t k) const;

private:
    std::size_t side_;
    std::vector<Complex> values_;
    std::vector<bool> defined_;
};

struct LevelPair {
    std::size_t first;
    std::size_t second;
    friend auto operator<=>(const LevelPair&, const LevelPair&) = default;
};

// Primitive (row, column) pairs whose Delta_{jk} phases add up to the phase
// of Delta_{jlkm}: rows are reduced first, then columns. Throws IndexOrder.
std::vector<LevelPair> reduce_to_adjacent(std::size_t j, std::size_t l, std::size_t k,
                                          std::size_t m);

// generic: vertices are arbitrary unit vectors, primitives are triangles.
// frame: vertices alternate between two orthonormal frames, primitives are
// quadrilaterals.
enum class ReductionMode { generic, frame };

struct BargmannFactor {
    // 0-based positions into the reduced sequence, in cyclic order.
    std::vector<std::size_t> positions;
};

// Fan decomposition anchored at position 0. The product of the factor
// invariants equals the full invariant times a positive real number.
// Throws NonGenericAnchor when an anchor overlap (v_0, v_p) vanishes and
// PatternNotAlternating for an odd-length sequence in frame mode.
std::vector<BargmannFactor> reduce_general_bargmann(std::span<const UnitVector> vectors,
                                                    ReductionMode mode,
                                                    const Tolerances& tol = {});

BargmannValue evaluate_factor(std::span<const UnitVector> vectors, const BargmannFactor& factor,
                              const Tolerances& tol = {});

// (j, k) with 1 <= j < k <= n-1: an algebraically independent set of
// primitive phases.
std::vector<LevelPair> independent_primitive_set(std::size_t n);

// Numerical rank of the Jacobian of {arg Delta_jk : (j,k) independent} with
// respect to the n^2 chart coordinates of perturb_coordinate(), estimated by
// central differences.
struct RankReport {
    std::size_t rank = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> singular_values;
};

RankReport independence_rank(const CanonicalParams& p, double step = 1e-6,
                             double relative_cutoff = 1e-6, const Tolerances& tol = {});

}  // namespace phasekit
