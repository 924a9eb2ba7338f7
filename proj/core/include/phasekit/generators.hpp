#pragma once

// Reproducible test inputs: Haar-like random unitaries, random unit vectors,
// eigenframe evolutions of smooth Hermitian paths, and engineered level-swap
// evolutions. Everything is a pure function of its parameters and seed.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "phasekit/core_types.hpp"
#include "phasekit/phase_functionals.hpp"

namespace phasekit {

struct GenericSample {
    UnitaryMatrix matrix;
    std::size_t rejections = 0;  // draws discarded because decompose() failed
};

// QR of a complex Ginibre matrix with the R-diagonal phases divided out,
// resampled until decompose() succeeds at tol.generic.
GenericSample sample_generic_unitary(std::size_t n, std::uint64_t seed, const Tolerances& tol = {});
UnitaryMatrix random_generic_unitary(std::size_t n, std::uint64_t seed, const Tolerances& tol = {});

// Uniform on the unit sphere of C^n.
UnitVector random_unit_vector(std::size_t n, std::mt19937_64& rng);

// f(s) = sum_k poly[k] s^k + sum_i amplitude_i cos(frequency_i s + phase_i)
struct CoefficientFunction {
    struct Cosine {
        double amplitude;
        double frequency;
        double phase;
    };
    std::vector<double> poly;
    std::vector<Cosine> cosines;

    double operator()(double s) const;
};

// h(s) = sum_b f_b(s) H_b over a fixed Hermitian basis, s in [begin, end].
class HermitianPath {
public:
    // Throws InvalidArgument for non-Hermitian basis elements (1e-12), unequal
    // shapes, a coefficient/basis count mismatch or an empty domain.
    HermitianPath(std::vector<Matrix> basis, std::vector<CoefficientFunction> coefficients,
                  double begin, double end);

    Matrix sample(double s) const;
    std::size_t dimension() const noexcept { return static_cast<std::size_t>(basis_.front().rows()); }
    double begin() const noexcept { return begin_; }
    double end() const noexcept { return end_; }

private:
    std::vector<Matrix> basis_;
    std::vector<CoefficientFunction> coefficients_;
    double begin_;
    double end_;
};

// Eigenvectors of h(s) on a uniform grid of `steps` points, eigenvalues in
// increasing order. The first frame is fixed by making each column's largest
// component real positive; afterwards each column is rephased so that
// (psi_j(s_i), psi_j(s_{i+1})) is real positive. Throws DegenerateSpectrum
// when some gap drops to 1e-6 or below.
FrameEvolution frame_evolution_from_path(const HermitianPath& h, std::size_t steps,
                                         const Tolerances& tol = {});

// Planar rotation through pi/2 in the (j, k) plane (1-based), identity on the
// other levels: psi_j(s) = cos s e_j + sin s e_k, psi_k(s) = -sin s e_j + cos s e_k.
// Throws IndexError when j == k or either is out of range.
FrameEvolution engineered_swap_evolution(std::size_t n, std::size_t j, std::size_t k,
                                         std::size_t steps);

// diag(0, 2, 4, ...) plus cos(omega s) G_1 + sin(omega s) G_2 with seeded
// random Hermitian G's, on s in [0, 2]. Redrawn until the minimum gap along
// the path stays above 0.2.
HermitianPath random_hermitian_path(std::size_t n, std::uint64_t seed);

FrameEvolution random_frame_evolution(std::size_t n, std::uint64_t seed, std::size_t steps = 1001,
                                      const Tolerances& tol = {});

// Hermitian matrix with independent Gaussian entries (scale 1).
Matrix random_hermitian(std::size_t n, std::mt19937_64& rng);

}  // namespace phasekit
