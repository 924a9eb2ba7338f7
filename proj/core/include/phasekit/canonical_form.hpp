#pragma once

// Canonical factorization of generic U(n) matrices into a tower of coset
// representatives,
//
//     A = A_n(zeta) A_{n-1}(eta) ... A_2(alpha) A_1(chi),
//
// where A_m(v) is the unique U(m) element with last column v, zeros two or
// more steps below the diagonal and a real positive first subdiagonal.
// Lower factors act on the FIRST m dimensions of C^n.

#include <cstddef>
#include <vector>

#include "phasekit/core_types.hpp"

namespace phasekit {

// vectors[k] has dimension n - k; the list runs zeta, eta, ..., alpha.
// chi is the residual U(1) phase, stored in (-pi, pi].
class CanonicalParams {
public:
    // Throws DimensionMismatch when the vector dimensions are not n, n-1, ..., 2.
    CanonicalParams(std::vector<UnitVector> vectors, double chi);

    std::size_t dimension() const noexcept { return vectors_.size() + 1; }
    const std::vector<UnitVector>& vectors() const noexcept { return vectors_; }
    double chi() const noexcept { return chi_; }

    // sum_{m=2..n} (2m - 1) + 1, counted from the stored vectors.
    std::size_t real_parameter_count() const noexcept;

private:
    std::vector<UnitVector> vectors_;
    double chi_;
};

// rho_j = (|v_1|^2 + ... + |v_j|^2)^{1/2}, j = 1..n.
struct RhoLadder {
    std::vector<double> rho;
};

RhoLadder rho_ladder(const UnitVector& zeta);

// Closed-form coset representative A_n(zeta). Throws NonGenericVector when
// |zeta_1| <= tol.generic.
UnitaryMatrix coset_representative(const UnitVector& zeta, const Tolerances& tol = {});

// Unchecked m x m matrix of coset_representative(); zeta_1 must be nonzero.
Matrix coset_matrix(const Vector& zeta);

// One peeling step: given an m x m unitary block B, returns its last column
// and the leading (m-1) x (m-1) block of A_m(zeta)^H B.
struct CosetPeel {
    UnitVector last_column;
    Matrix residual;
};

// Throws NonGenericMatrix(m) when |B_{1m}| <= tol.generic.
CosetPeel peel_coset(const Matrix& block, const Tolerances& tol = {});

// Throws NonGenericMatrix naming the first failing level m = n, n-1, ..., 2.
CanonicalParams decompose(const UnitaryMatrix& a, const Tolerances& tol = {});

UnitaryMatrix reconstruct(const CanonicalParams& p, const Tolerances& tol = {});

// min_m |v^{(m)}_1| over the tower: how close the factorization came to the
// non-generic boundary. 1 for n = 1.
double genericity_margin(const CanonicalParams& p);

// |alpha_1|, |beta_1|, |beta_2|, ..., |zeta_1|, ..., |zeta_{n-1}|.
std::vector<double> modulus_invariants(const CanonicalParams& p);

// For each adjacent pair (u of dim m, v of dim m+1), smallest first:
// u_j conj(u_{j+1}) conj(v_{j+1}) v_{j+2}, j = 1..m-1.
// Throws NonGenericVector when a factor has modulus <= tol.generic.
std::vector<Complex> phase_invariant_list(const CanonicalParams& p, const Tolerances& tol = {});

std::size_t modulus_invariant_count(std::size_t n);  // n(n-1)/2
std::size_t phase_invariant_count(std::size_t n);    // (n-1)(n-2)/2

// A local chart with exactly n^2 real coordinates around a generic point.
// Per vector of dimension m (zeta first): m component phases, then m-1
// rotations of the modulus profile along an orthonormal basis of its tangent
// space on S^{m-1}; the last coordinate is chi.
std::size_t chart_dimension(const CanonicalParams& p);
CanonicalParams perturb_coordinate(const CanonicalParams& p, std::size_t coordinate, double step);

}  // namespace phasekit
