#pragma once

// Complex unit vectors, certified unitary matrices, tolerances and the
// phase helpers every other module builds on.
//
// Inner products are conjugate-linear in the FIRST slot:
//
//     (u, v) = sum_j conj(u_j) v_j
//
// so that the overlap matrix of two orthonormal frames reads
// a_jk = (psi_j, phi_k). Every Bargmann-invariant phase in this library
// flips sign under the opposite convention.

#include <complex>
#include <cstddef>
#include <numbers>

#include <Eigen/Dense>

#include "phasekit/errors.hpp"

namespace phasekit {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double pi = std::numbers::pi;

struct Tolerances {
    double norm = 1e-12;     // | |v|^2 - 1 | for unit vectors
    double unitary = 1e-10;  // max |M^H M - Id| for unitary matrices
    double generic = 1e-8;   // below this modulus a component / overlap counts as zero
    double phase = 1e-12;    // phase comparisons, radians

    // Throws InvalidArgument unless every field is finite and strictly positive.
    void validate() const;
};

// Normalized complex vector. Immutable after construction.
class UnitVector {
public:
    // Throws InvalidArgument on NaN/Inf or empty input, NotNormalized when
    // | |v|^2 - 1 | > tol_norm.
    explicit UnitVector(Vector components, double tol_norm = Tolerances{}.norm);

    // Rescales `v` to unit norm first. Throws InvalidArgument for a zero vector.
    static UnitVector normalized(const Vector& v);
    // k-th standard basis vector, 0-based.
    static UnitVector basis(std::size_t n, std::size_t k);

    std::size_t size() const noexcept { return static_cast<std::size_t>(v_.size()); }
    const Complex& operator[](std::size_t i) const { return v_(static_cast<Eigen::Index>(i)); }
    const Vector& values() const noexcept { return v_; }

    // Multiplies by e^{i theta}.
    UnitVector rephased(double theta) const;

private:
    struct Trusted {};
    UnitVector(Vector components, Trusted) : v_(std::move(components)) {}

    Vector v_;
};

// Square matrix certified unitary to a tolerance; records the deviation it
// was certified with. Obtain one through validate_unitary().
class UnitaryMatrix {
public:
    static UnitaryMatrix identity(std::size_t n);

    std::size_t size() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    // 0-based element access.
    const Complex& operator()(std::size_t row, std::size_t col) const {
        return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }
    // 1-based element access, a_{jk} with j, k in [1, n]. Throws IndexOutOfRange.
    const Complex& entry(std::size_t j, std::size_t k) const;

    const Matrix& matrix() const noexcept { return m_; }
    double deviation() const noexcept { return deviation_; }

    // Column `k` (0-based) as a unit vector, checked against `tol_norm`.
    UnitVector column(std::size_t k, double tol_norm = Tolerances{}.norm) const;

private:
    friend UnitaryMatrix validate_unitary(const Matrix&, const Tolerances&);
    UnitaryMatrix(Matrix m, double deviation) : m_(std::move(m)), deviation_(deviation) {}

    Matrix m_;
    double deviation_ = 0.0;
};

// max_{jk} |(M^H M - Id)_{jk}|
double unitarity_deviation(const Matrix& m);

// Certifies `m`. Throws DimensionMismatch for a non-square or empty matrix,
// InvalidArgument on NaN/Inf, NotUnitary when the deviation exceeds tol.unitary.
UnitaryMatrix validate_unitary(const Matrix& m, const Tolerances& tol = {});

// sum_j conj(u_j) v_j. Throws DimensionMismatch.
Complex inner_product(const UnitVector& u, const UnitVector& v);

// arg z in (-pi, pi]. Throws UndefinedPhase when |z| <= tol_generic.
double principal_arg(Complex z, double tol_generic = Tolerances{}.generic);

// Reduces any finite angle to (-pi, pi].
double wrap_phase(double theta);

// min(|a - b|, 2 pi - |a - b|) after reduction mod 2 pi.
double circular_distance(double a, double b);

// max_{jk} |a_jk - b_jk|; throws DimensionMismatch.
double max_abs_difference(const Matrix& a, const Matrix& b);

bool all_finite(const Matrix& m);

}  // namespace phasekit
