#include "phasekit/core_types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phasekit {

void Tolerances::validate() const {
    for (double t : {norm, unitary, generic, phase}) {
        if (!std::isfinite(t) || t <= 0.0) {
            throw InvalidArgument("tolerances must be finite and strictly positive");
        }
    }
}

bool all_finite(const Matrix& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) return false;
        }
    }
    return true;
}

UnitVector::UnitVector(Vector components, double tol_norm) : v_(std::move(components)) {
    if (v_.size() == 0) throw InvalidArgument("unit vector must have at least one component");
    if (!all_finite(v_)) throw InvalidArgument("unit vector has non-finite components");
    const double dev = std::abs(v_.squaredNorm() - 1.0);
    if (dev > tol_norm) throw NotNormalized(dev);
}

UnitVector UnitVector::normalized(const Vector& v) {
    if (v.size() == 0 || !all_finite(v)) {
        throw InvalidArgument("cannot normalize an empty or non-finite vector");
    }
    const double norm = v.norm();
    if (norm == 0.0) throw InvalidArgument("cannot normalize the zero vector");
    return UnitVector(v / norm, Trusted{});
}

UnitVector UnitVector::basis(std::size_t n, std::size_t k) {
    if (k >= n) throw IndexOutOfRange("basis index out of range");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(n));
    v(static_cast<Eigen::Index>(k)) = 1.0;
    return UnitVector(std::move(v), Trusted{});
}

UnitVector UnitVector::rephased(double theta) const {
    return UnitVector(v_ * std::polar(1.0, theta), Trusted{});
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t n) {
    if (n == 0) throw DimensionMismatch("identity of dimension zero");
    const auto d = static_cast<Eigen::Index>(n);
    return UnitaryMatrix(Matrix::Identity(d, d), 0.0);
}

const Complex& UnitaryMatrix::entry(std::size_t j, std::size_t k) const {
    if (j < 1 || k < 1 || j > size() || k > size()) {
        throw IndexOutOfRange("entry (" + std::to_string(j) + ", " + std::to_string(k) + ") outside [1, " +
                              std::to_string(size()) + "]");
    }
    return (*this)(j - 1, k - 1);
}

UnitVector UnitaryMatrix::column(std::size_t k, double tol_norm) const {
    if (k >= size()) throw IndexOutOfRange("column index out of range");
    return UnitVector(m_.col(static_cast<Eigen::Index>(k)), tol_norm);
}

double unitarity_deviation(const Matrix& m) {
    const Matrix g = m.adjoint() * m - Matrix::Identity(m.cols(), m.cols());
    return g.cwiseAbs().maxCoeff();
}

UnitaryMatrix validate_unitary(const Matrix& m, const Tolerances& tol) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw DimensionMismatch("unitary matrix must be square and non-empty, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!all_finite(m)) throw InvalidArgument("matrix has non-finite entries");
    const double dev = unitarity_deviation(m);
    if (dev > tol.unitary) throw NotUnitary(dev);
    return UnitaryMatrix(m, dev);
}

Complex inner_product(const UnitVector& u, const UnitVector& v) {
    if (u.size() != v.size()) {
        throw DimensionMismatch("inner product of vectors with dimensions " +
                                std::to_string(u.size()) + " and " + std::to_string(v.size()));
    }
    // Eigen's dot() conjugates its left operand.
    return u.values().dot(v.values());
}

double principal_arg(Complex z, double tol_generic) {
    if (!(std::abs(z) > tol_generic)) {
        throw UndefinedPhase("phase undefined: |z| = " + std::to_string(std::abs(z)));
    }
    const double a = std::arg(z);
    return a <= -pi ? pi : a;
}

double wrap_phase(double theta) {
    if (!std::isfinite(theta)) throw InvalidArgument("cannot wrap a non-finite phase");
    double r = std::remainder(theta, 2.0 * pi);  // [-pi, pi]
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

double circular_distance(double a, double b) {
    const double d = std::abs(wrap_phase(a - b));
    return std::min(d, 2.0 * pi - d);
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch("matrix shapes differ");
    }
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace phasekit
