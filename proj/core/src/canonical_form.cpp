#include "phasekit/canonical_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phasekit {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

Matrix embed(const Matrix& block, std::size_t n) {
    Matrix out = Matrix::Identity(idx(n), idx(n));
    out.topLeftCorner(block.rows(), block.cols()) = block;
    return out;
}

}  // namespace

CanonicalParams::CanonicalParams(std::vector<UnitVector> vectors, double chi)
    : vectors_(std::move(vectors)), chi_(wrap_phase(chi)) {
    const std::size_t n = vectors_.size() + 1;
    for (std::size_t k = 0; k < vectors_.size(); ++k) {
        if (vectors_[k].size() != n - k) {
            throw DimensionMismatch("canonical vector " + std::to_string(k) + " has dimension " +
                                    std::to_string(vectors_[k].size()) + ", expected " +
                                    std::to_string(n - k));
        }
    }
}

std::size_t CanonicalParams::real_parameter_count() const noexcept {
    std::size_t count = 1;  // chi
    for (const auto& v : vectors_) count += 2 * v.size() - 1;
    return count;
}

RhoLadder rho_ladder(const UnitVector& zeta) {
    RhoLadder ladder;
    ladder.rho.reserve(zeta.size());
    double partial = 0.0;
    for (std::size_t j = 0; j < zeta.size(); ++j) {
        partial += std::norm(zeta[j]);
        ladder.rho.push_back(std::sqrt(partial));
    }
    return ladder;
}

Matrix coset_matrix(const Vector& zeta) {
    const Eigen::Index n = zeta.size();
    std::vector<double> rho(static_cast<std::size_t>(n));
    double partial = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        partial += std::norm(zeta(j));
        rho[static_cast<std::size_t>(j)] = std::sqrt(partial);
    }

    // 0-based transcription: row r, column c; rho[i] is rho_{i+1}.
    Matrix a = Matrix::Zero(n, n);
    for (Eigen::Index r = 1; r < n; ++r) {
        a(r, r - 1) = rho[static_cast<std::size_t>(r - 1)] / rho[static_cast<std::size_t>(r)];
    }
    for (Eigen::Index c = 0; c + 1 < n; ++c) {
        const double denom =
            rho[static_cast<std::size_t>(c)] * rho[static_cast<std::size_t>(c + 1)];
        const Complex head = -std::conj(zeta(c + 1)) / denom;
        for (Eigen::Index r = 0; r <= c; ++r) a(r, c) = head * zeta(r);
    }
    a.col(n - 1) = zeta;
    return a;
}

UnitaryMatrix coset_representative(const UnitVector& zeta, const Tolerances& tol) {
    if (!(std::abs(zeta[0]) > tol.generic)) {
        throw NonGenericVector("coset representative needs |zeta_1| > " +
                               std::to_string(tol.generic) + ", got " +
                               std::to_string(std::abs(zeta[0])));
    }
    return validate_unitary(coset_matrix(zeta.values()), tol);
}

CosetPeel peel_coset(const Matrix& block, const Tolerances& tol) {
    const Eigen::Index m = block.rows();
    const Vector last = block.col(m - 1);
    if (!(std::abs(last(0)) > tol.generic)) {
        throw NonGenericMatrix(static_cast<std::size_t>(m));
    }
    // Columns of a certified unitary are only normalized to tol.unitary.
    UnitVector zeta(last, std::max(tol.norm, 4.0 * tol.unitary));
    Matrix rest = coset_matrix(last).adjoint() * block;
    return CosetPeel{std::move(zeta), rest.topLeftCorner(m - 1, m - 1)};
}

CanonicalParams decompose(const UnitaryMatrix& a, const Tolerances& tol) {
    std::vector<UnitVector> vectors;
    vectors.reserve(a.size() > 0 ? a.size() - 1 : 0);
    Matrix block = a.matrix();
    while (block.rows() > 1) {
        CosetPeel peel = peel_coset(block, tol);
        vectors.push_back(std::move(peel.last_column));
        block = std::move(peel.residual);
    }
    return CanonicalParams(std::move(vectors), principal_arg(block(0, 0), tol.generic));
}

UnitaryMatrix reconstruct(const CanonicalParams& p, const Tolerances& tol) {
    const std::size_t n = p.dimension();
    Matrix product = Matrix::Identity(idx(n), idx(n));
    for (const auto& v : p.vectors()) {
        const Matrix factor = coset_representative(v, tol).matrix();
        product = product * embed(factor, n);
    }
    product.col(0) *= std::polar(1.0, p.chi());
    return validate_unitary(product, tol);
}

double genericity_margin(const CanonicalParams& p) {
    double margin = 1.0;
    for (const auto& v : p.vectors()) margin = std::min(margin, std::abs(v[0]));
    return margin;
}

std::vector<double> modulus_invariants(const CanonicalParams& p) {
    std::vector<double> out;
    const auto& vs = p.vectors();
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) {
        for (std::size_t j = 0; j + 1 < it->size(); ++j) out.push_back(std::abs((*it)[j]));
    }
    return out;
}

std::vector<Complex> phase_invariant_list(const CanonicalParams& p, const Tolerances& tol) {
    std::vector<Complex> out;
    const auto& vs = p.vectors();
    // vs[k] has dimension n-k; walk pairs (vs[k+1], vs[k]) from the bottom of the tower.
    for (std::size_t k = vs.size(); k-- > 1;) {
        const UnitVector& lower = vs[k];
        const UnitVector& upper = vs[k - 1];
        for (std::size_t j = 0; j + 1 < lower.size(); ++j) {
            const Complex f[4] = {lower[j], lower[j + 1], upper[j + 1], upper[j + 2]};
            for (const Complex& z : f) {
                if (!(std::abs(z) > tol.generic)) {
                    throw NonGenericVector("vanishing component in phase invariant at level " +
                                           std::to_string(upper.size()) + ", j = " +
                                           std::to_string(j + 1));
                }
            }
            out.push_back(f[0] * std::conj(f[1]) * std::conj(f[2]) * f[3]);
        }
    }
    return out;
}

std::size_t modulus_invariant_count(std::size_t n) { return n * (n - 1) / 2; }

std::size_t phase_invariant_count(std::size_t n) { return n < 2 ? 0 : (n - 1) * (n - 2) / 2; }

std::size_t chart_dimension(const CanonicalParams& p) { return p.real_parameter_count(); }

CanonicalParams perturb_coordinate(const CanonicalParams& p, std::size_t coordinate,
                                   double step) {
    if (coordinate >= chart_dimension(p)) throw IndexOutOfRange("chart coordinate out of range");
    std::vector<UnitVector> vectors = p.vectors();
    std::size_t offset = 0;
    for (auto& v : vectors) {
        const std::size_t m = v.size();
        if (coordinate < offset + m) {
            Vector w = v.values();
            w(idx(coordinate - offset)) *= std::polar(1.0, step);
            v = UnitVector(std::move(w));
            return CanonicalParams(std::move(vectors), p.chi());
        }
        offset += m;
        if (coordinate < offset + m - 1) {
            // Rotate the modulus profile r on S^{m-1} towards a tangent direction.
            Eigen::VectorXd r = v.values().cwiseAbs();
            Eigen::MatrixXd frame(idx(m), idx(m));
            frame.col(0) = r;
            frame.rightCols(idx(m - 1)).setIdentity();
            // Householder QR gives an orthonormal completion of r.
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame);
            const Eigen::MatrixXd q = qr.householderQ();
            const Eigen::VectorXd t = q.col(idx(coordinate - offset + 1));
            const Eigen::VectorXd r2 = std::cos(step) * r + std::sin(step) * t;
            Vector w(idx(m));
            for (std::size_t j = 0; j < m; ++j) {
                const Complex z = v[j];
                const Complex phase = std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0, 0.0);
                w(idx(j)) = r2(idx(j)) * phase;
            }
            v = UnitVector::normalized(w);
            return CanonicalParams(std::move(vectors), p.chi());
        }
        offset += m - 1;
    }
    return CanonicalParams(std::move(vectors), p.chi() + step);
}

}  // namespace phasekit
