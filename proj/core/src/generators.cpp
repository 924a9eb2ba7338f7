#include "phasekit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "phasekit/canonical_form.hpp"

namespace phasekit {

namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

Matrix ginibre(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Matrix z(idx(n), idx(n));
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
        for (Eigen::Index r = 0; r < z.rows(); ++r) z(r, c) = Complex(normal(rng), normal(rng));
    }
    return z;
}

// Q of a QR factorization with the phases of diag(R) moved into Q, so that
// Q stays close to `m` when `m` is already nearly unitary.
Matrix orthonormalize(const Matrix& m) {
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    const Matrix& r = qr.matrixQR();
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
        const Complex d = r(i, i);
        if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
    }
    return q;
}

double min_gap(const Eigen::VectorXd& eigenvalues) {
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 1; i < eigenvalues.size(); ++i) {
        gap = std::min(gap, eigenvalues(i) - eigenvalues(i - 1));
    }
    return gap;
}

}  // namespace

GenericSample sample_generic_unitary(std::size_t n, std::uint64_t seed, const Tolerances& tol) {
    if (n < 1) throw InvalidArgument("random unitary needs n >= 1");
    std::mt19937_64 rng(seed);
    std::size_t rejections = 0;
    while (true) {
        const UnitaryMatrix u = validate_unitary(orthonormalize(ginibre(n, rng)), tol);
        try {
            (void)decompose(u, tol);
            return GenericSample{u, rejections};
        } catch (const NonGenericMatrix&) {
            ++rejections;
        }
    }
}

UnitaryMatrix random_generic_unitary(std::size_t n, std::uint64_t seed, const Tolerances& tol) {
    return sample_generic_unitary(n, seed, tol).matrix;
}

UnitVector random_unit_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(idx(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(normal(rng), normal(rng));
    return UnitVector::normalized(v);
}

Matrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix h(idx(n), idx(n));
    for (Eigen::Index r = 0; r < h.rows(); ++r) {
        h(r, r) = normal(rng);
        for (Eigen::Index c = r + 1; c < h.cols(); ++c) {
            h(r, c) = Complex(normal(rng), normal(rng)) / std::sqrt(2.0);
            h(c, r) = std::conj(h(r, c));
        }
    }
    return h;
}

double CoefficientFunction::operator()(double s) const {
    double value = 0.0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) value = value * s + *it;
    for (const auto& c : cosines) value += c.amplitude * std::cos(c.frequency * s + c.phase);
    return value;
}

HermitianPath::HermitianPath(std::vector<Matrix> basis, std::vector<CoefficientFunction> coefficients,
                             double begin, double end)
    : basis_(std::move(basis)), coefficients_(std::move(coefficients)), begin_(begin), end_(end) {
    if (basis_.empty() || basis_.size() != coefficients_.size()) {
        throw InvalidArgument("Hermitian path needs one coefficient function per basis matrix");
    }
    if (!(end_ > begin_)) throw InvalidArgument("Hermitian path domain is empty");
    const Eigen::Index n = basis_.front().rows();
    for (const auto& b : basis_) {
        if (b.rows() != n || b.cols() != n || n == 0) {
            throw InvalidArgument("Hermitian basis matrices must share one square shape");
        }
        if ((b - b.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
            throw InvalidArgument("basis matrix is not Hermitian");
        }
    }
}

Matrix HermitianPath::sample(double s) const {
    const Eigen::Index n = basis_.front().rows();
    Matrix h = Matrix::Zero(n, n);
    for (std::size_t b = 0; b < basis_.size(); ++b) h += coefficients_[b](s) * basis_[b];
    return 0.5 * (h + h.adjoint());
}

FrameEvolution frame_evolution_from_path(const HermitianPath& h, std::size_t steps,
                                         const Tolerances& tol) {
    const std::vector<double> grid = uniform_grid(h.begin(), h.end(), steps);
    std::vector<UnitaryMatrix> frames;
    frames.reserve(steps);
    Matrix previous;
    for (double s : grid) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(h.sample(s));
        if (es.info() != Eigen::Success) throw Error("eigen-solve failed at s = " + std::to_string(s));
        const double gap = min_gap(es.eigenvalues());
        if (!(gap > 1e-6)) throw DegenerateSpectrum(s, gap);

        Matrix v = es.eigenvectors();
        if (unitarity_deviation(v) > 1e-12) v = orthonormalize(v);

        for (Eigen::Index j = 0; j < v.cols(); ++j) {
            Complex phase;
            if (previous.size() == 0) {
                Eigen::Index top = 0;
                v.col(j).cwiseAbs().maxCoeff(&top);
                phase = v(top, j);
            } else {
                phase = previous.col(j).dot(v.col(j));
            }
            if (std::abs(phase) > 0.0) v.col(j) *= std::conj(phase) / std::abs(phase);
        }
        frames.push_back(validate_unitary(v, tol));
        previous = std::move(v);
    }
    return FrameEvolution(grid, std::move(frames));
}

FrameEvolution engineered_swap_evolution(std::size_t n, std::size_t j, std::size_t k,
                                         std::size_t steps) {
    if (j == k || j < 1 || k < 1 || j > n || k > n) {
        throw IndexError("swap levels must be distinct and within [1, n]");
    }
    const std::vector<double> grid = uniform_grid(0.0, pi / 2.0, steps);
    std::vector<UnitaryMatrix> frames;
    frames.reserve(steps);
    const Eigen::Index a = idx(j - 1);
    const Eigen::Index b = idx(k - 1);
    for (double s : grid) {
        Matrix m = Matrix::Identity(idx(n), idx(n));
        m(a, a) = std::cos(s);
        m(b, a) = std::sin(s);
        m(a, b) = -std::sin(s);
        m(b, b) = std::cos(s);
        frames.push_back(validate_unitary(m));
    }
    return FrameEvolution(grid, std::move(frames));
}

HermitianPath random_hermitian_path(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("Hermitian path needs n >= 1");
    std::mt19937_64 rng(seed);
    constexpr double omega = 1.5;
    while (true) {
        Matrix d = Matrix::Zero(idx(n), idx(n));
        for (std::size_t i = 0; i < n; ++i) d(idx(i), idx(i)) = 2.0 * static_cast<double>(i);
        std::vector<Matrix> basis{d, 0.5 * random_hermitian(n, rng), 0.5 * random_hermitian(n, rng)};
        std::vector<CoefficientFunction> coeffs{
            CoefficientFunction{{1.0}, {}},
            CoefficientFunction{{}, {{1.0, omega, 0.0}}},
            CoefficientFunction{{}, {{1.0, omega, -pi / 2.0}}},
        };
        HermitianPath path(std::move(basis), std::move(coeffs), 0.0, 2.0);

        double gap = std::numeric_limits<double>::infinity();
        for (double s : uniform_grid(path.begin(), path.end(), 201)) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(path.sample(s), Eigen::EigenvaluesOnly);
            gap = std::min(gap, min_gap(es.eigenvalues()));
        }
        if (gap > 0.2) return path;
    }
}

FrameEvolution random_frame_evolution(std::size_t n, std::uint64_t seed, std::size_t steps,
                                      const Tolerances& tol) {
    return frame_evolution_from_path(random_hermitian_path(n, seed), steps, tol);
}

}  // namespace phasekit
