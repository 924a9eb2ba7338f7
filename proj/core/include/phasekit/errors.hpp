#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phasekit {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NotNormalized : public Error {
public:
    NotNormalized(double deviation)
        : Error("vector is not normalized: | |v|^2 - 1 | = " + std::to_string(deviation)),
          deviation_(deviation) {}
    double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

class NotUnitary : public Error {
public:
    NotUnitary(double deviation)
        : Error("matrix is not unitary: max |M^H M - Id| = " + std::to_string(deviation)),
          deviation_(deviation) {}
    double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

// Phase of a (near) zero complex number.
class UndefinedPhase : public Error {
public:
    using Error::Error;
};

// A unit vector whose leading component is too small to build a coset
// representative from.
class NonGenericVector : public Error {
public:
    using Error::Error;
};

// Decomposition failed at recursion level `level` (the size of the block
// whose last column had a vanishing first component).
class NonGenericMatrix : public Error {
public:
    explicit NonGenericMatrix(std::size_t level)
        : Error("matrix is not generic: vanishing leading component at level " +
                std::to_string(level)),
          level_(level) {}
    std::size_t level() const noexcept { return level_; }

private:
    std::size_t level_;
};

// An inner product needed to anchor a Bargmann reduction vanishes.
class NonGenericAnchor : public Error {
public:
    NonGenericAnchor(std::size_t first, std::size_t second)
        : Error("vanishing anchor inner product between positions " + std::to_string(first) +
                " and " + std::to_string(second)),
          first_(first), second_(second) {}
    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class IndexOrder : public IndexError {
public:
    using IndexError::IndexError;
};

class IndexOutOfRange : public IndexError {
public:
    using IndexError::IndexError;
};

class DuplicateIndex : public IndexError {
public:
    using IndexError::IndexError;
};

class PatternNotAlternating : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

// Successive states along a sampled curve are too far apart.
class CurveNotSmooth : public Error {
public:
    CurveNotSmooth(std::size_t step, double overlap)
        : Error("curve under-resolved at step " + std::to_string(step) +
                ": |overlap| = " + std::to_string(overlap)),
          step_(step), overlap_(overlap) {}
    std::size_t step() const noexcept { return step_; }
    double overlap() const noexcept { return overlap_; }

private:
    std::size_t step_;
    double overlap_;
};

class DegenerateSpectrum : public Error {
public:
    DegenerateSpectrum(double s, double gap)
        : Error("degenerate spectrum at s = " + std::to_string(s) +
                " (gap " + std::to_string(gap) + ")"),
          s_(s), gap_(gap) {}
    double parameter() const noexcept { return s_; }
    double gap() const noexcept { return gap_; }

private:
    double s_;
    double gap_;
};

}  // namespace phasekit
