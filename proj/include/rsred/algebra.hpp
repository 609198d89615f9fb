#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rsred/gf2m.hpp"

namespace rsred {

// Dense univariate polynomial over GF(2^m); coeffs[i] multiplies X^i.
// Invariant: no trailing zero coefficient, so the zero polynomial is an
// empty vector and degree() is disengaged for it.
struct Poly {
    std::vector<FieldElement> coeffs;

    std::optional<std::size_t> degree() const {
        if (coeffs.empty()) return std::nullopt;
        return coeffs.size() - 1;
    }

    friend bool operator==(const Poly&, const Poly&) = default;
};

// Drops trailing zeros so the representation invariant holds.
Poly poly_normalize(std::vector<FieldElement> coeffs);

// Monic product of (X + r) over the given roots; empty input gives 1.
Poly expand_roots(const FieldContext& fc, const std::vector<FieldElement>& roots);

FieldElement eval_poly(const FieldContext& fc, const Poly& p, FieldElement x);

// Formal derivative in characteristic 2: only odd-degree terms survive.
Poly formal_derivative(const Poly& p);

// Unique polynomial of degree < points.size() through the given points.
// Throws std::invalid_argument on a repeated abscissa.
Poly interpolate(const FieldContext& fc,
                 const std::vector<std::pair<FieldElement, FieldElement>>& points);

// Row-major dense matrix over GF(2^m).
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<FieldElement> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

    FieldElement& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const FieldElement& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

// rows x xs.size() matrix whose (i, j) entry is xs[j]^i for i in [0, rows);
// the first row is all ones.
Matrix power_matrix(const FieldContext& fc, const std::vector<FieldElement>& xs,
                    std::size_t rows);

// Gaussian elimination with the first nonzero pivot in row order.  Row swaps
// do not affect the result in characteristic 2.  Throws on non-square input.
FieldElement det_gauss(const FieldContext& fc, Matrix m);

// One canonical kernel vector of a square-or-wide matrix: the free variable of
// lowest column index is set to one and all other free variables to zero.
// Disengaged when the kernel is trivial.
std::optional<std::vector<FieldElement>> nullspace_vector(const FieldContext& fc, Matrix m);

Matrix mat_mul(const FieldContext& fc, const Matrix& x, const Matrix& y);
Matrix transpose(const Matrix& m);
bool mat_is_zero(const Matrix& m);

std::vector<FieldElement> mat_vec_mul(const FieldContext& fc, const Matrix& m,
                                      const std::vector<FieldElement>& v);

}  // namespace rsred
