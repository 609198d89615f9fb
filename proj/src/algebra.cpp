#include "rsred/algebra.hpp"

#include <stdexcept>

namespace rsred {

Poly poly_normalize(std::vector<FieldElement> coeffs) {
    while (!coeffs.empty() && is_zero(coeffs.back())) coeffs.pop_back();
    return Poly{std::move(coeffs)};
}

Poly expand_roots(const FieldContext& fc, const std::vector<FieldElement>& roots) {
    std::vector<FieldElement> c{fe_one()};
    for (FieldElement r : roots) {
        // multiply by (X + r)
        c.push_back(fe_zero());
        for (std::size_t i = c.size() - 1; i > 0; --i)
            c[i] = add(c[i - 1], mul(fc, r, c[i]));
        c[0] = mul(fc, r, c[0]);
    }
    return Poly{std::move(c)};  // monic by construction, already normalized
}

FieldElement eval_poly(const FieldContext& fc, const Poly& p, FieldElement x) {
    FieldElement acc = fe_zero();
    for (std::size_t i = p.coeffs.size(); i-- > 0;) acc = add(mul(fc, acc, x), p.coeffs[i]);
    return acc;
}

Poly formal_derivative(const Poly& p) {
    std::vector<FieldElement> out;
    if (p.coeffs.size() > 1) {
        out.resize(p.coeffs.size() - 1);
        for (std::size_t i = 0; i + 1 < p.coeffs.size(); ++i)
            out[i] = (i + 1) % 2 == 1 ? p.coeffs[i + 1] : fe_zero();
    }
    return poly_normalize(std::move(out));
}

Poly interpolate(const FieldContext& fc,
                 const std::vector<std::pair<FieldElement, FieldElement>>& points) {
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i].first == points[j].first)
                throw std::invalid_argument("interpolation abscissas must be distinct");

    std::vector<FieldElement> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = points[i].first;
    Poly full = expand_roots(fc, xs);  // degree n, monic

    std::vector<FieldElement> acc(n, fe_zero());
    std::vector<FieldElement> q(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (is_zero(points[i].second)) continue;
        // synthetic division of full by (X + x_i); exact since x_i is a root
        FieldElement xi = points[i].first;
        q[n - 1] = full.coeffs[n];
        for (std::size_t j = n - 1; j-- > 0;) q[j] = add(full.coeffs[j + 1], mul(fc, xi, q[j + 1]));
        // scale so the i-th basis polynomial takes value y_i at x_i
        FieldElement denom = fe_zero();
        for (std::size_t j = q.size(); j-- > 0;) denom = add(mul(fc, denom, xi), q[j]);
        FieldElement s = mul(fc, points[i].second, inv(fc, denom));
        for (std::size_t j = 0; j < n; ++j) acc[j] = add(acc[j], mul(fc, s, q[j]));
    }
    return poly_normalize(std::move(acc));
}

Matrix power_matrix(const FieldContext& fc, const std::vector<FieldElement>& xs,
                    std::size_t rows) {
    Matrix m(rows, xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
        FieldElement cur = fe_one();
        for (std::size_t i = 0; i < rows; ++i) {
            m.at(i, j) = cur;
            cur = mul(fc, cur, xs[j]);
        }
    }
    return m;
}

FieldElement det_gauss(const FieldContext& fc, Matrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant needs a square matrix");
    const std::size_t n = m.rows;
    FieldElement det = fe_one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(m.at(p, c))) ++p;
        if (p == n) return fe_zero();
        if (p != c)
            for (std::size_t j = c; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
        FieldElement pivot = m.at(c, c);
        det = mul(fc, det, pivot);
        FieldElement pinv = inv(fc, pivot);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (is_zero(m.at(i, c))) continue;
            FieldElement f = mul(fc, m.at(i, c), pinv);
            for (std::size_t j = c; j < n; ++j)
                m.at(i, j) = add(m.at(i, j), mul(fc, f, m.at(c, j)));
        }
    }
    return det;
}

std::optional<std::vector<FieldElement>> nullspace_vector(const FieldContext& fc, Matrix m) {
    if (m.rows > m.cols) throw std::invalid_argument("nullspace_vector needs rows <= cols");
    const std::size_t rows = m.rows, cols = m.cols;

    // reduced row echelon form
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && is_zero(m.at(p, c))) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(p, j), m.at(r, j));
        FieldElement pinv = inv(fc, m.at(r, c));
        for (std::size_t j = 0; j < cols; ++j) m.at(r, j) = mul(fc, pinv, m.at(r, j));
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(m.at(i, c))) continue;
            FieldElement f = m.at(i, c);
            for (std::size_t j = 0; j < cols; ++j)
                m.at(i, j) = add(m.at(i, j), mul(fc, f, m.at(r, j)));
        }
        pivot_col.push_back(c);
        ++r;
    }

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::size_t free_col = cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    if (free_col == cols) return std::nullopt;

    std::vector<FieldElement> x(cols, fe_zero());
    x[free_col] = fe_one();
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        x[pivot_col[i]] = m.at(i, free_col);  // char 2, so no negation
    return x;
}

Matrix mat_mul(const FieldContext& fc, const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            FieldElement v = x.at(i, k);
            if (is_zero(v)) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                out.at(i, j) = add(out.at(i, j), mul(fc, v, y.at(k, j)));
        }
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

bool mat_is_zero(const Matrix& m) {
    for (const FieldElement& v : m.a)
        if (!is_zero(v)) return false;
    return true;
}

std::vector<FieldElement> mat_vec_mul(const FieldContext& fc, const Matrix& m,
                                      const std::vector<FieldElement>& v) {
    if (m.cols != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<FieldElement> out(m.rows, fe_zero());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            out[i] = add(out[i], mul(fc, m.at(i, j), v[j]));
    return out;
}

}  // namespace rsred
