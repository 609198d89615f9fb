#include "rsred/rs_code.hpp"

#include <stdexcept>

namespace rsred {

RsCode make_rs_code(std::shared_ptr<const FieldContext> fc, std::vector<FieldElement> points,
                    std::size_t k) {
    if (!fc) throw std::invalid_argument("code needs a field context");
    const std::size_t n = points.size();
    if (k < 1 || k >= n) throw std::invalid_argument("dimension must satisfy 0 < k < n");
    if (fc->m < 64 && n > (std::size_t{1} << fc->m))
        throw std::invalid_argument("more evaluation points than field elements");
    for (std::size_t i = 0; i < n; ++i) {
        if (!fe_fits(fc->m, points[i]))
            throw std::invalid_argument("evaluation point outside the field");
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("evaluation points must be distinct");
    }
    return RsCode{std::move(fc), std::move(points), k};
}

std::vector<FieldElement> encode(const RsCode& code, const Poly& message) {
    auto deg = message.degree();
    if (deg && *deg >= code.k) throw std::invalid_argument("message degree must be below k");
    std::vector<FieldElement> out(code.n());
    for (std::size_t j = 0; j < code.n(); ++j)
        out[j] = eval_poly(*code.fc, message, code.points[j]);
    return out;
}

Matrix generator_matrix(const RsCode& code) { return power_matrix(*code.fc, code.points, code.k); }

Matrix syndrome_matrix(const RsCode& code) {
    return power_matrix(*code.fc, code.points, code.n() - code.k);
}

GrsScalers grs_scalers(const RsCode& code) {
    const FieldContext& fc = *code.fc;
    Poly full = expand_roots(fc, code.points);
    Poly deriv = formal_derivative(full);
    GrsScalers s;
    s.phis.resize(code.n());
    for (std::size_t j = 0; j < code.n(); ++j)
        s.phis[j] = inv(fc, eval_poly(fc, deriv, code.points[j]));
    return s;
}

std::vector<FieldElement> apply_scaling(const FieldContext& fc, const GrsScalers& s,
                                        const std::vector<FieldElement>& v) {
    if (v.size() != s.phis.size()) throw std::invalid_argument("scaling length mismatch");
    std::vector<FieldElement> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = mul(fc, s.phis[j], v[j]);
    return out;
}

std::vector<FieldElement> apply_scaling_inv(const FieldContext& fc, const GrsScalers& s,
                                            const std::vector<FieldElement>& v) {
    if (v.size() != s.phis.size()) throw std::invalid_argument("scaling length mismatch");
    std::vector<FieldElement> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[j] = mul(fc, inv(fc, s.phis[j]), v[j]);
    return out;
}

bool is_codeword(const RsCode& code, const std::vector<FieldElement>& v) {
    if (v.size() != code.n()) throw std::invalid_argument("vector length must equal n");
    const FieldContext& fc = *code.fc;

    // route one: the interpolant through all n positions has degree < k
    std::vector<std::pair<FieldElement, FieldElement>> pts(code.n());
    for (std::size_t j = 0; j < code.n(); ++j) pts[j] = {code.points[j], v[j]};
    Poly f = interpolate(fc, pts);
    auto deg = f.degree();
    bool by_degree = !deg || *deg < code.k;

    // route two: the scaled vector is annihilated by the syndrome matrix
    std::vector<FieldElement> scaled = apply_scaling(fc, grs_scalers(code), v);
    Matrix h = syndrome_matrix(code);
    bool by_syndrome = true;
    for (FieldElement e : mat_vec_mul(fc, h, scaled))
        if (!is_zero(e)) by_syndrome = false;

    if (by_degree != by_syndrome)
        throw std::logic_error("codeword membership routes disagree");
    return by_degree;
}

std::size_t hamming_distance(const std::vector<FieldElement>& u,
                             const std::vector<FieldElement>& v) {
    if (u.size() != v.size()) throw std::invalid_argument("distance needs equal lengths");
    std::size_t d = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (!(u[i] == v[i])) ++d;
    return d;
}

Matrix scaled_generator_matrix(const RsCode& code, const GrsScalers& s) {
    if (s.phis.size() != code.n()) throw std::invalid_argument("scaler length mismatch");
    Matrix g = generator_matrix(code);
    for (std::size_t i = 0; i < g.rows; ++i)
        for (std::size_t j = 0; j < g.cols; ++j) g.at(i, j) = mul(*code.fc, g.at(i, j), s.phis[j]);
    return g;
}

bool grs_identity_holds(const RsCode& code, const GrsScalers& s) {
    for (FieldElement p : code.points)
        if (is_zero(p)) throw ZeroEvaluationPointError();
    Matrix prod = mat_mul(*code.fc, scaled_generator_matrix(code, s), transpose(syndrome_matrix(code)));
    return mat_is_zero(prod);
}

}  // namespace rsred
