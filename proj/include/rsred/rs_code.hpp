#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "rsred/algebra.hpp"
#include "rsred/gf2m.hpp"

namespace rsred {

// Thrown by checks that need every evaluation point to be nonzero.
struct ZeroEvaluationPointError : std::invalid_argument {
    ZeroEvaluationPointError()
        : std::invalid_argument("evaluation set must not contain zero for this check") {}
};

// Evaluation Reed-Solomon code: codewords are (f(x_1), ..., f(x_n)) for all
// polynomials f of degree < k.  The evaluation set is ordered data; callers
// rely on the position of each point.
struct RsCode {
    std::shared_ptr<const FieldContext> fc;
    std::vector<FieldElement> points;  // ordered, pairwise distinct
    std::size_t k = 0;

    std::size_t n() const { return points.size(); }
    std::size_t rho() const { return points.size() - k; }  // covering radius n - k
};

// Validates 0 < k < n <= 2^m and pairwise distinct points.
RsCode make_rs_code(std::shared_ptr<const FieldContext> fc, std::vector<FieldElement> points,
                    std::size_t k);

// Column scalers relating this code to its dual-form syndrome check:
// phi_j = 1 / D'(x_j) for D(X) the monic product of (X + x_j), equivalently
// the product of (x_j + beta) over all field elements beta outside the set.
struct GrsScalers {
    std::vector<FieldElement> phis;  // one per evaluation point, all nonzero
};

// Message must have degree < k.
std::vector<FieldElement> encode(const RsCode& code, const Poly& message);

// k x n matrix with rows 1, x_j, x_j^2, ...
Matrix generator_matrix(const RsCode& code);

// (n-k) x n power matrix acting as the parity check of the scaled code.
Matrix syndrome_matrix(const RsCode& code);

// Derivative formula, O(n^2) total.
GrsScalers grs_scalers(const RsCode& code);

std::vector<FieldElement> apply_scaling(const FieldContext& fc, const GrsScalers& s,
                                        const std::vector<FieldElement>& v);
std::vector<FieldElement> apply_scaling_inv(const FieldContext& fc, const GrsScalers& s,
                                            const std::vector<FieldElement>& v);

// Membership test computed along two independent routes (interpolation degree
// and scaled-vector syndrome); they must agree or a logic error is thrown.
bool is_codeword(const RsCode& code, const std::vector<FieldElement>& v);

std::size_t hamming_distance(const std::vector<FieldElement>& u,
                             const std::vector<FieldElement>& v);

// Generator scaled column-wise by phi_j.
Matrix scaled_generator_matrix(const RsCode& code, const GrsScalers& s);

// True when the scaled generator is annihilated by the syndrome matrix.
// Requires every evaluation point nonzero (ZeroEvaluationPointError otherwise).
bool grs_identity_holds(const RsCode& code, const GrsScalers& s);

}  // namespace rsred
