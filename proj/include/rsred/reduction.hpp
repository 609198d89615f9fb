#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "rsred/rs_code.hpp"

namespace rsred {

// Thrown by convert_std when |T| <= t + 1, which would leave no room for a
// positive code dimension.
struct InstanceTooSmallError : std::invalid_argument {
    explicit InstanceTooSmallError(const std::string& what) : std::invalid_argument(what) {}
};

// Matching instance over three coordinates, each ranging over 1..t.
// Triples are kept sorted lexicographically and are pairwise distinct.
struct ThreeDmInstance {
    unsigned t = 0;
    std::vector<std::array<unsigned, 3>> triples;

    friend bool operator==(const ThreeDmInstance&, const ThreeDmInstance&) = default;
};

// Validates ranges, sorts into canonical order, rejects duplicates.
ThreeDmInstance make_three_dm(unsigned t, std::vector<std::array<unsigned, 3>> triples);

// Decoding instance: find a codeword within Hamming distance w of target.
struct MldRsInstance {
    RsCode code;
    std::size_t w = 0;
    std::vector<FieldElement> target;
};

struct BitMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> a;

    BitMatrix() = default;
    BitMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    std::uint8_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    std::uint8_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;
};

enum class ReductionMode { Std, Prep };

// Intermediate values a converter produces, kept for independent re-checking.
struct ReductionTrace {
    ReductionMode mode = ReductionMode::Std;
    FieldElement gamma;
    std::vector<FieldElement> z;        // the w+1 leading coefficients of the scaled target
    GrsScalers scalers;                 // all n column scalers
    Matrix syndrome;                    // (n-k) x n
    std::optional<BitMatrix> w_matrix;  // prep mode: the GF(2) column-pattern matrix
    std::vector<std::uint8_t> chi;      // prep mode: indicator of the triple set, length t^3
};

struct Reduced {
    MldRsInstance instance;
    ReductionTrace trace;
};

// One field element per triple: bits a-1, t+b-1 and 2t+c-1 set.  Injective
// over the t^3 possible triples.  Needs fc.m >= 3t.
FieldElement encode_triple(const FieldContext& fc, unsigned t, std::array<unsigned, 3> triple);

// j-th triple (1-based) of the lexicographic enumeration of all t^3 triples.
std::array<unsigned, 3> canonical_triple(unsigned t, std::size_t j);

// Indicator of inst's triples over the canonical enumeration, length t^3.
std::vector<std::uint8_t> chi_of(const ThreeDmInstance& inst);

// j-th evaluation point (1-based, j <= 4t^3) of the preprocessing-hardness
// construction.  Needs fc.m >= 3(t^3 + t).  Depends only on t and j.
FieldElement encode_point_prep(const FieldContext& fc, unsigned t, std::size_t j);

// Target syndrome element for the plain construction: every basis coefficient
// one, assembled bitwise.
FieldElement gamma_std(const FieldContext& fc);

// Target syndrome element for the preprocessing construction: bit blocks
// (all-ones of width 3t, chi, chi, all-ones of width t^3).
FieldElement gamma_prep(const FieldContext& fc, unsigned t, const std::vector<std::uint8_t>& chi);

// Unique z with sum_j z_j x_j^(i-1) = 0 for i < w, = 1 for i = w, = gamma for
// i = w+1, in closed form: z_j = (gamma + sum_{i != j} x_i) / prod_{i != j}(x_j + x_i).
// xs must be pairwise distinct.
std::vector<FieldElement> target_coefficients(const FieldContext& fc,
                                              const std::vector<FieldElement>& xs,
                                              FieldElement gamma);

// GF(2) pattern matrix whose column j is the bit pattern of encode_point_prep(t, j);
// block layout [[U 0 0 0] [I I 0 0] [0 I I 0] [0 I I I]] with U the 3t x t^3
// matrix of canonical triple patterns.
BitMatrix build_w_matrix(unsigned t);

// Matching instance -> decoding instance over GF(2^(3t)) with n = |T|,
// k = |T| - (t+1), w = t.  Throws InstanceTooSmallError when |T| <= t+1.
Reduced convert_std(const ThreeDmInstance& inst);

// Matching instance -> decoding instance over GF(2^(3(t^3+t))) with n = 4t^3,
// k = 3t^3 - (t+1), w = t^3 + t.  The evaluation set depends only on t.
Reduced convert_prep(const ThreeDmInstance& inst);

// Every triple included independently with the given probability; the result
// is redrawn until |T| > t + 1.  Fully determined by the generator state.
ThreeDmInstance random_three_dm(unsigned t, double density, std::mt19937_64& rng);

}  // namespace rsred
