#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsred {

using Uint128 = unsigned __int128;

// Element of GF(2^m) in the polynomial basis {1, alpha, ..., alpha^(m-1)}.
// Bit i of (hi:lo) holds the coefficient of alpha^i.  Bits at positions >= m
// are always zero for elements owned by a context with that m.
struct FieldElement {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

// Thrown by inv() when the argument is zero.
struct ZeroDivisionError : std::domain_error {
    ZeroDivisionError() : std::domain_error("inverse of zero") {}
};

// Thrown when factoring 2^m - 1 exhausts its deterministic iteration budget.
struct FactorBudgetError : std::runtime_error {
    explicit FactorBudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Immutable description of one GF(2^m).  Safe to share across threads once built.
struct FieldContext {
    unsigned m = 0;
    FieldElement modulus_low;            // reduction polynomial minus its monic X^m term
    FieldElement alpha;                  // residue of X, a certified generator of the unit group
    Uint128 order = 0;                   // 2^m - 1
    std::vector<Uint128> factors;        // prime factorization of order, ascending, with multiplicity
    std::vector<std::uint32_t> exp_tab;  // alpha^i for i in [0, order); filled only when m <= 16
    std::vector<std::uint32_t> log_tab;  // discrete log, indexed by element bits; entry 0 unused
};

// Builds GF(2^m) for 1 <= m <= 128 deterministically: the reduction polynomial is
// the lexicographically first (as an integer) monic degree-m polynomial that is
// irreducible and whose root generates the full multiplicative group.
FieldContext build_field(unsigned m);

FieldElement add(FieldElement a, FieldElement b);
FieldElement mul(const FieldContext& fc, FieldElement a, FieldElement b);
FieldElement inv(const FieldContext& fc, FieldElement a);  // throws ZeroDivisionError on zero
FieldElement pow(const FieldContext& fc, FieldElement a, Uint128 e);  // pow(0, 0) == 1

inline bool is_zero(FieldElement a) { return (a.lo | a.hi) == 0; }
inline FieldElement fe_zero() { return {}; }
inline FieldElement fe_one() { return {1, 0}; }
inline FieldElement fe_from_u64(std::uint64_t v) { return {v, 0}; }

inline bool fe_bit(FieldElement a, unsigned i) {
    return ((i < 64 ? a.lo >> i : a.hi >> (i - 64)) & 1) != 0;
}

inline void fe_set_bit(FieldElement& a, unsigned i) {
    if (i < 64)
        a.lo |= std::uint64_t{1} << i;
    else
        a.hi |= std::uint64_t{1} << (i - 64);
}

// All m low bits set; the element whose basis coefficients are all one.
FieldElement fe_all_ones(unsigned m);

// True when a has no bits at positions >= m.
bool fe_fits(unsigned m, FieldElement a);

// Strict ordering on the underlying bit patterns (not a field-theoretic order);
// used for deterministic tie-breaking.
inline bool fe_less(FieldElement a, FieldElement b) {
    return a.hi != b.hi ? a.hi < b.hi : a.lo < b.lo;
}

// Lowercase minimal hex with 0x prefix, e.g. "0x0", "0x3f".
std::string to_hex(FieldElement a);
// Accepts what to_hex produces plus uppercase digits; throws std::invalid_argument otherwise.
FieldElement from_hex(const std::string& s);
// Full m+1 bit reduction polynomial as one hex integer (monic bit included).
std::string modulus_hex(const FieldContext& fc);

// Re-checks the certificate carried by a context: the factor list multiplies
// back to 2^m - 1, every factor is prime, and alpha has exact order 2^m - 1.
bool certify_field(const FieldContext& fc);

// Deterministic factorization (trial division, then Miller-Rabin plus Pollard rho
// with a fixed parameter schedule).  Ascending, with multiplicity.
std::vector<Uint128> factor_u128(Uint128 n);

bool is_prime_u128(Uint128 n);

std::string u128_to_string(Uint128 v);

}  // namespace rsred
