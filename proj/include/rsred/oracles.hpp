#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rsred/reduction.hpp"

namespace rsred {

// Thrown by the agreement decoder when n - radius < k and no fallback applies.
struct RadiusTooLargeError : std::invalid_argument {
    explicit RadiusTooLargeError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when an exhaustive search would exceed its fixed budget.
struct SearchBudgetError : std::runtime_error {
    explicit SearchBudgetError(const std::string& what) : std::runtime_error(what) {}
};

struct DecodeResult {
    bool found = false;
    std::vector<FieldElement> codeword;       // engaged only when found
    std::size_t distance = 0;                 // Hamming distance to the target when found
    std::vector<std::size_t> witness_support; // positions where codeword and target differ
};

// Exhaustive matching search: picks one triple per first coordinate in
// ascending order, pruning on used second and third coordinates.  Returns the
// lexicographically least matching, as a sorted triple list.
std::optional<std::vector<std::array<unsigned, 3>>> solve_3dm(const ThreeDmInstance& inst);

// First w-subset of positions (in lexicographic order) whose elements sum to
// gamma; ascending 0-based positions.
std::optional<std::vector<std::size_t>> subset_sum_witness(const FieldContext& fc,
                                                           const std::vector<FieldElement>& xs,
                                                           std::size_t w, FieldElement gamma);

// Maximum-likelihood decoding by exhaustive agreement sets: every (n - radius)-
// subset of positions is interpolated and interpolants of degree < k are
// candidate codewords.  Complete whenever n - radius >= k.  Returns the
// minimum-distance codeword; ties break toward the lexicographically least
// codeword so results do not depend on enumeration order.
DecodeResult ml_decode_agreement(const RsCode& code, const std::vector<FieldElement>& y,
                                 std::size_t radius);

// Scans all q^k codewords; refused (SearchBudgetError) when q^k > 2^24.
DecodeResult ml_decode_enumerate(const RsCode& code, const std::vector<FieldElement>& y,
                                 std::size_t radius);

// Agreement method when applicable, otherwise the enumeration fallback when it
// fits the budget, otherwise RadiusTooLargeError.
DecodeResult ml_decode_bruteforce(const RsCode& code, const std::vector<FieldElement>& y,
                                  std::size_t radius);

// (gamma + sum xs) * prod_{a<b} (xs[b] + xs[a]); the closed form of the
// witness matrix determinant.
FieldElement det_closed_form(const FieldContext& fc, const std::vector<FieldElement>& xs,
                             FieldElement gamma);

// (w+1) x (w+1) matrix whose first w columns are the powers 0..w of each x and
// whose last column is (0, ..., 0, 1, gamma)^T; singular exactly when some
// w-subset sums to gamma.
Matrix witness_matrix(const FieldContext& fc, const std::vector<FieldElement>& xs,
                      FieldElement gamma);

// Exhaustive search for a weight-(t^3+t) GF(2) vector v with W v^T matching the
// prep gamma pattern.  Only the first block varies; the rest is forced, so
// 2^(t^3) candidates are scanned (t <= 3).  Returns the accepted v whose
// support reads least as an ascending position list (the same canonical choice
// the matching solver makes), one byte per position.
std::optional<std::vector<std::uint8_t>> prep_witness_exhaustive(const ThreeDmInstance& inst);

struct DeepHoleResult {
    std::size_t distance = 0;
    bool is_deep_hole = false;  // distance equals the covering radius n - k
};

// Decodes at radius n-k-1; absence pins the distance at the covering radius.
DeepHoleResult classify_deep_hole(const RsCode& code, const std::vector<FieldElement>& y);

// Definition-product scalers: phi_j as the product of (x_j + beta) over every
// field element beta outside the evaluation set.  Needs q <= 2^16.
GrsScalers grs_scalers_direct(const RsCode& code);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    std::string witness;  // counterexample description, empty when none
};

struct Report {
    std::vector<CheckResult> checks;

    bool overall() const {
        for (const CheckResult& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// One line per check: "CHECK <name>: PASS|FAIL — <detail>".
std::string render_report(const Report& rep);

// The portion of a conversion trace that instance files can carry.
struct TargetTrace {
    ReductionMode mode = ReductionMode::Std;
    FieldElement gamma;
    std::vector<FieldElement> z;
    std::vector<FieldElement> phis;
};

TargetTrace target_trace(const ReductionTrace& trace);

// Runs the conversion on a matching instance and checks the full certificate
// chain: field, points, scalers, syndrome identity, generator orthogonality,
// and the mode-specific oracle agreements.
Report verify_reduction(const ThreeDmInstance& inst, ReductionMode mode);

// Same certificate chain for an already-built decoding instance (typically
// parsed from a file), including reconstruction of the matching instance from
// the structure and a full re-conversion comparison.  The trace, when present,
// is cross-checked and its mode wins over mode_hint.
Report verify_mldrs(const MldRsInstance& inst, const std::optional<TargetTrace>& trace,
                    ReductionMode mode_hint);

}  // namespace rsred
