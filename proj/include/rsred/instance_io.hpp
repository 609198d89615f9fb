#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "rsred/oracles.hpp"

namespace rsred {

// Any malformed, out-of-range or non-canonical file content.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Decoding instance plus the optional conversion trace stored alongside it.
struct MldRsFile {
    MldRsInstance instance;
    std::optional<TargetTrace> trace;
};

std::string mode_name(ReductionMode mode);
ReductionMode mode_from_name(const std::string& name);  // ParseError on unknown names

// Single-line canonical JSON, terminated by one newline.  Matching-instance
// files carry {type, t, triples}; decoding-instance files carry {type, m,
// modulus, k, w, evaluation_set, target[, trace]} with field elements as
// lowercase minimal hex.
std::string serialize_three_dm(const ThreeDmInstance& inst);
std::string serialize_mldrs(const MldRsInstance& inst, const std::optional<TargetTrace>& trace);

using ParsedFile = std::variant<ThreeDmInstance, MldRsFile>;

// Dispatches on the "type" key.  Rebuilds the field from m and requires the
// stored modulus to be the canonical one; validates every range, length and
// element bound.  Throws ParseError.
ParsedFile parse_instance(const std::string& text);

std::string read_file(const std::string& path);

// Writes to a sibling temp file, then renames over the destination.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace rsred
