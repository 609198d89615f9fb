#include "rsred/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rsred {

namespace {

using ordered_json = nlohmann::ordered_json;

FieldElement parse_element(const FieldContext& fc, const ordered_json& node,
                           const std::string& where) {
    if (!node.is_string()) throw ParseError(where + ": expected a hex string");
    FieldElement x;
    try {
        x = from_hex(node.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(where + ": " + e.what());
    }
    if (!fe_fits(fc.m, x))
        throw ParseError(where + ": value " + node.get<std::string>() +
                         " does not fit a degree-" + std::to_string(fc.m) + " field");
    return x;
}

std::vector<FieldElement> parse_element_array(const FieldContext& fc, const ordered_json& node,
                                              const std::string& where) {
    if (!node.is_array()) throw ParseError(where + ": expected an array");
    std::vector<FieldElement> out;
    out.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i)
        out.push_back(parse_element(fc, node[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

const ordered_json& require(const ordered_json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

std::uint64_t require_uint(const ordered_json& doc, const char* key) {
    const ordered_json& node = require(doc, key);
    if (!node.is_number_unsigned())
        throw ParseError(std::string("key \"") + key + "\" must be a nonnegative integer");
    return node.get<std::uint64_t>();
}

ThreeDmInstance parse_three_dm(const ordered_json& doc) {
    std::uint64_t t = require_uint(doc, "t");
    if (t < 1 || t > 64) throw ParseError("t out of range (1..64)");
    const ordered_json& arr = require(doc, "triples");
    if (!arr.is_array()) throw ParseError("triples: expected an array");
    std::vector<std::array<unsigned, 3>> triples;
    triples.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const ordered_json& tr = arr[i];
        if (!tr.is_array() || tr.size() != 3)
            throw ParseError("triples[" + std::to_string(i) + "]: expected three coordinates");
        std::array<unsigned, 3> out{};
        for (std::size_t c = 0; c < 3; ++c) {
            if (!tr[c].is_number_unsigned())
                throw ParseError("triples[" + std::to_string(i) +
                                 "]: coordinates must be nonnegative integers");
            std::uint64_t v = tr[c].get<std::uint64_t>();
            if (v < 1 || v > t)
                throw ParseError("triples[" + std::to_string(i) + "]: coordinate " +
                                 std::to_string(v) + " outside 1.." + std::to_string(t));
            out[c] = (unsigned)v;
        }
        triples.push_back(out);
    }
    try {
        return make_three_dm((unsigned)t, std::move(triples));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

MldRsFile parse_mldrs(const ordered_json& doc) {
    std::uint64_t m = require_uint(doc, "m");
    if (m < 1 || m > 128) throw ParseError("m out of range (1..128)");
    auto fc = std::make_shared<const FieldContext>(build_field((unsigned)m));

    const ordered_json& mod = require(doc, "modulus");
    if (!mod.is_string() || mod.get<std::string>() != modulus_hex(*fc))
        throw ParseError("modulus is not the canonical degree-" + std::to_string(m) +
                         " choice " + modulus_hex(*fc));

    std::uint64_t k = require_uint(doc, "k");
    std::uint64_t w = require_uint(doc, "w");
    std::vector<FieldElement> points = parse_element_array(*fc, require(doc, "evaluation_set"),
                                                           "evaluation_set");
    std::vector<FieldElement> target = parse_element_array(*fc, require(doc, "target"), "target");

    const std::size_t n = points.size();
    if (k < 1 || k >= n) throw ParseError("k out of range (1..n-1)");
    if (w < 1 || w > n) throw ParseError("w out of range (1..n)");
    if (target.size() != n)
        throw ParseError("target length " + std::to_string(target.size()) +
                         " does not match the evaluation set size " + std::to_string(n));

    MldRsFile out;
    try {
        out.instance.code = make_rs_code(fc, std::move(points), (std::size_t)k);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    out.instance.w = (std::size_t)w;
    out.instance.target = std::move(target);

    auto it = doc.find("trace");
    if (it != doc.end()) {
        const ordered_json& tr = *it;
        if (!tr.is_object()) throw ParseError("trace: expected an object");
        TargetTrace trace;
        const ordered_json& mode = require(tr, "mode");
        if (!mode.is_string()) throw ParseError("trace.mode: expected a string");
        trace.mode = mode_from_name(mode.get<std::string>());
        trace.gamma = parse_element(*fc, require(tr, "gamma"), "trace.gamma");
        trace.z = parse_element_array(*fc, require(tr, "z"), "trace.z");
        trace.phis = parse_element_array(*fc, require(tr, "phis"), "trace.phis");
        if (trace.z.size() != (std::size_t)w + 1)
            throw ParseError("trace.z must hold w+1 = " + std::to_string(w + 1) + " elements");
        if (trace.phis.size() != n)
            throw ParseError("trace.phis must hold one element per evaluation point");
        for (std::size_t j = 0; j < n; ++j)
            if (is_zero(trace.phis[j]))
                throw ParseError("trace.phis[" + std::to_string(j) + "] is zero");
        out.trace = std::move(trace);
    }
    return out;
}

}  // namespace

std::string mode_name(ReductionMode mode) {
    return mode == ReductionMode::Std ? "std" : "prep";
}

ReductionMode mode_from_name(const std::string& name) {
    if (name == "std") return ReductionMode::Std;
    if (name == "prep") return ReductionMode::Prep;
    throw ParseError("unknown mode \"" + name + "\" (expected std or prep)");
}

std::string serialize_three_dm(const ThreeDmInstance& inst) {
    ordered_json doc;
    doc["type"] = "three_dm";
    doc["t"] = inst.t;
    ordered_json arr = ordered_json::array();
    for (const auto& tr : inst.triples) arr.push_back({tr[0], tr[1], tr[2]});
    doc["triples"] = std::move(arr);
    return doc.dump() + "\n";
}

std::string serialize_mldrs(const MldRsInstance& inst, const std::optional<TargetTrace>& trace) {
    const FieldContext& fc = *inst.code.fc;
    ordered_json doc;
    doc["type"] = "mld_rs";
    doc["m"] = fc.m;
    doc["modulus"] = modulus_hex(fc);
    doc["k"] = inst.code.k;
    doc["w"] = inst.w;
    ordered_json pts = ordered_json::array();
    for (FieldElement x : inst.code.points) pts.push_back(to_hex(x));
    doc["evaluation_set"] = std::move(pts);
    ordered_json tgt = ordered_json::array();
    for (FieldElement x : inst.target) tgt.push_back(to_hex(x));
    doc["target"] = std::move(tgt);
    if (trace) {
        ordered_json tr;
        tr["mode"] = mode_name(trace->mode);
        tr["gamma"] = to_hex(trace->gamma);
        ordered_json zs = ordered_json::array();
        for (FieldElement x : trace->z) zs.push_back(to_hex(x));
        tr["z"] = std::move(zs);
        ordered_json phis = ordered_json::array();
        for (FieldElement x : trace->phis) phis.push_back(to_hex(x));
        tr["phis"] = std::move(phis);
        doc["trace"] = std::move(tr);
    }
    return doc.dump() + "\n";
}

ParsedFile parse_instance(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const ordered_json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top level must be an object");
    const ordered_json& type = require(doc, "type");
    if (!type.is_string()) throw ParseError("type must be a string");
    std::string t = type.get<std::string>();
    if (t == "three_dm") return parse_three_dm(doc);
    if (t == "mld_rs") return parse_mldrs(doc);
    throw ParseError("unknown type \"" + t + "\"");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (!in.good() && !in.eof()) throw std::runtime_error("cannot read " + path);
    return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out.write(content.data(), (std::streamsize)content.size());
        out.flush();
        if (!out.good()) throw std::runtime_error("write to " + tmp + " failed");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move " + tmp + " into place");
    }
}

}  // namespace rsred
