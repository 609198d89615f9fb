#include <cstdint>
#include <iostream>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "rsred/instance_io.hpp"

namespace {

using namespace rsred;
using ordered_json = nlohmann::ordered_json;

std::string indexed_path(const std::string& path, std::size_t i) {
    std::size_t slash = path.find_last_of('/');
    std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + "." + std::to_string(i);
    return path.substr(0, dot) + "." + std::to_string(i) + path.substr(dot);
}

ThreeDmInstance load_three_dm(const std::string& path) {
    ParsedFile f = parse_instance(read_file(path));
    if (!std::holds_alternative<ThreeDmInstance>(f))
        throw std::invalid_argument(path + " does not hold a matching instance");
    return std::get<ThreeDmInstance>(std::move(f));
}

MldRsFile load_mldrs(const std::string& path) {
    ParsedFile f = parse_instance(read_file(path));
    if (!std::holds_alternative<MldRsFile>(f))
        throw std::invalid_argument(path + " does not hold a decoding instance");
    return std::get<MldRsFile>(std::move(f));
}

int cmd_gen(unsigned t, std::size_t count, double density, std::uint64_t seed,
            const std::string& out) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        ThreeDmInstance inst = random_three_dm(t, density, rng);
        std::string path = count == 1 ? out : indexed_path(out, i);
        write_file_atomic(path, serialize_three_dm(inst));
        std::cout << "instance " << i << ": t=" << t << " triples=" << inst.triples.size()
                  << "\n";
    }
    return 0;
}

int cmd_reduce(const std::string& in, const std::string& mode_str, const std::string& out,
               bool emit_trace) {
    ThreeDmInstance inst = load_three_dm(in);
    ReductionMode mode = mode_from_name(mode_str);
    Reduced red = mode == ReductionMode::Std ? convert_std(inst) : convert_prep(inst);
    std::optional<TargetTrace> trace;
    if (emit_trace) trace = target_trace(red.trace);
    write_file_atomic(out, serialize_mldrs(red.instance, trace));
    const RsCode& code = red.instance.code;
    std::cout << "mode=" << mode_str << " m=" << code.fc->m << " n=" << code.n()
              << " k=" << code.k << " w=" << red.instance.w << "\n";
    return 0;
}

int cmd_solve(const std::string& in) {
    ThreeDmInstance inst = load_three_dm(in);
    auto matching = solve_3dm(inst);
    if (!matching) {
        std::cout << "NO\n";
        return 0;
    }
    std::cout << "YES\n";
    for (const auto& tr : *matching) std::cout << tr[0] << " " << tr[1] << " " << tr[2] << "\n";
    return 0;
}

int cmd_decode(const std::string& in, std::int64_t radius_opt, const std::string& method) {
    MldRsFile f = load_mldrs(in);
    const RsCode& code = f.instance.code;
    std::size_t radius = radius_opt < 0 ? f.instance.w : (std::size_t)radius_opt;
    DecodeResult r = method == "enumerate" ? ml_decode_enumerate(code, f.instance.target, radius)
                                           : ml_decode_agreement(code, f.instance.target, radius);
    if (r.found) {
        std::cout << "FOUND distance=" << r.distance << "\n";
        std::cout << "codeword:";
        for (FieldElement x : r.codeword) std::cout << " " << to_hex(x);
        std::cout << "\n";
        std::cout << "errors:";
        for (std::size_t j : r.witness_support) std::cout << " " << j;
        std::cout << "\n";
    } else {
        std::cout << "ABSENT radius=" << radius << "\n";
        if (radius + 1 == code.rho())
            std::cout << "deep hole: distance equals the covering radius " << code.rho() << "\n";
    }
    return 0;
}

ordered_json report_json(const Report& rep) {
    ordered_json checks = ordered_json::array();
    for (const CheckResult& c : rep.checks) {
        ordered_json node;
        node["name"] = c.name;
        node["pass"] = c.pass;
        node["detail"] = c.detail;
        if (!c.witness.empty()) node["witness"] = c.witness;
        checks.push_back(std::move(node));
    }
    ordered_json doc;
    doc["checks"] = std::move(checks);
    doc["overall"] = rep.overall();
    return doc;
}

int cmd_verify(const std::string& in, const std::string& mode_str, bool as_json) {
    ReductionMode mode = mode_from_name(mode_str);
    ParsedFile f = parse_instance(read_file(in));
    Report rep;
    if (std::holds_alternative<ThreeDmInstance>(f)) {
        rep = verify_reduction(std::get<ThreeDmInstance>(f), mode);
    } else {
        const MldRsFile& file = std::get<MldRsFile>(f);
        rep = verify_mldrs(file.instance, file.trace, mode);
    }
    if (as_json)
        std::cout << report_json(rep).dump() << "\n";
    else
        std::cout << render_report(rep);
    return rep.overall() ? 0 : 1;
}

int cmd_field_info(unsigned m, bool as_json) {
    FieldContext fc = build_field(m);
    if (!certify_field(fc)) throw std::runtime_error("field certificate failed");

    std::vector<std::pair<Uint128, unsigned>> grouped;
    for (Uint128 p : fc.factors) {
        if (!grouped.empty() && grouped.back().first == p)
            ++grouped.back().second;
        else
            grouped.push_back({p, 1});
    }
    if (as_json) {
        ordered_json doc;
        doc["m"] = fc.m;
        doc["modulus"] = modulus_hex(fc);
        doc["order"] = u128_to_string(fc.order);
        ordered_json fs = ordered_json::array();
        for (auto& [p, e] : grouped) {
            ordered_json node;
            node["p"] = u128_to_string(p);
            node["e"] = e;
            fs.push_back(std::move(node));
        }
        doc["factorization"] = std::move(fs);
        std::cout << doc.dump() << "\n";
    } else {
        std::cout << "m: " << fc.m << "\n";
        std::cout << "modulus: " << modulus_hex(fc) << "\n";
        std::cout << "order: " << u128_to_string(fc.order) << "\n";
        std::cout << "factorization: ";
        for (std::size_t i = 0; i < grouped.size(); ++i) {
            if (i) std::cout << " * ";
            std::cout << u128_to_string(grouped[i].first);
            if (grouped[i].second > 1) std::cout << "^" << grouped[i].second;
        }
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matching-to-decoding instance toolkit over binary extension fields"};
    app.require_subcommand(1);

    unsigned gen_t = 0;
    std::size_t gen_count = 1;
    double gen_density = 0.5;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate random matching instances");
    gen->add_option("--t", gen_t, "coordinate range")->required()->check(CLI::Range(1u, 64u));
    gen->add_option("--count", gen_count, "number of instances")->check(CLI::Range(1, 1000000));
    gen->add_option("--density", gen_density, "inclusion probability per triple")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output path; --count > 1 numbers the files")->required();

    std::string red_in, red_mode, red_out;
    bool red_trace = false;
    auto* reduce = app.add_subcommand("reduce", "convert a matching instance to a decoding one");
    reduce->add_option("--in", red_in, "matching instance file")->required();
    reduce->add_option("--mode", red_mode, "std or prep")->required()
        ->check(CLI::IsMember({"std", "prep"}));
    reduce->add_option("--out", red_out, "output path")->required();
    reduce->add_flag("--emit-trace", red_trace, "store the conversion trace in the file");

    std::string solve_in;
    auto* solve = app.add_subcommand("solve", "search a matching instance exhaustively");
    solve->add_option("--in", solve_in, "matching instance file")->required();

    std::string dec_in, dec_method = "agreement";
    std::int64_t dec_radius = -1;
    auto* decode = app.add_subcommand("decode", "maximum-likelihood decode a decoding instance");
    decode->add_option("--in", dec_in, "decoding instance file")->required();
    decode->add_option("--radius", dec_radius, "search radius, default the file's w");
    decode->add_option("--method", dec_method, "agreement or enumerate")
        ->check(CLI::IsMember({"agreement", "enumerate"}));

    std::string ver_in, ver_mode = "std";
    bool ver_json = false;
    auto* verify = app.add_subcommand("verify", "run the certificate chain on a file");
    verify->add_option("--in", ver_in, "matching or decoding instance file")->required();
    verify->add_option("--mode", ver_mode, "std or prep; a stored trace overrides this")
        ->check(CLI::IsMember({"std", "prep"}));
    verify->add_flag("--json", ver_json, "machine-readable report");

    unsigned fi_m = 0;
    bool fi_json = false;
    auto* field_info = app.add_subcommand("field-info", "canonical field data for a degree");
    field_info->add_option("--m", fi_m, "extension degree")->required()
        ->check(CLI::Range(1u, 128u));
    field_info->add_flag("--json", fi_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_t, gen_count, gen_density, gen_seed, gen_out);
        if (reduce->parsed()) return cmd_reduce(red_in, red_mode, red_out, red_trace);
        if (solve->parsed()) return cmd_solve(solve_in);
        if (decode->parsed()) return cmd_decode(dec_in, dec_radius, dec_method);
        if (verify->parsed()) return cmd_verify(ver_in, ver_mode, ver_json);
        if (field_info->parsed()) return cmd_field_info(fi_m, fi_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
