#include <cstdio>

#include "doctest.h"
#include "rsred/instance_io.hpp"

using namespace rsred;

namespace {

ThreeDmInstance worked_example() {
    return make_three_dm(2, {{1, 1, 1}, {1, 1, 2}, {1, 2, 1}, {2, 1, 2}, {2, 2, 2}});
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
    auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("matching instance files have frozen canonical bytes") {
    std::string s = serialize_three_dm(worked_example());
    CHECK(s ==
          "{\"type\":\"three_dm\",\"t\":2,"
          "\"triples\":[[1,1,1],[1,1,2],[1,2,1],[2,1,2],[2,2,2]]}\n");
    ParsedFile f = parse_instance(s);
    REQUIRE(std::holds_alternative<ThreeDmInstance>(f));
    CHECK(std::get<ThreeDmInstance>(f) == worked_example());
}

TEST_CASE("decoding instance files have frozen canonical bytes") {
    Reduced red = convert_prep(make_three_dm(1, {{1, 1, 1}}));
    std::string s = serialize_mldrs(red.instance, target_trace(red.trace));
    CHECK(s ==
          "{\"type\":\"mld_rs\",\"m\":6,\"modulus\":\"0x43\",\"k\":1,\"w\":2,"
          "\"evaluation_set\":[\"0xf\",\"0x38\",\"0x30\",\"0x20\"],"
          "\"target\":[\"0x3c\",\"0x0\",\"0x6\",\"0x0\"],"
          "\"trace\":{\"mode\":\"prep\",\"gamma\":\"0x3f\","
          "\"z\":[\"0x20\",\"0x0\",\"0x20\"],"
          "\"phis\":[\"0xd\",\"0xc\",\"0x31\",\"0x30\"]}}\n");
}

TEST_CASE("decoding instance round trip with and without trace") {
    Reduced red = convert_std(worked_example());
    for (bool with_trace : {true, false}) {
        std::optional<TargetTrace> trace;
        if (with_trace) trace = target_trace(red.trace);
        ParsedFile f = parse_instance(serialize_mldrs(red.instance, trace));
        REQUIRE(std::holds_alternative<MldRsFile>(f));
        const MldRsFile& file = std::get<MldRsFile>(f);
        CHECK(file.instance.code.points == red.instance.code.points);
        CHECK(file.instance.code.k == red.instance.code.k);
        CHECK(file.instance.code.fc->m == 6);
        CHECK(file.instance.w == red.instance.w);
        CHECK(file.instance.target == red.instance.target);
        CHECK(file.trace.has_value() == with_trace);
        if (with_trace) {
            CHECK(file.trace->mode == ReductionMode::Std);
            CHECK(file.trace->gamma == red.trace.gamma);
            CHECK(file.trace->z == red.trace.z);
            CHECK(file.trace->phis == red.trace.scalers.phis);
        }
    }
}

TEST_CASE("serialization is stable under reparsing") {
    Reduced red = convert_prep(worked_example());
    std::string s1 = serialize_mldrs(red.instance, target_trace(red.trace));
    ParsedFile f = parse_instance(s1);
    const MldRsFile& file = std::get<MldRsFile>(f);
    CHECK(serialize_mldrs(file.instance, file.trace) == s1);
}

TEST_CASE("mode names round trip") {
    CHECK(mode_name(ReductionMode::Std) == "std");
    CHECK(mode_name(ReductionMode::Prep) == "prep");
    CHECK(mode_from_name("std") == ReductionMode::Std);
    CHECK(mode_from_name("prep") == ReductionMode::Prep);
    CHECK_THROWS_AS(mode_from_name("fast"), ParseError);
}

TEST_CASE("parser rejects malformed documents") {
    CHECK_THROWS_AS(parse_instance("not json"), ParseError);
    CHECK_THROWS_AS(parse_instance("[1,2]"), ParseError);
    CHECK_THROWS_AS(parse_instance("{}"), ParseError);
    CHECK_THROWS_AS(parse_instance("{\"type\":\"other\"}"), ParseError);
    CHECK_THROWS_AS(parse_instance("{\"type\":3}"), ParseError);
}

TEST_CASE("parser rejects out-of-range matching instances") {
    CHECK_THROWS_AS(parse_instance("{\"type\":\"three_dm\",\"t\":0,\"triples\":[]}"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance("{\"type\":\"three_dm\",\"t\":65,\"triples\":[]}"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance("{\"type\":\"three_dm\",\"t\":2}"), ParseError);
    CHECK_THROWS_AS(
        parse_instance("{\"type\":\"three_dm\",\"t\":2,\"triples\":[[1,1]]}"), ParseError);
    CHECK_THROWS_AS(
        parse_instance("{\"type\":\"three_dm\",\"t\":2,\"triples\":[[1,1,3]]}"), ParseError);
    CHECK_THROWS_AS(
        parse_instance("{\"type\":\"three_dm\",\"t\":2,\"triples\":[[1,1,0]]}"), ParseError);
    CHECK_THROWS_AS(
        parse_instance(
            "{\"type\":\"three_dm\",\"t\":2,\"triples\":[[1,1,1],[1,1,1]]}"),
        ParseError);
    // unsorted input is accepted and canonicalized
    ParsedFile f =
        parse_instance("{\"type\":\"three_dm\",\"t\":2,\"triples\":[[2,2,2],[1,1,1]]}");
    CHECK(std::get<ThreeDmInstance>(f).triples ==
          std::vector<std::array<unsigned, 3>>{{1, 1, 1}, {2, 2, 2}});
}

TEST_CASE("parser rejects inconsistent decoding instances") {
    Reduced red = convert_std(worked_example());
    std::string good = serialize_mldrs(red.instance, target_trace(red.trace));
    CHECK_NOTHROW(parse_instance(good));

    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"modulus\":\"0x43\"",
                                                "\"modulus\":\"0x45\"")),
                    ParseError);
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"m\":6", "\"m\":0")), ParseError);
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"m\":6", "\"m\":129")), ParseError);
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"k\":2", "\"k\":0")), ParseError);
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"k\":2", "\"k\":5")), ParseError);
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"w\":2", "\"w\":0")), ParseError);
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"w\":2", "\"w\":6")), ParseError);
    // element outside the field
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"0x15\"", "\"0x55\"")), ParseError);
    // duplicate evaluation points
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"0x15\"", "\"0x25\"")), ParseError);
    // malformed hex
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"0x15\"", "\"15\"")), ParseError);
    // target length mismatch
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"target\":[\"0x25\",",
                                                "\"target\":[")),
                    ParseError);
    // trace mode unknown
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"mode\":\"std\"",
                                                "\"mode\":\"other\"")),
                    ParseError);
    // trace z length
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"z\":[\"0x2b\",", "\"z\":[")),
                    ParseError);
    // zero scaler
    CHECK_THROWS_AS(parse_instance(replace_once(good, "\"phis\":[\"0x3c\"",
                                                "\"phis\":[\"0x0\"")),
                    ParseError);
    // missing keys
    CHECK_THROWS_AS(parse_instance("{\"type\":\"mld_rs\",\"m\":6}"), ParseError);
}

TEST_CASE("atomic writes land complete files") {
    const std::string path = "io_test_tmp.json";
    write_file_atomic(path, "first\n");
    CHECK(read_file(path) == "first\n");
    write_file_atomic(path, "second\n");
    CHECK(read_file(path) == "second\n");
    CHECK_THROWS_AS(read_file(path + ".tmp"), std::runtime_error);  // no stray temp file
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_file("does_not_exist_anywhere.json"), std::runtime_error);
    CHECK_THROWS_AS(write_file_atomic("no_such_dir/x.json", "x"), std::runtime_error);
}
