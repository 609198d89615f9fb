#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace {

struct Run {
    int code;
    std::string out;
};

Run run_cli(const std::string& args) {
    const char* cli = std::getenv("RSRED_CLI");
    REQUIRE_MESSAGE(cli != nullptr, "RSRED_CLI must point at the executable");
    std::string cmd = std::string(cli) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string scratch(const std::string& name) {
    std::string dir = "cli_" + name;
    std::string cmd = "rm -rf " + dir + " && mkdir " + dir;
    REQUIRE(std::system(cmd.c_str()) == 0);
    return dir;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

}  // namespace

TEST_CASE("help requests succeed") {
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("gen --help").code == 0);
    CHECK(run_cli("--help").out.find("reduce") != std::string::npos);
}

TEST_CASE("usage errors exit with code two") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("gen").code == 2);
    CHECK(run_cli("gen --t 2").code == 2);
    CHECK(run_cli("gen --t 0 --out x.json").code == 2);
    CHECK(run_cli("gen --t 2 --density 1.5 --out x.json").code == 2);
    CHECK(run_cli("reduce --in x.json --mode fast --out y.json").code == 2);
    CHECK(run_cli("verify --unknown-flag").code == 2);
    CHECK(run_cli("field-info --m 0").code == 2);
    CHECK(run_cli("field-info --m 200").code == 2);
}

TEST_CASE("generation is deterministic in the seed") {
    std::string dir = scratch("gen");
    Run a = run_cli("gen --t 2 --seed 7 --out " + dir + "/a.json");
    Run b = run_cli("gen --t 2 --seed 7 --out " + dir + "/b.json");
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(a.out == b.out);
    CHECK(slurp(dir + "/a.json") == slurp(dir + "/b.json"));

    Run c = run_cli("gen --t 2 --seed 8 --out " + dir + "/c.json");
    REQUIRE(c.code == 0);
    CHECK(slurp(dir + "/a.json") != slurp(dir + "/c.json"));
}

TEST_CASE("multi-instance generation numbers its outputs") {
    std::string dir = scratch("count");
    REQUIRE(run_cli("gen --t 2 --seed 1 --count 3 --out " + dir + "/x.json").code == 0);
    CHECK(!slurp(dir + "/x.0.json").empty());
    CHECK(!slurp(dir + "/x.1.json").empty());
    CHECK(!slurp(dir + "/x.2.json").empty());
    CHECK(slurp(dir + "/x.0.json") != slurp(dir + "/x.1.json"));
}

TEST_CASE("pipeline from generation through verification") {
    std::string dir = scratch("pipe");
    REQUIRE(run_cli("gen --t 2 --seed 0 --out " + dir + "/i.json").code == 0);

    Run solved = run_cli("solve --in " + dir + "/i.json");
    CHECK(solved.code == 0);
    CHECK(solved.out == "YES\n1 1 1\n2 2 2\n");

    Run red = run_cli("reduce --in " + dir + "/i.json --mode std --out " + dir +
                      "/r.json --emit-trace");
    REQUIRE(red.code == 0);
    CHECK(red.out.find("m=6") != std::string::npos);

    Run ver = run_cli("verify --in " + dir + "/r.json");
    CHECK(ver.code == 0);
    CHECK(ver.out.find("OVERALL: PASS") != std::string::npos);

    Run verj = run_cli("verify --in " + dir + "/r.json --json");
    CHECK(verj.code == 0);
    CHECK(verj.out.find("\"overall\":true") != std::string::npos);

    Run ver3 = run_cli("verify --in " + dir + "/i.json");
    CHECK(ver3.code == 0);
    CHECK(ver3.out.find("OVERALL: PASS") != std::string::npos);

    Run prep = run_cli("reduce --in " + dir + "/i.json --mode prep --out " + dir +
                       "/p.json --emit-trace");
    REQUIRE(prep.code == 0);
    Run verp = run_cli("verify --in " + dir + "/p.json");
    CHECK(verp.code == 0);
    CHECK(verp.out.find("OVERALL: PASS") != std::string::npos);
}

TEST_CASE("reduction refuses undersized instances") {
    std::string dir = scratch("small");
    spit(dir + "/s.json", "{\"type\":\"three_dm\",\"t\":2,\"triples\":[[1,1,1],[2,2,2]]}\n");
    Run r = run_cli("reduce --in " + dir + "/s.json --mode std --out " + dir + "/out.json");
    CHECK(r.code == 2);
    CHECK(r.out.find("error:") != std::string::npos);
}

TEST_CASE("solving a matching-free instance reports no") {
    std::string dir = scratch("no");
    spit(dir + "/n.json",
         "{\"type\":\"three_dm\",\"t\":2,\"triples\":[[1,1,1],[1,1,2],[1,2,1],[1,2,2]]}\n");
    Run r = run_cli("solve --in " + dir + "/n.json");
    CHECK(r.code == 0);
    CHECK(r.out == "NO\n");
}

TEST_CASE("decoding reports hits, misses and deep holes") {
    std::string dir = scratch("dec");
    spit(dir + "/y.json",
         "{\"type\":\"three_dm\",\"t\":2,\"triples\":[[1,1,1],[1,1,2],[1,2,1],[2,1,2],"
         "[2,2,2]]}\n");
    REQUIRE(run_cli("reduce --in " + dir + "/y.json --mode std --out " + dir + "/yr.json")
                .code == 0);

    Run hit = run_cli("decode --in " + dir + "/yr.json");
    CHECK(hit.code == 0);
    CHECK(hit.out.find("FOUND distance=2") != std::string::npos);

    Run hit2 = run_cli("decode --in " + dir + "/yr.json --method enumerate");
    CHECK(hit2.code == 0);
    CHECK(hit2.out.find("FOUND distance=2") != std::string::npos);

    Run miss = run_cli("decode --in " + dir + "/yr.json --radius 1");
    CHECK(miss.code == 0);
    CHECK(miss.out.find("ABSENT radius=1") != std::string::npos);
    CHECK(miss.out.find("deep hole") == std::string::npos);

    spit(dir + "/n.json",
         "{\"type\":\"three_dm\",\"t\":2,\"triples\":[[1,1,1],[1,1,2],[1,2,1],[1,2,2]]}\n");
    REQUIRE(run_cli("reduce --in " + dir + "/n.json --mode std --out " + dir + "/nr.json")
                .code == 0);
    Run deep = run_cli("decode --in " + dir + "/nr.json");
    CHECK(deep.code == 0);
    CHECK(deep.out.find("ABSENT radius=2") != std::string::npos);
    CHECK(deep.out.find("deep hole") != std::string::npos);

    Run toofar = run_cli("decode --in " + dir + "/nr.json --radius 4");
    CHECK(toofar.code == 2);
}

TEST_CASE("verification flags a tampered target with a nonzero exit") {
    std::string dir = scratch("tamper");
    spit(dir + "/y.json",
         "{\"type\":\"three_dm\",\"t\":2,\"triples\":[[1,1,1],[1,1,2],[1,2,1],[2,1,2],"
         "[2,2,2]]}\n");
    REQUIRE(run_cli("reduce --in " + dir + "/y.json --mode std --out " + dir +
                    "/r.json --emit-trace")
                .code == 0);
    std::string text = slurp(dir + "/r.json");
    auto pos = text.find("\"target\":[\"0x25\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 16, "\"target\":[\"0x24\"");
    spit(dir + "/r.json", text);

    Run ver = run_cli("verify --in " + dir + "/r.json");
    CHECK(ver.code == 1);
    CHECK(ver.out.find(": FAIL") != std::string::npos);
    CHECK(ver.out.find("OVERALL: FAIL") != std::string::npos);

    Run verj = run_cli("verify --in " + dir + "/r.json --json");
    CHECK(verj.code == 1);
    CHECK(verj.out.find("\"overall\":false") != std::string::npos);
}

TEST_CASE("file type and format mismatches exit with code two") {
    std::string dir = scratch("types");
    spit(dir + "/i.json", "{\"type\":\"three_dm\",\"t\":1,\"triples\":[[1,1,1]]}\n");
    spit(dir + "/bad.json", "{broken\n");
    REQUIRE(run_cli("reduce --in " + dir + "/i.json --mode prep --out " + dir + "/p.json")
                .code == 0);

    CHECK(run_cli("solve --in " + dir + "/p.json").code == 2);
    CHECK(run_cli("decode --in " + dir + "/i.json").code == 2);
    CHECK(run_cli("solve --in " + dir + "/bad.json").code == 2);
    CHECK(run_cli("verify --in " + dir + "/bad.json").code == 2);
    CHECK(run_cli("solve --in " + dir + "/missing.json").code == 2);

    // non-canonical modulus is refused at parse time
    std::string text = slurp(dir + "/p.json");
    auto pos = text.find("\"0x43\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 6, "\"0x57\"");
    spit(dir + "/alt.json", text);
    Run alt = run_cli("verify --in " + dir + "/alt.json");
    CHECK(alt.code == 2);
    CHECK(alt.out.find("canonical") != std::string::npos);
}

TEST_CASE("field information output") {
    Run r = run_cli("field-info --m 6");
    CHECK(r.code == 0);
    CHECK(r.out.find("modulus: 0x43") != std::string::npos);
    CHECK(r.out.find("order: 63") != std::string::npos);
    CHECK(r.out.find("3^2 * 7") != std::string::npos);

    Run j = run_cli("field-info --m 90 --json");
    CHECK(j.code == 0);
    CHECK(j.out.find("\"0x4000000000000000000002d\"") != std::string::npos);
    CHECK(j.out.find("\"18837001\"") != std::string::npos);
}
