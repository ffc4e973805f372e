#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(CUBIX_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.output += buf.data();
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string tmp(const std::string& name) {
    return std::string("/tmp/cubix_cli_test_") + name;
}

} // namespace

TEST_CASE("normalize and homset") {
    auto r = run("normalize -f c \"g@0 . d0@0\" --no-table");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "id : 1 -> 1\n");

    auto rt = run("normalize -f c \"g@0 . d0@0\"");
    CHECK(rt.exit_code == 0);
    CHECK(rt.output == "id : 1 -> 1\n0 -> 0\n1 -> 1\n");

    CHECK(run("normalize -f r \"g@0\"").exit_code == 3);
    CHECK(run("normalize -f r \"wat@1\"").exit_code == 2);

    auto h = run("homset -f c 2 1");
    CHECK(h.exit_code == 0);
    CHECK(h.output == "5\n");
    CHECK(run("homset -f c 9 9").exit_code == 4);
}

TEST_CASE("build, tensor, iso round trip") {
    CHECK(run("build box 1 -f r -N 2 -o " + tmp("b1.json")).exit_code == 0);
    CHECK(run("build box 2 -f r -o " + tmp("b2.json")).exit_code == 0);
    CHECK(run("tensor " + tmp("b1.json") + " " + tmp("b1.json") + " -o " + tmp("t.json")).exit_code
          == 0);
    auto iso = run("iso " + tmp("t.json") + " " + tmp("b2.json"));
    CHECK(iso.exit_code == 0);
    CHECK(iso.output == "isomorphic\n");

    // deterministic emission: rebuilding produces identical bytes
    CHECK(run("build box 2 -f r -o " + tmp("b2again.json")).exit_code == 0);
    auto diff = run("iso " + tmp("b2.json") + " " + tmp("b2again.json"));
    CHECK(diff.output == "isomorphic\n");
    const std::string cmp =
        "cmp -s " + tmp("b2.json") + " " + tmp("b2again.json") + " && echo same";
    FILE* pipe = popen(cmp.c_str(), "r");
    REQUIRE(pipe);
    char buf[16] = {};
    REQUIRE(std::fgets(buf, sizeof buf, pipe) != nullptr);
    pclose(pipe);
    CHECK(std::string(buf) == "same\n");
}

TEST_CASE("boundary, homology, caps") {
    // shortcut and build-kind forms agree byte for byte
    CHECK(run("boundary 2 -f c -o " + tmp("bd2a.json")).exit_code == 0);
    CHECK(run("build boundary 2 -f c -o " + tmp("bd2.json")).exit_code == 0);
    {
        const std::string cmp = "cmp -s " + tmp("bd2.json") + " " + tmp("bd2a.json") + " && echo same";
        FILE* pipe = popen(cmp.c_str(), "r");
        REQUIRE(pipe);
        char buf[16] = {};
        REQUIRE(std::fgets(buf, sizeof buf, pipe) != nullptr);
        pclose(pipe);
        CHECK(std::string(buf) == "same\n");
    }
    CHECK(run("cap 2 0 0 -f c --summary").exit_code == 0);
    auto h = run("homology " + tmp("bd2.json"));
    CHECK(h.exit_code == 0);
    CHECK(h.output == "H0=Z H1=Z\n");

    auto fill = run("fill " + tmp("bd2.json") + " -n 2 -e 0 -i 0 --json");
    CHECK(fill.exit_code == 0);
    CHECK(fill.output.find("\"unfillable\":") != std::string::npos);

    CHECK(run("build cap 2 0 0 -f c -o " + tmp("cap.json")).exit_code == 0);
}

TEST_CASE("triangulation and nerves") {
    CHECK(run("build box 2 -f c -o " + tmp("bc2.json")).exit_code == 0);
    CHECK(run("triangulate " + tmp("bc2.json") + " -o " + tmp("l2.json")).exit_code == 0);
    CHECK(run("build nerve-chain 1 -N 2 -o " + tmp("n1.json")).exit_code == 0);
    CHECK(run("build simplex 1 -N 2 -o " + tmp("d1.json")).exit_code == 0);
    auto iso = run("iso " + tmp("n1.json") + " " + tmp("d1.json"));
    CHECK(iso.output == "isomorphic\n");

    CHECK(run("build discrete-1 -o " + tmp("i1.json") + " -N 1").exit_code == 0);
    CHECK(run("nerve --category " + tmp("i1.json") + " -k 2 -o " + tmp("nerve1.json")).exit_code
          == 0);
    // N^c(i([1])) is Delta[1] up to level 2
    CHECK(run("build simplex 1 -N 2 -o " + tmp("d1b.json")).exit_code == 0);
    auto iso2 = run("iso " + tmp("nerve1.json") + " " + tmp("d1b.json"));
    CHECK(iso2.output == "isomorphic\n");

    auto dg = run("nerve --dg arrow -p 2 -k 2 --summary");
    CHECK(dg.exit_code == 0);
    CHECK(dg.output.find("simplicial") != std::string::npos);
}

TEST_CASE("pushout from map files: gluing two intervals into a path") {
    CHECK(run("build yoneda --word d1@0 -f r -N 1 -o " + tmp("end1.json")).exit_code == 0);
    CHECK(run("build yoneda --word d0@0 -f r -N 1 -o " + tmp("end0.json")).exit_code == 0);
    auto po = run("pushout " + tmp("end1.json") + " " + tmp("end0.json") + " --summary");
    CHECK(po.exit_code == 0);
    CHECK(po.output.find("dim 0: 3 cells, 3 nondegenerate") != std::string::npos);
    CHECK(po.output.find("dim 1: 5 cells, 2 nondegenerate") != std::string::npos);

    // non-map inputs are rejected with a semantic error
    CHECK(run("build box 1 -f r -N 1 -o " + tmp("notmap.json")).exit_code == 0);
    CHECK(run("pushout " + tmp("notmap.json") + " " + tmp("notmap.json")).exit_code == 3);
}

TEST_CASE("guards and missing files") {
    CHECK(run("build box 7 -f c").exit_code != 0);
    CHECK(run("homology /tmp/definitely_missing_cubix.json").exit_code == 5);
}

TEST_CASE("selftest quick") {
    auto r = run("selftest --quick");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("all checks passed") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
}
