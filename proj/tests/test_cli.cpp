#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sys/wait.h>

#include "iwlog/checks.hpp"

using namespace iwlog;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(IWLOG_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f);
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
    int st = pclose(f);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string tmp_file(const std::string& name, const std::string& content) {
    std::string path = std::string(IWLOG_TMP) + "/" + name;
    std::ofstream(path) << content;
    return path;
}

} // namespace

TEST_CASE("halflog subcommand") {
    auto r = run("halflog --p 3 --m 1 --sign plus --level 3 --prec 12");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["var"] == "X");
    CHECK(j["growth"] == "1/2");
    auto c = make_ctx(3, 12);
    IwaSeries F = iwa_from_json(c, j);
    CHECK(eval_at(F, {2, 0}).is_zero());
    CHECK_FALSE(eval_at(F, {1, 0}).is_zero());
    CHECK((F - halflog(c, Sign::Plus, 1, 3)).is_zero());
}

TEST_CASE("theta subcommand") {
    auto r = run("theta --disc -4 --power 4 --nmax 50");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["ring"] == "Z");
    CHECK(j["nmax"] == 50);
    CHECK(j["coeffs"][1] == -4);
    CHECK(j["coeffs"][4] == -14);
}

TEST_CASE("logmatrix then det-identity check") {
    auto r = run("logmatrix --p 3 --k 0 --level 3");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["dim"] == 2);
    CHECK(j["level"] == 3);
    CHECK(j["entries"].size() == 2);
    auto c = run("check --suite det-identity");
    CHECK(c.code == 0);
    json k = json::parse(c.out);
    CHECK(k["pass"] == true);
    CHECK(k["suites"][0]["suite"] == "det-identity");
}

TEST_CASE("deterministic output") {
    for (const char* args : {"split --p 3 --level 3 --seed 4", "antisym --p 3 --level 3 --prec 8 --degcap 250 --seed 2", "check --suite split-roundtrip --seed 9"}) {
        auto a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("halflog --sign sideways").code == 2);
    CHECK(run("check --suite nonexistent").code == 2);
    CHECK(run("regdiv --input /nonexistent/file.json").code == 2);
}

TEST_CASE("suite names match acceptance rows") {
    const auto& s = suites();
    REQUIRE(s.size() == 10);
    std::set<std::string> names;
    for (const auto& e : s) names.insert(e.name);
    CHECK(names.size() == 10);
}

TEST_CASE("regdiv, galimg, eval, eis and deplete subcommands") {
    std::string in = tmp_file("regdiv_in.json", R"({"nvars": 2, "deg_cap": 5,
        "F": {"1,0": 1, "0,1": 3},
        "G": {"1,0": 1, "0,1": 3, "2,0": 1, "1,1": 3},
        "points": [3, 6, 12]})");
    auto r = run("regdiv --p 3 --prec 12 --input " + in);
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["division"]["divides"] == true);
    CHECK(j["report"]["c_all"] == true);

    auto g = run("galimg --p 5 --sl2");
    REQUIRE(g.code == 0);
    CHECK(json::parse(g.out)["group"]["order"] == 120);
    std::string gens = tmp_file("galimg_in.json", R"({"gens": [[[1,1,0,0],[0,1,0,0],[0,0,1,1],[0,0,0,1]]]})");
    auto g2 = run("galimg --p 7 --input " + gens);
    REQUIRE(g2.code == 0);
    CHECK(json::parse(g2.out)["group"]["order"] == 7);

    auto e = run("eval --p 3 --object halflog --sign plus --m 1 --level 2 --t 2 --j 0");
    REQUIRE(e.code == 0);
    CHECK(json::parse(e.out)["value"]["val"] == "inf");

    auto z = run("eis --weight 3 --M 8 --zeta 1 --p 3 --nmax 10");
    REQUIRE(z.code == 0);
    CHECK(json::parse(z.out)["ring"] == "cyclotomic:8");

    auto d = run("deplete --disc -4 --power 4 --nmax 30 --p 5");
    REQUIRE(d.code == 0);
    CHECK(json::parse(d.out)["coeffs"][4] == 0);
}

TEST_CASE("computational errors exit with 1") {
    std::string in = tmp_file("split_in.json", R"({"alpha": [1], "beta": [0]})");
    auto r = run("split --p 3 --level 3 --input " + in);
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["error"] == "NoBoundedSolution");
}

TEST_CASE("JSON round trip of p-adic values") {
    auto c = make_ctx(5, 20);
    for (i64 v : {57, -1, 0, 125, 7}) {
        Padic x = Padic::from_int(c, v);
        CHECK(padic_from_json(c, to_json(x)) == x);
    }
    Padic y = Padic::from_int(c, 3) * Padic::from_int(c, 25).recip();
    CHECK(padic_from_json(c, to_json(y)) == y);
    json j = to_json(Padic::from_int(make_ctx(5, 20), 57));
    CHECK(j["coords"][0] == "57");
    CHECK(j["ext"].is_null());
}
