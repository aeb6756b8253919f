#include "doctest.h"

#include <sstream>

#include "cli.hpp"
#include "corpus.hpp"
#include "json.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = argconf::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const std::string kFig1 = corpus::path("fig1.yaml");

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string f; std::getline(in, f, ',');) out.push_back(f);
    return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("assess prints display triples") {
    const Outcome o = run({"assess", kFig1, "--scenario", "full-confidence", "--node", "G1"});
    CHECK(o.code == 0);
    CHECK(o.out == "G1: (0.86, 0.00, 0.14)\n");
    CHECK(o.err.empty());

    const Outcome all = run({"assess", kFig1, "--scenario", "partial"});
    const auto ls = lines(all.out);
    REQUIRE(ls.size() == 15);
    CHECK(ls[0].rfind("G1: ", 0) == 0);
    CHECK(ls[1].rfind("G1|A1: ", 0) == 0);
    CHECK(ls[4] == "G4: (0.86, 0.00, 0.14)");

    const Outcome cond = run({"assess", kFig1, "--context-mode", "conditional", "--node", "G1"});
    CHECK(cond.out == "G1: (0.00, 0.00, 1.00) given A1\n");

    const Outcome precise =
        run({"--precision", "4", "assess", kFig1, "--scenario", "partial", "--node", "G4"});
    CHECK(precise.out == "G4: (0.8550, 0.0000, 0.1450)\n");

    const Outcome sel = run({"assess", kFig1, "--scenario", "partial", "--node", "G1|A1"});
    CHECK(sel.code == 0);
    CHECK(sel.out.rfind("G1|A1: ", 0) == 0);
}

TEST_CASE("assess JSON keeps raw values") {
    const Outcome o = run({"assess", kFig1, "--scenario", "partial", "--format", "json",
                           "--explain", "G3"});
    REQUIRE(o.code == 0);
    const auto j = nlohmann::json::parse(o.out);
    CHECK(j["scenario"] == "partial");
    CHECK(j["nodes"].size() == 15);
    const auto& g4 = j["nodes"][4];
    CHECK(g4["id"] == "G4");
    CHECK(g4["opinion"]["b"].get<double>() == doctest::Approx(0.855));
    CHECK(g4["opinion"]["display"] == "(0.86, 0.00, 0.14)");
    CHECK(j["explain"].get<std::string>().find("G3 = deduce") == 0);
}

TEST_CASE("assess CSV and explain") {
    const Outcome csv = run({"assess", kFig1, "--format", "csv", "--node", "Sn1"});
    CHECK(csv.out == "node,b,d,u,a,projection,context_set\nSn1,0,0,1,0.5,0.5,\n");
    const Outcome ex = run({"assess", kFig1, "--explain", "Sn1", "--node", "Sn1"});
    CHECK(ex.out.find("\nSn1 = default-vacuous") != std::string::npos);
}

TEST_CASE("validate") {
    const Outcome ok = run({"validate", kFig1});
    CHECK(ok.code == 0);
    CHECK(ok.out == "ok: 0 error(s), 0 warning(s)\n");

    const Outcome cyc = run({"validate", corpus::path("fixtures/cycle.yaml")});
    CHECK(cyc.code == 1);
    CHECK(cyc.out.find("CYCLE") != std::string::npos);

    const Outcome js = run({"validate", corpus::path("fixtures/diamond.yaml"), "--format", "json"});
    CHECK(js.code == 0);
    const auto j = nlohmann::json::parse(js.out);
    CHECK(j["ok"] == true);
    CHECK(j["warnings"][0]["code"] == "DEPENDENT_SUPPORT");

    const Outcome quiet = run({"--quiet", "validate", corpus::path("fixtures/diamond.yaml")});
    CHECK(quiet.out.find("DEPENDENT_SUPPORT") == std::string::npos);
}

TEST_CASE("scenarios table") {
    const Outcome o = run({"scenarios", kFig1});
    REQUIRE(o.code == 0);
    const auto ls = lines(o.out);
    REQUIRE(ls.size() == 16);
    CHECK(ls[0].find("full-uncertainty") != std::string::npos);
    CHECK(ls[1].rfind("G1 ", 0) == 0);
    CHECK(ls[1].find("(0.86, 0.00, 0.14)") != std::string::npos);
    CHECK(ls[2].rfind("G1|A1 ", 0) == 0);

    const Outcome js = run({"scenarios", kFig1, "--format", "json"});
    const auto j = nlohmann::json::parse(js.out);
    CHECK(j["rows"][1]["label"] == "G1|A1");
    CHECK(j["rows"][0]["cells"]["full-confidence"]["display"] == "(0.86, 0.00, 0.14)");

    const Outcome csv = run({"scenarios", kFig1, "--format", "csv"});
    CHECK(lines(csv.out).size() == 1 + 15 * 3);
}

TEST_CASE("sweep endpoint agrees with a direct assessment") {
    const Outcome o = run({"sweep", kFig1, "--node", "A1", "--mode", "belief-tradeoff",
                           "--steps", "11", "--fix-u", "0"});
    REQUIRE(o.code == 0);
    const auto ls = lines(o.out);
    REQUIRE(ls.size() == 12);
    CHECK(ls[0] == "t,b_in,d_in,u_in,node,b,d,u,projection");

    // Sweep columns 5..7 hold the observed b, d, u; assess columns 1..3.
    const Outcome direct = run({"assess", kFig1, "--format", "csv", "--node", "G1"});
    const auto swept = fields(ls.back());
    const auto assessed = fields(lines(direct.out)[1]);
    CHECK(swept[4] == "G1");
    CHECK(swept[5] == assessed[1]);
    CHECK(swept[6] == assessed[2]);
    CHECK(swept[7] == assessed[3]);

    const Outcome js = run({"sweep", kFig1, "--node", "Sn1", "--mode", "evidence", "--steps",
                            "3", "--r-max", "8", "--format", "json", "--observe", "G4"});
    const auto j = nlohmann::json::parse(js.out);
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][2]["injected"]["b"].get<double>() == doctest::Approx(0.8));
}

TEST_CASE("beta and triangle") {
    const Outcome b = run({"beta", kFig1, "--node", "G5", "--samples", "3"});
    CHECK(b.code == 0);
    CHECK(b.out == "p,density\n0,1\n0.5,1\n1,1\n");

    const Outcome bj = run({"beta", kFig1, "--node", "A1", "--format", "json"});
    CHECK(nlohmann::json::parse(bj.out)["point_mass"] == 1.0);

    const Outcome t = run({"triangle", kFig1, "--scenario", "partial", "--node", "Sn1"});
    CHECK(t.out == "node,b,d,u,projection\nSn1,0.9,0,0.1,0.95\n");
}

TEST_CASE("exit codes") {
    CHECK(run({"assess", corpus::path("missing.yaml")}).code == 2);
    CHECK(run({"assess", corpus::path("fixtures/duplicate_id.json")}).code == 1);
    CHECK(run({"assess", corpus::path("fixtures/missing_conditionals.yaml")}).code == 1);
    const Outcome reuse = run({"assess", corpus::path("fixtures/context_reuse.yaml")});
    CHECK(reuse.code == 3);
    CHECK(reuse.err.find("CONTEXT_REUSE") != std::string::npos);
    CHECK(run({"assess", kFig1, "--scenario", "nope"}).code == 3);
    CHECK(run({"assess", kFig1, "--node", "nope"}).code == 3);
    CHECK(run({"assess", kFig1, "--context-mode", "sideways"}).code == 4);
    CHECK(run({"frobnicate"}).code == 4);
    CHECK(run({}).code == 4);
    CHECK(run({"sweep", kFig1, "--node", "A1"}).code == 4);
    CHECK(run({"sweep", kFig1, "--node", "G2", "--mode", "uncertainty"}).code == 3);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"assess", "--help"}).code == 0);
}

TEST_CASE("syntax errors exit with the input-error code") {
    const Outcome o = run({"validate", corpus::path("../unit/main.cpp")});
    CHECK(o.code == 2);
}

}  // TEST_SUITE
