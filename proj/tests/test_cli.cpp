#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "raag/cli.hpp"
#include "raag/graph.hpp"
#include "raag/hnn.hpp"
#include "raag/subdirect.hpp"
#include "raag/trace_word.hpp"

using namespace raag;
using nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream o, e;
    const int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

json parsed(const CliResult& r) { return json::parse(r.out); }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::set<std::string> keys(const json& j) {
    std::set<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out.insert(it.key());
    return out;
}

const char* kPathGraph = "cli_path.graph";
const char* kFreeGraph = "cli_free.graph";

struct Fixture {
    Fixture() {
        write_file(kPathGraph, "vertices: a b c\nedge: a b\nedge: b c\n");
        write_file(kFreeGraph, "vertices: a b\n");
    }
    ~Fixture() {
        std::remove(kPathGraph);
        std::remove(kFreeGraph);
    }
};

} // namespace

TEST_CASE_FIXTURE(Fixture, "word commands report canonical data") {
    CliResult r = run({"nf", "--graph", kPathGraph, "a a^-1", "b a", "--json"});
    REQUIRE(r.code == 0);
    json j = parsed(r);
    CHECK(j["command"] == "nf");
    CHECK(j["computed"]["words"][0]["normal_form"] == "1");
    CHECK(j["computed"]["words"][0]["length"] == 0);
    CHECK(j["computed"]["words"][1]["normal_form"] == "a b");
    CHECK(j["pass"] == true);

    r = run({"nf", "--graph", kPathGraph, "a a^-1", "b a"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\na b\n");

    r = run({"len", "--graph", kPathGraph, "a b^-1 a^-1", "--json"});
    REQUIRE(r.code == 0);
    CHECK(parsed(r)["computed"]["words"][0]["length"] == 1);

    r = run({"supp", "--graph", kPathGraph, "a c a^-1", "--json"});
    REQUIRE(r.code == 0);
    CHECK(parsed(r)["computed"]["words"][0]["support"] ==
          json::array({"a", "c"}));

    r = run({"cyc", "--graph", kPathGraph, "a c a^-1", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["conjugator"] == "a");
    CHECK(j["computed"]["core"] == "c");
    CHECK(j["computed"]["core_length"] == 1);
    CHECK(j["checks"][0]["pass"] == true);
}

TEST_CASE_FIXTURE(Fixture, "subgroup commands") {
    CliResult r = run({"centralizer", "--graph", kPathGraph, "a", "--json"});
    REQUIRE(r.code == 0);
    CHECK(parsed(r)["computed"]["generators"] == json::array({"a", "b"}));

    r = run({"pc", "--graph", kPathGraph, "a", "c", "--json"});
    REQUIRE(r.code == 0);
    json j = parsed(r);
    CHECK(j["computed"]["conjugator"] == "1");
    CHECK(j["computed"]["base"] == json::array({"a", "c"}));

    r = run({"clique", "--graph", kPathGraph, "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["clique_number"] == 2);
    CHECK(j["computed"]["witness"] == json::array({"a", "b"}));
}

TEST_CASE_FIXTURE(Fixture, "free group commands") {
    CliResult r = run({"stallings", "--graph", kFreeGraph, "a b", "b a",
                       "--member", "a b", "--member", "a", "--json"});
    REQUIRE(r.code == 0);
    json j = parsed(r);
    CHECK(j["computed"]["rank"] == 2);
    CHECK(j["computed"]["free_basis"] == true);
    CHECK(j["computed"]["members"][0]["member"] == true);
    CHECK(j["computed"]["members"][1]["member"] == false);

    write_file("cli_tors.pres", "gens: x y\nrel: x^2\nrel: y^3\n");
    r = run({"abel", "cli_tors.pres", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["invariants"] == json::array({1, 6}));
    CHECK(j["computed"]["free_rank"] == 0);
    CHECK(j["computed"]["weights"].is_null());
    std::remove("cli_tors.pres");

    write_file("cli_comm.pres", "gens: x y\nrel: x y x^-1 y^-1\n");
    r = run({"abel", "cli_comm.pres", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["free_rank"] == 2);
    CHECK(j["computed"]["weights"].is_array());
    std::remove("cli_comm.pres");
}

TEST_CASE("bounds commands") {
    CliResult r = run({"bounds", "gamma", "1", "--json"});
    REQUIRE(r.code == 0);
    json j = parsed(r);
    CHECK(j["computed"]["r"] == 4);
    CHECK(j["computed"]["log2_gamma"] == 14);
    CHECK(j["computed"]["gamma"] == "2^14");
    CHECK(j["pass"] == true);

    r = run({"bounds", "gamma", "2", "--json"});
    REQUIRE(r.code == 0);
    CHECK(parsed(r)["computed"]["log2_gamma"] == 124);

    r = run({"bounds", "delta", "1", "--mode", "bound", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["delta"] == "2^14 + 1");
    CHECK(j["computed"]["log2_gamma"] == 14);
    CHECK(j["checks"][0]["pass"] == true);

    r = run({"bounds", "delta", "2", "--mode", "exact", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["log2_gamma"] == 38);
    CHECK(j["pass"] == true);

    r = run({"bounds", "table", "3", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    REQUIRE(j["computed"]["rows"].size() == 3);
    CHECK(j["computed"]["rows"][0]["n"] == 1);
    CHECK(j["computed"]["rows"][0]["r"] == 4);
    CHECK(j["computed"]["rows"][0]["log2_gamma"] == 14);
    CHECK(j["computed"]["rows"][0]["tau"] == "2/3");
    for (const auto& row : j["computed"]["rows"]) CHECK(row["pass"] == true);
    CHECK(j["pass"] == true);

    r = run({"bounds", "optimize", "1", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["feasible"] == true);
    CHECK(j["computed"]["tau"] == "5/8");
    CHECK(j["computed"]["r"] == 3);
    CHECK(j["computed"]["exponent"] == 6);
    CHECK(j["pass"] == true);

    // a coarser grid falls back to the classical parameter point
    r = run({"bounds", "optimize", "1", "--samples", "3", "--json"});
    REQUIRE(r.code == 0);
    CHECK(parsed(r)["computed"]["tau"] == "2/3");

    r = run({"bounds", "optimize", "1", "--bound", "2", "--json"});
    CHECK(r.code == 1);
    j = parsed(r);
    CHECK(j["computed"]["feasible"] == false);
    CHECK(j["computed"]["tau"].is_null());
    CHECK(j["pass"] == false);
}

TEST_CASE("subdirect commands") {
    CliResult r = run({"build-hd", "2", "--json"});
    REQUIRE(r.code == 0);
    json j = parsed(r);
    CHECK(j["computed"]["d"] == 2);
    const HdPackage hd = build_hd(2);
    REQUIRE(j["computed"]["witnesses"].size() == 2);
    for (int i = 0; i < 2; ++i) {
        const std::string text = j["computed"]["witnesses"][i];
        CHECK(parse_word(hd.coordinate, text) == hd.witnesses[static_cast<std::size_t>(i)]);
    }
    CHECK(*parse_graph(j["computed"]["product_graph"]) == *hd.product);

    r = run({"verify-hd", "2", "--samples", "10", "--seed", "3", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["seed"] == 3);
    CHECK(j["computed"]["samples"] == 10);
    REQUIRE(j["checks"].size() == 4);
    for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
    CHECK(j["pass"] == true);

    // deterministic for a fixed seed
    const CliResult again = run({"verify-hd", "2", "--samples", "10", "--seed", "3", "--json"});
    CHECK(again.out == r.out);

    r = run({"not-vsp", "3", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["certificates"].size() == 3);
    CHECK(j["cited"].size() == 2);
    for (const auto& cert : j["computed"]["certificates"]) {
        CHECK_FALSE(cert["weights"].empty());
    }
    CHECK(j["pass"] == true);

    write_file("cli_prod.graph", print_graph(*f2_power(2)));
    r = run({"drop-factors", "--graph", "cli_prod.graph", "x1", "y1 x1", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["kept"] == json::array({1}));
    CHECK(j["computed"]["reduced_generators"].size() == 2);
    CHECK_FALSE(j["computed"]["intersection_witnesses"][0].is_null());
    std::remove("cli_prod.graph");
}

TEST_CASE("extension commands") {
    CliResult r = run({"build-gd", "2", "--json"});
    REQUIRE(r.code == 0);
    json j = parsed(r);
    CHECK(j["computed"]["d"] == 2);
    CHECK(j["computed"]["generator_count"] == 4);
    CHECK(j["computed"]["clique"] == 3);
    CHECK(j["computed"]["kernel_samples"].size() == 1);
    CHECK(j["computed"]["abelian_images"].size() == 2);
    CHECK(j["cited"].size() == 2);
    const EmbeddingPackage fromjson = parse_embedding(j["computed"]["embedding"]);
    CHECK(fromjson.c_graph->vertex_count() == 8);

    // plain output doubles as an embedding file: summary lines are comments
    r = run({"build-gd", "1"});
    REQUIRE(r.code == 0);
    const EmbeddingPackage plain = parse_embedding(r.out);
    CHECK(plain.c_graph->vertex_count() == 6);

    write_file("cli_g1.emb", r.out);
    r = run({"hnn", "trivial", "cli_g1.emb", "t z^-1 x^-1 y x t^-1 x^-1 y^-1 x z",
             "t x t^-1 x^-1", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["words"][0]["trivial"] == true);
    CHECK(j["computed"]["words"][1]["trivial"] == false);

    r = run({"hnn", "reduce", "cli_g1.emb", "t z^-1 x^-1 y x t^-1", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["words"][0]["head"] == "z^-1 x^-1 y x");
    CHECK(j["computed"]["words"][0]["blocks"].empty());
    CHECK(j["computed"]["words"][0]["flattened"] == "z^-1 x^-1 y x");

    r = run({"hnn", "embed", "cli_g1.emb", "t", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["computed"]["words"][0]["a_part"] == "1");
    REQUIRE(j["computed"]["words"][0]["syllables"].size() == 1);
    CHECK(j["computed"]["words"][0]["syllables"][0]["factor"] == "t");
    CHECK(j["computed"]["words"][0]["syllables"][0]["value"] == 1);
    CHECK(j["computed"]["words"][0]["image"] == "t");
    std::remove("cli_g1.emb");

    r = run({"verify-split", "1", "--samples", "25", "--seed", "11", "--json"});
    REQUIRE(r.code == 0);
    j = parsed(r);
    CHECK(j["seed"] == 11);
    CHECK(j["computed"]["agreement_checks"] == 25);
    CHECK(j["computed"]["base"] == json::array({"x", "y", "z"}));
    CHECK(j["computed"]["clique"] == 2);
    for (const auto& c : j["checks"]) CHECK(c["pass"] == true);
    CHECK(j["pass"] == true);
}

TEST_CASE_FIXTURE(Fixture, "exit codes and schema") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"nf", "--graph", kPathGraph, "--bogus", "a"}).code == 2);
    CHECK(run({"nf", "--graph", "missing.graph", "a"}).code == 2);
    CHECK(run({"nf", "--graph", kPathGraph, "q"}).code == 2);
    CHECK(run({"stallings", "--graph", kPathGraph, "a"}).code == 2);
    CHECK(run({"hnn", "trivial", "missing.emb", "t"}).code == 2);
    CHECK(run({"bounds", "gamma", "0"}).code == 3);
    CHECK(run({"verify-hd", "0"}).code == 3);
    CHECK(run({"verify-split", "1", "--samples", "0"}).code == 3);

    CliResult r = run({"--version"});
    CHECK(r.code == 0);
    CHECK(r.out.find("raag-workbench") != std::string::npos);
    r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("bounds") != std::string::npos);

    // schema-stable top-level keys
    r = run({"nf", "--graph", kPathGraph, "a", "--json"});
    CHECK(keys(parsed(r)) == std::set<std::string>{"tool", "version", "command",
                                                   "computed", "cited", "pass"});
    r = run({"bounds", "gamma", "1", "--json"});
    CHECK(keys(parsed(r)) == std::set<std::string>{"tool", "version", "command",
                                                   "computed", "cited", "checks",
                                                   "pass"});
    r = run({"verify-hd", "1", "--samples", "5", "--json"});
    CHECK(keys(parsed(r)) == std::set<std::string>{"tool", "version", "command",
                                                   "computed", "cited", "seed",
                                                   "checks", "pass"});
}
