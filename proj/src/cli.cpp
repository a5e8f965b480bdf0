#include "raag/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "raag/errors.hpp"
#include "raag/graph.hpp"
#include "raag/gs_bounds.hpp"
#include "raag/hnn.hpp"
#include "raag/parabolic.hpp"
#include "raag/presentation.hpp"
#include "raag/stallings.hpp"
#include "raag/subdirect.hpp"
#include "raag/trace_word.hpp"

namespace raag {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kTool = "raag-workbench";
constexpr const char* kVersion = "0.1.0";
constexpr std::uint64_t kDefaultSeed = 20260814;

// One report per invocation.  JSON keys are fixed per command; "computed"
// holds values this run produced, "cited" holds claims passed through from
// outside the computation, and the two never mix.
struct Report {
    ordered_json doc;
    std::vector<std::string> lines;
    bool pass = true;
    bool has_checks = false;

    explicit Report(const std::string& command) {
        doc["tool"] = kTool;
        doc["version"] = kVersion;
        doc["command"] = command;
        doc["computed"] = ordered_json::object();
        doc["cited"] = ordered_json::array();
    }

    ordered_json& computed() { return doc["computed"]; }

    void seed(std::uint64_t s) {
        doc["seed"] = s;
        lines.push_back("seed: " + std::to_string(s));
    }

    void cite(const std::string& fact) {
        doc["cited"].push_back(fact);
        lines.push_back("cited: " + fact);
    }

    void line(const std::string& s) { lines.push_back(s); }

    void check(const std::string& name, bool ok, const std::string& witness = "") {
        if (!has_checks) {
            doc["checks"] = ordered_json::array();
            has_checks = true;
        }
        ordered_json e;
        e["name"] = name;
        e["pass"] = ok;
        const std::string reason = (!ok && witness.empty()) ? "check failed" : witness;
        if (!reason.empty()) e["witness"] = reason;
        doc["checks"].push_back(e);
        pass = pass && ok;
        lines.push_back(std::string(ok ? "pass  " : "FAIL  ") + name +
                        (reason.empty() ? "" : "  (" + reason + ")"));
    }

    int emit(std::ostream& out, bool as_json) {
        doc["pass"] = pass;
        if (as_json) {
            out << doc.dump(2) << '\n';
        } else {
            for (const std::string& s : lines) out << s << '\n';
            if (has_checks || !pass) out << (pass ? "PASS" : "FAIL") << '\n';
        }
        return pass ? 0 : 1;
    }
};

// Every printed value the tool emits must re-parse to an equal one.
std::string print_checked(const TraceWord& w) {
    std::string s = print_word(w);
    require_verified(parse_word(w.graph(), s) == w, "printed word failed to re-parse");
    return s;
}

std::string graph_text(const SimplicialGraph& g) {
    std::string s = print_graph(g);
    require_verified(*parse_graph(s) == g, "printed graph failed to re-parse");
    return s;
}

std::vector<TraceWord> parse_words(const GraphPtr& g,
                                   const std::vector<std::string>& texts) {
    std::vector<TraceWord> out;
    out.reserve(texts.size());
    for (const std::string& t : texts) out.push_back(parse_word(g, t));
    return out;
}

ordered_json big_json(const BigInt& v) {
    static const BigInt hi = BigInt(std::numeric_limits<std::int64_t>::max());
    static const BigInt lo = BigInt(std::numeric_limits<std::int64_t>::min());
    if (lo <= v && v <= hi) return v.convert_to<std::int64_t>();
    return v.str();
}

ordered_json name_array(const std::vector<std::string>& names) {
    return ordered_json(names);
}

std::string joined(const std::vector<std::string>& names) {
    std::string s;
    for (const std::string& n : names) {
        if (!s.empty()) s += ' ';
        s += n;
    }
    return s.empty() ? "(none)" : s;
}

JZMode to_mode(const std::string& s) {
    return s == "exact" ? JZMode::exact : JZMode::bound;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"workbench for graph groups: canonical forms, centralizers and "
                 "parabolic closures, free-group tools, subdirect products of "
                 "free groups, growth bounds, and stable-letter extensions"};
    app.name(kTool);
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kTool) + " " + kVersion);

    bool as_json = false;
    app.add_flag("--json", as_json, "emit one JSON report on standard output");

    std::string graph_path;
    std::string file_path;
    std::vector<std::string> word_texts;
    std::vector<std::string> member_texts;
    long long n_value = 1;
    int d_value = 1;
    std::string mode_name = "bound";
    std::uint64_t seed = kDefaultSeed;
    int samples = 100;
    int drop_bound = 4;
    int depth_cap = 64;
    int resolution = 16;
    int max_len = 8;
    int rc = 0;

    auto add_graph = [&graph_path](CLI::App* sub) {
        sub->add_option("--graph", graph_path, "graph file")->required();
    };
    auto add_words = [&word_texts](CLI::App* sub, int count) {
        auto* opt = sub->add_option("word", word_texts, "word(s) over the graph")
                        ->required();
        if (count > 0) opt->expected(count);
    };

    // ---- word arithmetic -------------------------------------------------
    {
        CLI::App* sub = app.add_subcommand("nf", "canonical form of words");
        sub->fallthrough();
        add_graph(sub);
        add_words(sub, 0);
        sub->callback([&]() {
            const GraphPtr g = load_graph_file(graph_path);
            Report rep("nf");
            auto arr = ordered_json::array();
            for (const std::string& text : word_texts) {
                const TraceWord w = parse_word(g, text);
                const std::string printed = print_checked(w);
                ordered_json e;
                e["input"] = text;
                e["normal_form"] = printed;
                e["length"] = w.length();
                arr.push_back(e);
                rep.line(printed);
            }
            rep.computed()["words"] = arr;
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand("len", "canonical length of words");
        sub->fallthrough();
        add_graph(sub);
        add_words(sub, 0);
        sub->callback([&]() {
            const GraphPtr g = load_graph_file(graph_path);
            Report rep("len");
            auto arr = ordered_json::array();
            for (const std::string& text : word_texts) {
                const TraceWord w = parse_word(g, text);
                ordered_json e;
                e["input"] = text;
                e["length"] = w.length();
                arr.push_back(e);
                rep.line(std::to_string(w.length()));
            }
            rep.computed()["words"] = arr;
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand("supp", "support of words");
        sub->fallthrough();
        add_graph(sub);
        add_words(sub, 0);
        sub->callback([&]() {
            const GraphPtr g = load_graph_file(graph_path);
            Report rep("supp");
            auto arr = ordered_json::array();
            for (const std::string& text : word_texts) {
                const TraceWord w = parse_word(g, text);
                const std::vector<std::string> names = w.support().names();
                ordered_json e;
                e["input"] = text;
                e["support"] = name_array(names);
                arr.push_back(e);
                rep.line(joined(names));
            }
            rep.computed()["words"] = arr;
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "cyc", "cyclic reduction g = u t u^-1 with t shortest in the class");
        sub->fallthrough();
        add_graph(sub);
        add_words(sub, 1);
        sub->callback([&]() {
            const GraphPtr g = load_graph_file(graph_path);
            Report rep("cyc");
            const TraceWord w = parse_word(g, word_texts.front());
            const CyclicReduction cr = cyclic_reduce(w);
            require_verified(conjugate(cr.core, cr.conjugator) == w,
                             "cyclic reduction failed to recompose");
            rep.computed()["input"] = word_texts.front();
            rep.computed()["conjugator"] = print_checked(cr.conjugator);
            rep.computed()["core"] = print_checked(cr.core);
            rep.computed()["length"] = w.length();
            rep.computed()["core_length"] = cr.core.length();
            rep.computed()["conjugator_length"] = cr.conjugator.length();
            rep.line("conjugator: " + print_word(cr.conjugator));
            rep.line("core: " + print_word(cr.core));
            rep.check("length splits as core plus twice the conjugator",
                      w.length() == cr.core.length() + 2 * cr.conjugator.length(),
                      std::to_string(w.length()) + " = " +
                          std::to_string(cr.core.length()) + " + 2*" +
                          std::to_string(cr.conjugator.length()));
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand("centralizer", "centralizer generators");
        sub->fallthrough();
        add_graph(sub);
        add_words(sub, 1);
        sub->callback([&]() {
            const GraphPtr g = load_graph_file(graph_path);
            Report rep("centralizer");
            const TraceWord w = parse_word(g, word_texts.front());
            auto arr = ordered_json::array();
            for (const TraceWord& c : centralizer_generators(w)) {
                require_verified(commutes(c, w), "claimed generator fails to commute");
                arr.push_back(print_checked(c));
                rep.line(print_word(c));
            }
            rep.computed()["input"] = word_texts.front();
            rep.computed()["generators"] = arr;
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "pc", "least parabolic subgroup containing the given words");
        sub->fallthrough();
        add_graph(sub);
        add_words(sub, 0);
        sub->callback([&]() {
            const GraphPtr g = load_graph_file(graph_path);
            Report rep("pc");
            const std::vector<TraceWord> ws = parse_words(g, word_texts);
            const Parabolic p = pc_set(g, ws);
            rep.computed()["inputs"] = ordered_json(word_texts);
            rep.computed()["conjugator"] = print_checked(p.conjugator());
            rep.computed()["base"] = name_array(p.base().names());
            rep.line("conjugator: " + print_word(p.conjugator()));
            rep.line("base: " + joined(p.base().names()));
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand("clique", "clique number of a graph");
        sub->fallthrough();
        add_graph(sub);
        sub->callback([&]() {
            const GraphPtr g = load_graph_file(graph_path);
            Report rep("clique");
            const int k = clique_number(*g);
            std::vector<std::string> witness;
            for (int v : max_clique(*g)) witness.push_back(g->vertex_name(v));
            rep.computed()["clique_number"] = k;
            rep.computed()["witness"] = name_array(witness);
            rep.line("clique number: " + std::to_string(k));
            rep.line("witness: " + joined(witness));
            rc = rep.emit(out, as_json);
        });
    }

    // ---- free-group tools --------------------------------------------------
    {
        CLI::App* sub = app.add_subcommand(
            "stallings", "folded automaton of a finitely generated subgroup");
        sub->fallthrough();
        add_graph(sub);
        add_words(sub, 0);
        sub->add_option("--member", member_texts, "words to test for membership");
        sub->callback([&]() {
            const GraphPtr g = load_graph_file(graph_path);
            Report rep("stallings");
            const std::vector<TraceWord> gens = parse_words(g, word_texts);
            const StallingsAutomaton sa(g, gens);
            rep.computed()["generators"] = ordered_json(word_texts);
            rep.computed()["states"] = sa.state_count();
            rep.computed()["edges"] = sa.edge_count();
            rep.computed()["rank"] = sa.rank();
            rep.computed()["free_basis"] = is_free_basis(g, gens);
            rep.line("states: " + std::to_string(sa.state_count()));
            rep.line("edges: " + std::to_string(sa.edge_count()));
            rep.line("rank: " + std::to_string(sa.rank()));
            rep.line(std::string("free basis: ") +
                     (is_free_basis(g, gens) ? "yes" : "no"));
            auto arr = ordered_json::array();
            for (const std::string& text : member_texts) {
                const bool in = sa.member(parse_word(g, text));
                ordered_json e;
                e["word"] = text;
                e["member"] = in;
                arr.push_back(e);
                rep.line(text + ": " + (in ? "member" : "not a member"));
            }
            rep.computed()["members"] = arr;
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "abel", "abelianization invariants of a presentation file");
        sub->fallthrough();
        sub->add_option("file", file_path, "presentation file")->required();
        sub->callback([&]() {
            const Presentation p = load_presentation_file(file_path);
            Report rep("abel");
            const AbelianizationResult ab = abelianization_snf(p);
            const auto weights = infinite_quotient_certificate(p);
            auto invs = ordered_json::array();
            for (const BigInt& v : ab.invariants) invs.push_back(big_json(v));
            auto rels = ordered_json::array();
            for (const TraceWord& r : p.relators) rels.push_back(print_checked(r));
            rep.computed()["generators"] = name_array(p.generators->vertex_names());
            rep.computed()["relators"] = rels;
            rep.computed()["invariants"] = invs;
            rep.computed()["rank"] = ab.rank;
            rep.computed()["free_rank"] = ab.free_rank;
            if (weights) {
                auto arr = ordered_json::array();
                for (const BigInt& v : *weights) arr.push_back(big_json(v));
                rep.computed()["weights"] = arr;
            } else {
                rep.computed()["weights"] = nullptr;
            }
            rep.line("free rank: " + std::to_string(ab.free_rank));
            std::string invline = "invariants:";
            for (const BigInt& v : ab.invariants) invline += " " + v.str();
            rep.line(invline);
            rep.line(weights ? "surjects onto the integers" : "no infinite cyclic quotient");
            rc = rep.emit(out, as_json);
        });
    }

    // ---- subdirect products -------------------------------------------------
    {
        CLI::App* sub = app.add_subcommand(
            "build-hd", "three-generated subgroup of a product of d free groups");
        sub->fallthrough();
        sub->add_option("d", d_value, "number of factors")->required();
        sub->callback([&]() {
            const HdPackage hd = build_hd(d_value);
            Report rep("build-hd");
            auto wits = ordered_json::array();
            for (const TraceWord& w : hd.witnesses) wits.push_back(print_checked(w));
            auto abw = ordered_json::array();
            for (const TupleElement& te : abelian_witnesses(hd)) {
                abw.push_back(print_checked(te.trace));
            }
            ordered_json images;
            for (const std::string name : {"x", "y", "z"}) {
                images[name] = print_checked(hd.product_map.image_of(name));
            }
            rep.computed()["d"] = hd.d;
            rep.computed()["witnesses"] = wits;
            rep.computed()["generator_images"] = images;
            rep.computed()["abelian_witnesses"] = abw;
            rep.computed()["product_graph"] = graph_text(*hd.product);
            rep.line("d: " + std::to_string(hd.d));
            for (const TraceWord& w : hd.witnesses) rep.line("witness: " + print_word(w));
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "verify-hd", "check the coordinate and rank invariants of the subgroup");
        sub->fallthrough();
        sub->add_option("d", d_value, "number of factors")->required();
        sub->add_option("--samples", samples, "random exponent vectors")->capture_default_str();
        sub->add_option("--seed", seed, "random seed")->capture_default_str();
        sub->callback([&]() {
            Report rep("verify-hd");
            rep.computed()["d"] = d_value;
            rep.computed()["samples"] = samples;
            rep.seed(seed);
            try {
                const HdPackage hd = build_hd(d_value);

                bool pattern = true;
                std::string pattern_witness;
                for (int i = 1; i <= d_value && pattern; ++i) {
                    const TraceWord c = coordinate_witness(hd, i);
                    for (int j = 1; j <= d_value; ++j) {
                        if (in_coordinate_kernel(hd, c, j) != (j != i)) {
                            pattern = false;
                            pattern_witness = "witness " + std::to_string(i) +
                                              " at coordinate " + std::to_string(j);
                            break;
                        }
                    }
                }
                rep.check("each witness vanishes exactly off its own coordinate",
                          pattern, pattern_witness);

                const std::vector<TupleElement> abw = abelian_witnesses(hd);
                bool commuting = true;
                for (std::size_t i = 0; i < abw.size() && commuting; ++i) {
                    for (std::size_t j = i + 1; j < abw.size(); ++j) {
                        if (!commutes(abw[i].trace, abw[j].trace)) {
                            commuting = false;
                            break;
                        }
                    }
                }
                rep.check("abelian witnesses commute pairwise", commuting);

                require_pre(samples > 0, "need a positive sample count");
                std::mt19937_64 rng(seed);
                std::uniform_int_distribution<long long> exp(-3, 3);
                bool lattice = true;
                std::string lattice_witness;
                for (int trial = 0; trial < samples && lattice; ++trial) {
                    std::vector<long long> es(abw.size());
                    bool all_zero = true;
                    for (auto& e : es) {
                        e = exp(rng);
                        if (e != 0) all_zero = false;
                    }
                    if (all_zero) es[0] = 1;
                    TraceWord prod = identity_word(hd.product);
                    for (std::size_t i = 0; i < abw.size(); ++i) {
                        prod = prod * power(abw[i].trace, es[i]);
                    }
                    if (prod.is_identity()) {
                        lattice = false;
                        lattice_witness = "trial " + std::to_string(trial);
                    }
                }
                rep.check("nonzero exponent vectors give nontrivial products",
                          lattice, lattice_witness);

                const StallingsAutomaton sa(hd.coordinate, hd.witnesses);
                rep.check("witnesses fold to a free basis of rank d",
                          sa.rank() == d_value && is_free_basis(hd.coordinate, hd.witnesses),
                          "rank " + std::to_string(sa.rank()));
            } catch (const verification_error& e) {
                rep.check("suite construction", false, e.what());
            }
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "not-vsp", "infinite pair quotients blocking finite presentability");
        sub->fallthrough();
        sub->add_option("d", d_value, "number of factors")->required();
        sub->callback([&]() {
            const HdPackage hd = build_hd(d_value);
            Report rep("not-vsp");
            rep.computed()["d"] = d_value;
            auto certs = ordered_json::array();
            for (int i = 1; i <= d_value; ++i) {
                for (int j = i + 1; j <= d_value; ++j) {
                    const PairQuotientCertificate cert = pair_quotient_certificate(hd, i, j);
                    auto rels = ordered_json::array();
                    for (const TraceWord& r : cert.quotient.relators) {
                        rels.push_back(print_checked(r));
                    }
                    auto wts = ordered_json::array();
                    bool nonzero = false;
                    for (const BigInt& v : cert.weights) {
                        wts.push_back(big_json(v));
                        if (v != 0) nonzero = true;
                    }
                    ordered_json e;
                    e["i"] = i;
                    e["j"] = j;
                    e["relators"] = rels;
                    e["weights"] = wts;
                    certs.push_back(e);
                    rep.check("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                  ") quotient surjects onto the integers",
                              nonzero);
                }
            }
            rep.computed()["certificates"] = certs;
            rep.cite("a finitely presented subgroup of a product of free groups "
                     "that meets every factor must have finite-index image in "
                     "every pair of factors");
            rep.cite("the infinite pair quotients above rule that out, so the "
                     "subgroup is not finitely presented");
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "drop-factors", "discard product coordinates the subgroup misses");
        sub->fallthrough();
        add_graph(sub);
        add_words(sub, 0);
        sub->add_option("--bound", drop_bound, "witness search bound")->capture_default_str();
        sub->callback([&]() {
            const GraphPtr g = load_graph_file(graph_path);
            Report rep("drop-factors");
            std::vector<TupleElement> gens;
            for (const TraceWord& w : parse_words(g, word_texts)) gens.push_back({w});
            const FactorDropReport fr = drop_trivial_factors(g, gens, drop_bound);
            rep.computed()["kept"] = ordered_json(fr.kept);
            rep.computed()["reduced_product"] = graph_text(*fr.reduced_product);
            auto rg = ordered_json::array();
            for (const TupleElement& te : fr.reduced_generators) {
                rg.push_back(print_checked(te.trace));
            }
            rep.computed()["reduced_generators"] = rg;
            auto wits = ordered_json::array();
            for (const auto& w : fr.intersection_witnesses) {
                if (w) {
                    wits.push_back(print_checked(w->trace));
                } else {
                    wits.push_back(nullptr);
                }
            }
            rep.computed()["intersection_witnesses"] = wits;
            std::string kept = "kept coordinates:";
            for (int k : fr.kept) kept += " " + std::to_string(k);
            rep.line(kept);
            for (const TupleElement& te : fr.reduced_generators) {
                rep.line("generator: " + print_word(te.trace));
            }
            rc = rep.emit(out, as_json);
        });
    }

    // ---- growth bounds -------------------------------------------------------
    CLI::App* bounds = app.add_subcommand("bounds", "growth and depth bounds");
    bounds->require_subcommand(1);
    bounds->fallthrough();
    {
        CLI::App* sub = bounds->add_subcommand(
            "gamma", "order bound for the depth quotient power");
        sub->fallthrough();
        sub->add_option("n", n_value, "generator count")->required();
        sub->add_option("--mode", mode_name, "layer mode")->capture_default_str()
            ->check(CLI::IsMember({"bound", "exact"}));
        sub->callback([&]() {
            Report rep("bounds gamma");
            const long long r = default_r(n_value);
            const BigCount gamma = gamma_bound(n_value, to_mode(mode_name));
            const BigInt env = 18 * BigInt(n_value) * n_value * n_value - n_value;
            rep.computed()["n"] = n_value;
            rep.computed()["r"] = r;
            rep.computed()["mode"] = mode_name;
            rep.computed()["gamma"] = gamma.to_string();
            rep.computed()["log2_gamma"] = big_json(gamma.log2_floor());
            rep.computed()["envelope_log2"] = big_json(env);
            rep.line("gamma(" + std::to_string(n_value) + ") = " + gamma.to_string());
            rep.check("gamma within the cubic envelope",
                      gamma <= BigCount::power_of_two(env),
                      "log2 envelope " + env.str());
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = bounds->add_subcommand(
            "delta", "generator count for an ambient group of large depth");
        sub->fallthrough();
        sub->add_option("n", n_value, "generator count")->required();
        sub->add_option("--mode", mode_name, "layer mode")->capture_default_str()
            ->check(CLI::IsMember({"bound", "exact"}));
        sub->callback([&]() {
            Report rep("bounds delta");
            const long long r = default_r(n_value);
            const JZMode mode = to_mode(mode_name);
            const BigCount gamma = gamma_bound(n_value, mode);
            const BigCount delta = delta_bound(n_value, mode);
            const BigInt env = 18 * BigInt(n_value) * n_value * n_value;
            rep.computed()["n"] = n_value;
            rep.computed()["r"] = r;
            rep.computed()["mode"] = mode_name;
            rep.computed()["gamma"] = gamma.to_string();
            rep.computed()["log2_gamma"] = big_json(gamma.log2_floor());
            rep.computed()["delta"] = delta.to_string();
            rep.computed()["envelope_log2"] = big_json(env);
            rep.line("gamma(" + std::to_string(n_value) + ") = " + gamma.to_string());
            rep.line("delta(" + std::to_string(n_value) + ") = " + delta.to_string());
            rep.check("delta below the cubic envelope",
                      delta < BigCount::power_of_two(env),
                      "log2 envelope " + env.str());
            rep.check("gamma within the cubic envelope",
                      gamma <= BigCount::power_of_two(env - n_value),
                      "log2 envelope " + BigInt(env - n_value).str());
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = bounds->add_subcommand("table", "bounds for n = 1 .. n_max");
        sub->fallthrough();
        sub->add_option("n", n_value, "largest generator count")->required();
        sub->add_option("--mode", mode_name, "layer mode")->capture_default_str()
            ->check(CLI::IsMember({"bound", "exact"}));
        sub->callback([&]() {
            Report rep("bounds table");
            require_pre(n_value >= 1, "need n >= 1");
            const JZMode mode = to_mode(mode_name);
            auto rows = ordered_json::array();
            std::ostringstream head;
            head << std::setw(6) << "n" << std::setw(6) << "r" << std::setw(8)
                 << "tau" << std::setw(8) << "mode" << std::setw(14) << "log2_gamma"
                 << std::setw(16) << "log2_delta_env" << std::setw(8) << "ok";
            rep.line(head.str());
            bool all_ok = true;
            for (long long n = 1; n <= n_value; ++n) {
                const long long r = default_r(n);
                const BigCount gamma = gamma_bound(n, mode);
                const BigCount delta = delta_bound(n, mode);
                const BigInt env = 18 * BigInt(n) * n * n;
                const bool ok = delta < BigCount::power_of_two(env) &&
                                gamma <= BigCount::power_of_two(env - n);
                all_ok = all_ok && ok;
                ordered_json row;
                row["n"] = n;
                row["r"] = r;
                row["tau"] = "2/3";
                row["mode"] = mode_name;
                row["log2_gamma"] = big_json(gamma.log2_floor());
                row["log2_delta_envelope"] = big_json(env);
                row["pass"] = ok;
                rows.push_back(row);
                std::ostringstream line;
                line << std::setw(6) << n << std::setw(6) << r << std::setw(8)
                     << "2/3" << std::setw(8) << mode_name << std::setw(14)
                     << gamma.log2_floor().str() << std::setw(16) << env.str()
                     << std::setw(8) << (ok ? "yes" : "NO");
                rep.line(line.str());
            }
            rep.computed()["rows"] = rows;
            rep.check("every row within its envelope", all_ok);
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = bounds->add_subcommand(
            "optimize", "search weights for the smallest feasible depth exponent");
        sub->fallthrough();
        sub->add_option("n", n_value, "generator count")->required();
        sub->add_option("--samples", resolution, "weight grid resolution")->capture_default_str();
        sub->add_option("--bound", depth_cap, "largest depth to try")->capture_default_str();
        sub->callback([&]() {
            Report rep("bounds optimize");
            const TauSearch ts = optimize_tau(n_value, resolution, depth_cap);
            const long long dr = default_r(n_value);
            const BigInt default_exp = BigInt(n_value) * ((BigInt(1) << dr) - 2);
            rep.computed()["n"] = n_value;
            rep.computed()["resolution"] = resolution;
            rep.computed()["depth_cap"] = depth_cap;
            rep.computed()["feasible"] = ts.feasible;
            rep.computed()["default_r"] = dr;
            rep.computed()["default_exponent"] = big_json(default_exp);
            if (ts.feasible) {
                rep.computed()["tau"] = ts.tau.str();
                rep.computed()["r"] = ts.r;
                rep.computed()["exponent"] = big_json(ts.exponent);
                rep.line("tau = " + ts.tau.str() + ", r = " + std::to_string(ts.r) +
                         ", exponent = " + ts.exponent.str());
                rep.check("optimized point satisfies the inequality",
                          gs_inequality_holds({n_value, ts.tau, ts.r}),
                          "value " + gs_value({n_value, ts.tau, ts.r}).str());
                rep.check("exponent at most the default weight's",
                          ts.exponent <= default_exp,
                          ts.exponent.str() + " vs " + default_exp.str());
            } else {
                rep.computed()["tau"] = nullptr;
                rep.computed()["r"] = nullptr;
                rep.computed()["exponent"] = nullptr;
                rep.check("a feasible weight exists under the cap", false,
                          "depth cap " + std::to_string(depth_cap));
            }
            rc = rep.emit(out, as_json);
        });
    }

    // ---- stable-letter extensions --------------------------------------------
    CLI::App* hnn = app.add_subcommand("hnn", "stable-letter extension tools");
    hnn->require_subcommand(1);
    hnn->fallthrough();
    {
        CLI::App* sub = hnn->add_subcommand("reduce", "alternating normal form");
        sub->fallthrough();
        sub->add_option("file", file_path, "embedding file")->required();
        sub->add_option("word", word_texts, "word(s) over generators and the stable letter")
            ->required();
        sub->callback([&]() {
            const EmbeddingPackage pkg = load_embedding_file(file_path);
            const GraphPtr alpha = hnn_alphabet(pkg.hnn);
            Report rep("hnn reduce");
            auto arr = ordered_json::array();
            for (const std::string& text : word_texts) {
                const HnnWord r = britton_reduce(pkg.hnn, parse_word(alpha, text));
                const TraceWord flat = flatten(pkg.hnn, r);
                require_verified(britton_reduce(pkg.hnn, flat) == r,
                                 "flattened form failed to re-reduce");
                ordered_json e;
                e["input"] = text;
                e["head"] = print_checked(r.head);
                auto blocks = ordered_json::array();
                for (const auto& b : r.tail) {
                    ordered_json be;
                    be["power"] = b.power;
                    be["word"] = print_checked(b.word);
                    blocks.push_back(be);
                }
                e["blocks"] = blocks;
                e["flattened"] = print_checked(flat);
                arr.push_back(e);
                rep.line(print_word(flat));
            }
            rep.computed()["words"] = arr;
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = hnn->add_subcommand("trivial", "word problem for the extension");
        sub->fallthrough();
        sub->add_option("file", file_path, "embedding file")->required();
        sub->add_option("word", word_texts, "word(s) over generators and the stable letter")
            ->required();
        sub->callback([&]() {
            const EmbeddingPackage pkg = load_embedding_file(file_path);
            const GraphPtr alpha = hnn_alphabet(pkg.hnn);
            Report rep("hnn trivial");
            auto arr = ordered_json::array();
            for (const std::string& text : word_texts) {
                const bool triv = hnn_is_trivial(pkg.hnn, parse_word(alpha, text));
                ordered_json e;
                e["input"] = text;
                e["trivial"] = triv;
                arr.push_back(e);
                rep.line(std::string(triv ? "trivial" : "nontrivial"));
            }
            rep.computed()["words"] = arr;
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = hnn->add_subcommand("embed", "image inside the target group");
        sub->fallthrough();
        sub->add_option("file", file_path, "embedding file")->required();
        sub->add_option("word", word_texts, "word(s) over generators and the stable letter")
            ->required();
        sub->callback([&]() {
            const EmbeddingPackage pkg = load_embedding_file(file_path);
            const GraphPtr alpha = hnn_alphabet(pkg.hnn);
            Report rep("hnn embed");
            auto arr = ordered_json::array();
            for (const std::string& text : word_texts) {
                const TraceWord w = parse_word(alpha, text);
                const CElement e = psi_embed(pkg, w);
                const TraceWord flat = flat_image(pkg, e);
                require_verified(flat == pkg.psi_flat.apply(w),
                                 "split image disagrees with the flat image");
                ordered_json entry;
                entry["input"] = text;
                entry["a_part"] = print_checked(e.a_part);
                auto syls = ordered_json::array();
                for (const auto& syl : e.bt_part) {
                    ordered_json se;
                    if (syl.index() == 0) {
                        se["factor"] = "b";
                        se["value"] = print_checked(std::get<0>(syl));
                    } else {
                        se["factor"] = "t";
                        se["value"] = std::get<1>(syl);
                    }
                    syls.push_back(se);
                }
                entry["syllables"] = syls;
                entry["image"] = print_checked(flat);
                arr.push_back(entry);
                rep.line(print_word(flat));
            }
            rep.computed()["words"] = arr;
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "build-gd", "four-generated extension forcing containers of depth d");
        sub->fallthrough();
        sub->add_option("d", d_value, "abelian rank to force")->required();
        sub->callback([&]() {
            const GdPackage gd = build_gd(d_value);
            Report rep("build-gd");
            rep.computed()["d"] = gd.report.d;
            rep.computed()["generator_count"] = gd.report.generator_count;
            rep.computed()["clique"] = gd.report.clique;
            auto ks = ordered_json::array();
            for (const TraceWord& s : gd.kernel_samples) ks.push_back(print_checked(s));
            rep.computed()["kernel_samples"] = ks;
            auto ab = ordered_json::array();
            for (const TraceWord& s : gd.report.abelian_images) {
                ab.push_back(print_checked(s));
            }
            rep.computed()["abelian_images"] = ab;
            rep.computed()["target_graph"] = graph_text(*gd.embedding.c_graph);
            const std::string emb = print_embedding(gd.embedding);
            require_verified(*parse_embedding(emb).c_graph == *gd.embedding.c_graph,
                             "printed embedding failed to re-parse");
            rep.computed()["embedding"] = emb;
            for (const std::string& fact : gd.report.cited) rep.cite(fact);
            // comment lines keep the plain output loadable as an embedding file
            std::vector<std::string> summary = {
                "# d: " + std::to_string(gd.report.d),
                "# generators: " + std::to_string(gd.report.generator_count),
                "# clique: " + std::to_string(gd.report.clique)};
            std::vector<std::string> cited_lines;
            for (auto& l : rep.lines) cited_lines.push_back("# " + l);
            rep.lines = summary;
            for (const std::string& l : cited_lines) rep.lines.push_back(l);
            std::istringstream embin(emb);
            for (std::string line; std::getline(embin, line);) rep.line(line);
            rc = rep.emit(out, as_json);
        });
    }
    {
        CLI::App* sub = app.add_subcommand(
            "verify-split", "check that the extension splits off inside its target");
        sub->fallthrough();
        sub->add_option("d", d_value, "abelian rank to force")->required();
        sub->add_option("--samples", samples, "random checks per clause")->capture_default_str();
        sub->add_option("--seed", seed, "random seed")->capture_default_str();
        sub->add_option("--bound", max_len, "largest random word length")->capture_default_str();
        sub->callback([&]() {
            Report rep("verify-split");
            rep.computed()["d"] = d_value;
            rep.computed()["samples"] = samples;
            rep.computed()["max_length"] = max_len;
            rep.seed(seed);
            const GdPackage gd = build_gd(d_value);
            try {
                const RoundtripReport rr = embedding_roundtrip(
                    gd.embedding, gd.kernel_samples, samples, max_len, seed);
                rep.computed()["agreement_checks"] = rr.agreement_checks;
                rep.computed()["injectivity_checks"] = rr.injectivity_checks;
                rep.computed()["ambient"] = name_array(rr.split.ambient);
                rep.computed()["base"] = name_array(rr.split.base);
                rep.computed()["complement"] = name_array(rr.split.complement);
                rep.computed()["fiber_checks"] = rr.split.fiber_checks;
                rep.computed()["quotient_checks"] = rr.split.quotient_checks;
                rep.computed()["clique"] = rr.clique;
                rep.computed()["target_graph"] = rr.target_graph;
                rep.check("reduction and split-image triviality agree",
                          rr.agreement_checks == samples,
                          std::to_string(rr.agreement_checks) + " samples");
                rep.check("nontrivial words keep nontrivial images",
                          rr.injectivity_checks == samples,
                          std::to_string(rr.injectivity_checks) + " samples");
                rep.check("generator closure is the whole target",
                          !rr.split.sample_limited, joined(rr.split.ambient));
                rep.check("kernel closure is the free-part base",
                          rr.split.base == gd.embedding.a_graph->vertex_names(),
                          joined(rr.split.base));
                rep.check("fiber and quotient clauses match the kernel",
                          rr.split.fiber_checks > 0 &&
                              rr.split.fiber_checks == rr.split.quotient_checks,
                          std::to_string(rr.split.fiber_checks) + " probes");
                rep.check("target clique number is d + 1", rr.clique == d_value + 1,
                          std::to_string(rr.clique));
            } catch (const verification_error& e) {
                rep.check("split verification", false, e.what());
            }
            rc = rep.emit(out, as_json);
        });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
        return rc;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const precondition_error& e) {
        err << "precondition violated: " << e.what() << '\n';
        return 3;
    } catch (const oracle_error& e) {
        err << "oracle failure: " << e.what() << '\n';
        return 1;
    } catch (const verification_error& e) {
        err << "verification failed: " << e.what() << '\n';
        return 1;
    }
}

} // namespace raag
