// Acceptance gate: one line per criterion, exit 0 only when all pass.
// Each criterion restates a contract of the library against independent
// oracles or exact pinned numbers; nothing here trusts module internals.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "oracles.hpp"
#include "raag/cli.hpp"
#include "raag/gs_bounds.hpp"
#include "raag/graph.hpp"
#include "raag/hnn.hpp"
#include "raag/parabolic.hpp"
#include "raag/presentation.hpp"
#include "raag/stallings.hpp"
#include "raag/subdirect.hpp"
#include "raag/trace_word.hpp"

using namespace raag;

namespace {

struct Tally {
    long long failures = 0;
    std::string first;
};

Tally* g_tally = nullptr;

void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++g_tally->failures;
    if (g_tally->first.empty()) g_tally->first = what;
}

std::vector<std::string> sorted_words(const std::vector<TraceWord>& ws) {
    std::vector<std::string> out;
    out.reserve(ws.size());
    for (const auto& w : ws) out.push_back(print_word(w));
    std::sort(out.begin(), out.end());
    return out;
}

std::set<std::string> as_set(const std::vector<std::string>& v) {
    return {v.begin(), v.end()};
}

// 1. Canonical forms across every labeled simplicial graph on <= 4 vertices
// against the union-find closure of swaps and cancellations, exhaustively
// over every raw word of length <= 6.
void criterion_normal_forms() {
    long long mismatches = 0, total = 0, expected = 0;
    for (const auto& g : oracle::all_graphs(4)) {
        const oracle::BruteForceNormalForm nf(g, 6);
        const int alpha = 2 * g->vertex_count();
        std::vector<Letter> raw;
        for (int len = 0; len <= 6; ++len) {
            std::vector<int> digits(static_cast<std::size_t>(len), 0);
            raw.assign(static_cast<std::size_t>(len), Letter{0, 1});
            while (true) {
                for (int p = 0; p < len; ++p) {
                    raw[static_cast<std::size_t>(p)] =
                        Letter{digits[static_cast<std::size_t>(p)] / 2,
                               digits[static_cast<std::size_t>(p)] % 2 == 0 ? 1 : -1};
                }
                if (TraceWord(g, raw).letters() != nf.normal_form(raw)) ++mismatches;
                ++total;
                int p = len - 1;
                while (p >= 0 && digits[static_cast<std::size_t>(p)] == alpha - 1) {
                    digits[static_cast<std::size_t>(p)] = 0;
                    --p;
                }
                if (p < 0) break;
                ++digits[static_cast<std::size_t>(p)];
            }
        }
        long long pw = 1;
        for (int len = 0; len <= 6; ++len) {
            expected += pw;
            pw *= alpha;
        }
    }
    expect(total == expected, "enumeration visited " + std::to_string(total) +
                                  " words, wanted " + std::to_string(expected));
    expect(mismatches == 0, std::to_string(mismatches) + " canonical form mismatches");
}

// 2. Cyclic reduction: the canonical length splits as core plus twice the
// conjugator, and the core is minimal over the bounded conjugation orbit.
void criterion_cyclic_reduction() {
    const auto graphs = oracle::all_graphs(4);
    std::uint64_t seed = 20260814;
    long long bad_split = 0, bad_minimum = 0, bad_recompose = 0;
    for (int it = 0; it < 10000; ++it) {
        const auto& g = graphs[static_cast<std::size_t>(it) % graphs.size()];
        const TraceWord x(g, oracle::random_raw_word(seed, *g, 8));
        const CyclicReduction r = cyclic_reduce(x);
        if (x.length() != r.core.length() + 2 * r.conjugator.length()) ++bad_split;
        if (conjugate(r.core, r.conjugator) != x) ++bad_recompose;
        if (r.core.length() != oracle::min_conjugate_length(x)) ++bad_minimum;
    }
    expect(bad_split == 0, std::to_string(bad_split) + " length splits failed");
    expect(bad_recompose == 0, std::to_string(bad_recompose) + " recompositions failed");
    expect(bad_minimum == 0, std::to_string(bad_minimum) + " cores above the orbit minimum");
}

// 3. Centralizers: every returned generator commutes with its argument, the
// generator set is unchanged under squaring and cubing, and on small balls
// an element commutes exactly when it factors through those generators.
void criterion_centralizers() {
    std::uint64_t seed = 31;
    long long unsound = 0, unstable = 0;
    for (const auto& g : oracle::all_graphs(4)) {
        for (int it = 0; it < 25; ++it) {
            const TraceWord t(g, oracle::random_raw_word(seed, *g, 5));
            const auto gens = centralizer_generators(t);
            for (const auto& c : gens) {
                if (!commutes(c, t)) ++unsound;
            }
            if (t.is_identity()) continue;
            const auto base = sorted_words(gens);
            for (long long m : {2LL, 3LL}) {
                if (sorted_words(centralizer_generators(power(t, m))) != base) ++unstable;
            }
        }
    }
    expect(unsound == 0, std::to_string(unsound) + " non-commuting generators");
    expect(unstable == 0, std::to_string(unstable) + " power-unstable generator sets");

    long long wrong = 0;
    std::vector<std::pair<GraphPtr, int>> domains;
    for (const auto& g : oracle::all_graphs(3)) domains.emplace_back(g, 3);
    using Edges = std::vector<std::pair<std::string, std::string>>;
    const std::vector<std::string> abcd = {"a", "b", "c", "d"};
    domains.emplace_back(discrete_graph(abcd), 2);
    domains.emplace_back(make_graph(abcd, Edges{{"a", "b"}, {"b", "c"}, {"c", "d"}}), 2);
    domains.emplace_back(make_graph(abcd, Edges{{"a", "b"}, {"b", "c"}, {"c", "d"},
                                                {"d", "a"}}),
                         2);
    domains.emplace_back(make_graph(abcd, Edges{{"a", "b"}, {"a", "c"}, {"a", "d"},
                                                {"b", "c"}, {"b", "d"}, {"c", "d"}}),
                         2);
    for (const auto& [g, radius] : domains) {
        const auto elements = oracle::ball(g, radius);
        for (const auto& t : elements) {
            for (const auto& c : elements) {
                if (oracle::centralizer_certificate(t, c).has_value() != commutes(c, t)) {
                    ++wrong;
                }
            }
        }
    }
    expect(wrong == 0, std::to_string(wrong) + " completeness mismatches on balls");
}

// 4. Three-generator subdirect suites for d = 1..5: coordinate witnesses
// die in exactly the other coordinates, the abelian witnesses commute and
// generate a rank-d lattice faithfully on random exponents, and the default
// witnesses fold to a free basis of rank exactly d.
void criterion_subdirect_suites() {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> exp_dist(-3, 3);
    for (int d = 1; d <= 5; ++d) {
        const HdPackage hd = build_hd(d);
        long long pattern_bad = 0;
        for (int i = 1; i <= d; ++i) {
            const TraceWord ci = coordinate_witness(hd, i);
            if (ci.is_identity()) ++pattern_bad;
            for (int j = 1; j <= d; ++j) {
                const bool dies =
                    hd.coordinate_maps[static_cast<std::size_t>(j - 1)].apply(ci).is_identity();
                if (dies != (j != i)) ++pattern_bad;
                if (in_coordinate_kernel(hd, ci, j) != (j != i)) ++pattern_bad;
            }
        }
        expect(pattern_bad == 0, "d=" + std::to_string(d) + ": " +
                                     std::to_string(pattern_bad) +
                                     " coordinate pattern failures");

        const auto zs = abelian_witnesses(hd);
        long long abelian_bad = 0;
        expect(static_cast<int>(zs.size()) == d, "d=" + std::to_string(d) +
                                                     ": wrong witness count");
        for (std::size_t i = 0; i < zs.size(); ++i) {
            for (std::size_t j = i + 1; j < zs.size(); ++j) {
                if (!commutes(zs[i].trace, zs[j].trace)) ++abelian_bad;
            }
        }
        for (int it = 0; it < 100; ++it) {
            std::vector<int> exps(static_cast<std::size_t>(d));
            bool nonzero = false;
            for (int& e : exps) {
                e = exp_dist(rng);
                nonzero = nonzero || e != 0;
            }
            if (!nonzero) exps[0] = 1;
            TraceWord prod = identity_word(hd.product);
            for (int k = 0; k < d; ++k) {
                prod = prod * power(zs[static_cast<std::size_t>(k)].trace, exps[static_cast<std::size_t>(k)]);
            }
            if (prod.is_identity()) ++abelian_bad;
        }
        expect(abelian_bad == 0, "d=" + std::to_string(d) + ": " +
                                     std::to_string(abelian_bad) +
                                     " abelian witness failures");

        const StallingsAutomaton st(hd.coordinate, hd.witnesses);
        expect(st.rank() == d, "d=" + std::to_string(d) + ": witness rank " +
                                   std::to_string(st.rank()));
        expect(is_free_basis(hd.coordinate, hd.witnesses),
               "d=" + std::to_string(d) + ": witnesses are not a free basis");
    }
}

// 5. Every pair quotient of the subdirect kernel surjects onto the integers
// (abelianized free rank >= 1, with explicit weights), and the report layer
// records the finite-presentability consequence as cited rather than
// computed.
void criterion_pair_quotients() {
    for (int d = 2; d <= 5; ++d) {
        const HdPackage hd = build_hd(d);
        for (int i = 1; i <= d; ++i) {
            for (int j = i + 1; j <= d; ++j) {
                const PairQuotientCertificate cert = pair_quotient_certificate(hd, i, j);
                const AbelianizationResult ab = abelianization_snf(cert.quotient);
                expect(ab.free_rank >= 1, "d=" + std::to_string(d) + " pair (" +
                                              std::to_string(i) + ", " + std::to_string(j) +
                                              "): free rank 0");
                expect(!cert.weights.empty(), "d=" + std::to_string(d) + " pair (" +
                                                  std::to_string(i) + ", " +
                                                  std::to_string(j) + "): no weights");
            }
        }
    }
    std::ostringstream out, err;
    const int code = run_cli({"not-vsp", "5", "--json"}, out, err);
    expect(code == 0, "report command exited " + std::to_string(code));
    const auto doc = nlohmann::json::parse(out.str(), nullptr, false);
    expect(!doc.is_discarded(), "report is not valid JSON");
    if (!doc.is_discarded()) {
        bool recorded = false;
        for (const auto& line : doc["cited"]) {
            if (line.get<std::string>().find("not finitely presented") != std::string::npos) {
                recorded = true;
            }
        }
        expect(recorded, "consequence missing from the cited record");
        expect(doc["pass"] == true, "pair quotient report did not pass");
    }
}

// 6. Growth bounds: pinned depths and exponents, envelopes through n = 50,
// feasibility of the default parameter point through n = 10000, and the
// exact rational value at the reference point.
void criterion_bound_numbers() {
    expect(default_r(1) == 4, "default depth at n=1");
    expect(default_r(2) == 6, "default depth at n=2");

    const BigCount g1 = gamma_bound(1, JZMode::bound);
    expect(g1.is_power_of_two() && g1.log2_floor() == 14, "log2 gamma(1) != 14");
    const BigCount g2 = gamma_bound(2, JZMode::bound);
    expect(g2.is_power_of_two() && g2.log2_floor() == 124, "log2 gamma(2) != 124");

    long long envelope_bad = 0;
    for (long long n = 1; n <= 50; ++n) {
        const BigInt cube = BigInt(18) * n * n * n;
        const BigCount gamma = gamma_bound(n, JZMode::bound);
        const BigCount delta = delta_bound(n, JZMode::bound);
        if (gamma.compare(BigCount::power_of_two(cube - n)) > 0) ++envelope_bad;
        if (delta.compare(BigCount::power_of_two(cube)) >= 0) ++envelope_bad;
    }
    expect(envelope_bad == 0, std::to_string(envelope_bad) + " envelope violations");

    long long feasibility_bad = 0;
    const Rational two_thirds(2, 3);
    const Rational one_third(1, 3);
    for (long long n = 1; n <= 10000; ++n) {
        const long long r = default_r(n);
        Rational p = 1;
        for (long long k = 0; k < r; ++k) p *= two_thirds;
        if (!(Rational(n) * p < one_third)) ++feasibility_bad;
        if (!((BigInt(1) << static_cast<unsigned>(r)) <= BigInt(18) * n * n)) ++feasibility_bad;
        if (!gs_inequality_holds({n, two_thirds, r})) ++feasibility_bad;
    }
    expect(feasibility_bad == 0, std::to_string(feasibility_bad) + " feasibility failures");

    expect(gs_value({1, two_thirds, 4}) == Rational(-11, 81),
           "reference value is not -11/81");
}

// 7. The exact filtration layer counts start 2, 3 and the exact-mode bound
// never exceeds the power-of-two mode for n <= 6.
void criterion_exact_layers() {
    const JZProfile prof = jz_profile(6, JZMode::exact);
    expect(prof.layers.size() == 5, "profile depth");
    expect(prof.layers.size() >= 2 && prof.layers[0] == 2 && prof.layers[1] == 3,
           "first layers are not 2, 3");
    for (long long n = 1; n <= 6; ++n) {
        const int cmp = gamma_bound(n, JZMode::exact).compare(gamma_bound(n, JZMode::bound));
        expect(cmp <= 0, "exact mode above bound mode at n=" + std::to_string(n));
    }
}

// 8. The optimizer returns a feasible point that re-verifies and whose
// exponent never exceeds the default parameter point's exponent.
void criterion_optimizer() {
    for (long long n : {1LL, 10LL, 50LL}) {
        const TauSearch s = optimize_tau(n, 16, 64);
        expect(s.feasible, "infeasible at n=" + std::to_string(n));
        if (!s.feasible) continue;
        expect(gs_inequality_holds({n, s.tau, s.r}),
               "returned point fails re-verification at n=" + std::to_string(n));
        const BigInt dflt = BigInt(n) * ((BigInt(1) << static_cast<unsigned>(default_r(n))) - 2);
        expect(s.exponent <= dflt, "exponent above default at n=" + std::to_string(n));
    }
}

// 9. Extension words for d = 1..3: reduction is idempotent, triviality
// decisions agree between the reduction and the embedding image, and the
// stable letter fails to commute with every sampled non-member.
void criterion_extension_words() {
    for (int d = 1; d <= 3; ++d) {
        const GdPackage pkg = build_gd(d);
        const SpecialHnn& h = pkg.embedding.hnn;
        const GraphPtr alpha = hnn_alphabet(h);
        std::uint64_t seed = 900 + static_cast<std::uint64_t>(d);
        long long not_idempotent = 0, disagree = 0;
        for (int it = 0; it < 500; ++it) {
            const TraceWord w(alpha, oracle::random_raw_word(seed, *alpha, 10));
            const HnnWord r = britton_reduce(h, w);
            if (britton_reduce(h, flatten(h, r)) != r) ++not_idempotent;
            if (hnn_is_trivial(h, w) != psi_embed(pkg.embedding, w).is_identity()) ++disagree;
        }
        expect(not_idempotent == 0, "d=" + std::to_string(d) + ": " +
                                        std::to_string(not_idempotent) +
                                        " non-idempotent reductions");
        expect(disagree == 0, "d=" + std::to_string(d) + ": " + std::to_string(disagree) +
                                  " triviality disagreements");

        const int na = pkg.embedding.a_graph->vertex_count();
        const TraceWord t_word(alpha, {Letter{na, 1}});
        long long commuting_outsiders = 0;
        int found = 0;
        while (found < 100) {
            const TraceWord f(pkg.embedding.a_graph,
                              oracle::random_raw_word(seed, *pkg.embedding.a_graph, 8));
            if (pkg.embedding.phi.apply(f).is_identity()) continue;
            ++found;
            const TraceWord fa(alpha, f.letters());
            const TraceWord c = commutator(t_word, fa);
            if (hnn_is_trivial(h, c)) ++commuting_outsiders;
            if (psi_embed(pkg.embedding, c).is_identity()) ++commuting_outsiders;
        }
        expect(commuting_outsiders == 0, "d=" + std::to_string(d) + ": " +
                                             std::to_string(commuting_outsiders) +
                                             " non-members commuting with the stable letter");
    }
}

// 10. Split verification on the four-generator packages, d = 1..3: the
// recovered base is exactly the domain vertex set, the target vertex set
// splits as base plus its link, fiber and quotient decisions agree on at
// least 200 samples, and the target clique number is d + 1 through d = 6.
void criterion_split_verification() {
    for (int d = 1; d <= 3; ++d) {
        const GdPackage pkg = build_gd(d);
        const SplitVerification v = verify_split_embedding(
            pkg.embedding, pkg.kernel_samples, 200, 8, 500 + static_cast<std::uint64_t>(d));
        const std::string tag = "d=" + std::to_string(d) + ": ";

        expect(!v.sample_limited, tag + "verification is sample limited");
        expect(v.base == pkg.embedding.a_graph->vertex_names(),
               tag + "base is not the domain vertex set");

        const auto xs = as_set(v.base);
        const auto ys = as_set(v.complement);
        std::set<std::string> uni = xs;
        uni.insert(ys.begin(), ys.end());
        expect(xs.size() + ys.size() == uni.size(), tag + "base meets its complement");
        expect(uni == as_set(v.ambient), tag + "base + complement misses the ambient");
        const auto& cnames = pkg.embedding.c_graph->vertex_names();
        expect(as_set(v.ambient) == std::set<std::string>(cnames.begin(), cnames.end()),
               tag + "ambient is not the whole target");
        const VertexSet x_set(pkg.embedding.c_graph, v.base);
        expect(as_set(link(x_set).names()) == ys, tag + "complement is not the link");

        expect(v.fiber_checks >= 200, tag + "only " + std::to_string(v.fiber_checks) +
                                          " fiber samples");
        expect(v.quotient_checks == v.fiber_checks,
               tag + "fiber and quotient sample counts differ");
    }
    for (int d = 1; d <= 6; ++d) {
        const GdPackage pkg = build_gd(d);
        expect(pkg.report.clique == d + 1, "d=" + std::to_string(d) + ": clique " +
                                               std::to_string(pkg.report.clique));
        expect(clique_number(*pkg.embedding.c_graph) == d + 1,
               "d=" + std::to_string(d) + ": recomputed clique differs");
    }
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"canonical forms match the exhaustive rewrite closure "
         "(all graphs on <= 4 vertices, all words to length 6)",
         criterion_normal_forms},
        {"cyclic reduction splits lengths and reaches the orbit minimum "
         "(10000 random cases, length <= 8)",
         criterion_cyclic_reduction},
        {"centralizer generators are sound, power-stable, and complete on balls",
         criterion_centralizers},
        {"subdirect suites d=1..5: coordinate pattern, rank-d abelian witnesses, "
         "free basis of rank d",
         criterion_subdirect_suites},
        {"pair quotients surject onto the integers for every pair, d <= 5; "
         "consequence recorded as cited",
         criterion_pair_quotients},
        {"bound numbers: pinned depths and exponents, envelopes to n=50, "
         "default feasibility to n=10000",
         criterion_bound_numbers},
        {"exact filtration layers start 2, 3 and stay at or below the "
         "power-of-two mode (n <= 6)",
         criterion_exact_layers},
        {"optimizer re-verifies and never exceeds the default exponent "
         "(n in {1, 10, 50})",
         criterion_optimizer},
        {"extension words d=1..3: idempotent reduction, triviality agreement, "
         "commutators detect non-members",
         criterion_extension_words},
        {"split verification d=1..3: base recovers the domain, target splits "
         "as base + link, clique is d+1 through d=6",
         criterion_split_verification},
    };

    int passed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Tally tally;
        g_tally = &tally;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second();
        } catch (const std::exception& e) {
            expect(false, std::string("unexpected error: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = tally.failures == 0;
        std::cout << std::setw(2) << i + 1 << "  " << (ok ? "pass" : "FAIL") << "  "
                  << std::fixed << std::setprecision(2) << std::setw(7) << secs << "s  "
                  << criteria[i].first << std::endl;
        if (!ok) {
            std::cout << "      first failure: " << tally.first << std::endl;
        }
        if (ok) ++passed;
    }
    std::cout << "acceptance: " << passed << "/" << criteria.size() << " criteria pass"
              << std::endl;
    return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
