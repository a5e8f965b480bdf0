#include "raag/hnn.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <utility>

#include "raag/errors.hpp"
#include "raag/parabolic.hpp"

namespace raag {

namespace {

void validate(const SpecialHnn& h) {
    require_input(h.domain != nullptr, "missing F alphabet");
    require_input(h.domain->vertex_count() > 0, "F alphabet is empty");
    require_input(h.domain->edge_count() == 0, "F alphabet must be discrete");
    require_input(!h.stable_letter.empty(), "missing stable letter");
    require_input(h.domain->vertex_index(h.stable_letter) < 0,
                  "stable letter collides with an F generator");
    require_input(static_cast<bool>(h.in_subgroup), "missing membership oracle");
}

bool oracle_member(const SpecialHnn& h, const TraceWord& f) {
    try {
        return h.in_subgroup(f);
    } catch (const std::exception& e) {
        throw oracle_error("membership oracle failed on \"" + print_word(f) +
                           "\": " + e.what());
    }
}

bool f_trivial(const SpecialHnn& h, const TraceWord& f) {
    if (!h.trivial_in_f) return f.is_identity();
    try {
        return h.trivial_in_f(f);
    } catch (const std::exception& e) {
        throw oracle_error("word problem oracle failed on \"" + print_word(f) +
                           "\": " + e.what());
    }
}

bool pinchable(const SpecialHnn& h, const TraceWord& f) {
    // an interior identity block merges by plain arithmetic, no relation used
    return f.is_identity() || oracle_member(h, f);
}

struct RawSplit {
    std::vector<Letter> head;
    std::vector<std::pair<long long, std::vector<Letter>>> tail;
};

// Letters of w reindexed into the F alphabet, stable-letter runs split off
// as powers.
RawSplit split_raw(const SpecialHnn& h, const TraceWord& w) {
    const SimplicialGraph& g = *w.graph();
    require_input(g.edge_count() == 0, "raw words live over a free alphabet");
    RawSplit out;
    for (const Letter& l : w.letters()) {
        const std::string& name = g.vertex_name(l.vertex);
        if (name == h.stable_letter) {
            if (!out.tail.empty() && out.tail.back().second.empty()) {
                out.tail.back().first += l.sign;
                if (out.tail.back().first == 0) out.tail.pop_back();
            } else {
                out.tail.push_back({l.sign, {}});
            }
        } else {
            const int v = h.domain->vertex_index(name);
            require_input(v >= 0, "letter \"" + name + "\" is not an F generator");
            auto& raw = out.tail.empty() ? out.head : out.tail.back().second;
            raw.push_back({v, l.sign});
        }
    }
    return out;
}

TraceWord random_word(std::mt19937_64& rng, const GraphPtr& g, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len);
    std::uniform_int_distribution<int> vtx(0, g->vertex_count() - 1);
    std::uniform_int_distribution<int> sgn(0, 1);
    std::vector<Letter> raw;
    const int n = len(rng);
    raw.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) raw.push_back({vtx(rng), sgn(rng) == 0 ? 1 : -1});
    return TraceWord(g, raw);
}

} // namespace

GraphPtr hnn_alphabet(const SpecialHnn& h) {
    validate(h);
    std::vector<std::string> names = h.domain->vertex_names();
    names.push_back(h.stable_letter);
    return discrete_graph(names);
}

HnnWord britton_reduce(const SpecialHnn& h, const TraceWord& w) {
    validate(h);
    RawSplit s = split_raw(h, w);
    HnnWord out{TraceWord(h.domain, s.head), {}};
    out.tail.reserve(s.tail.size());
    for (const auto& [k, raw] : s.tail) out.tail.push_back({k, TraceWord(h.domain, raw)});

    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i + 1 < out.tail.size(); ++i) {
            if (!pinchable(h, out.tail[i].word)) continue;
            TraceWord& left = (i == 0) ? out.head : out.tail[i - 1].word;
            const long long k = out.tail[i].power + out.tail[i + 1].power;
            const auto at = out.tail.begin() + static_cast<std::ptrdiff_t>(i);
            if (k != 0) {
                left = left * out.tail[i].word;
                out.tail[i] = {k, out.tail[i + 1].word};
                out.tail.erase(at + 1);
            } else {
                left = left * out.tail[i].word * out.tail[i + 1].word;
                out.tail.erase(at, at + 2);
            }
            changed = true;
            break;
        }
    }
    return out;
}

bool hnn_is_trivial(const SpecialHnn& h, const TraceWord& w) {
    const HnnWord r = britton_reduce(h, w);
    return r.tail.empty() && f_trivial(h, r.head);
}

TraceWord flatten(const SpecialHnn& h, const HnnWord& g) {
    const GraphPtr alpha = hnn_alphabet(h);
    const int t = alpha->vertex_count() - 1;
    std::vector<Letter> raw;
    auto push_word = [&](const TraceWord& f) {
        require_input(*f.graph() == *h.domain, "block word over the wrong alphabet");
        raw.insert(raw.end(), f.letters().begin(), f.letters().end());
    };
    push_word(g.head);
    for (const auto& b : g.tail) {
        const int sign = b.power < 0 ? -1 : 1;
        for (long long i = 0, n = b.power < 0 ? -b.power : b.power; i < n; ++i) {
            raw.push_back({t, sign});
        }
        push_word(b.word);
    }
    return TraceWord(alpha, raw);
}

void spot_check_oracle(const SpecialHnn& h, std::span<const TraceWord> members,
                       std::span<const TraceWord> conjugators) {
    validate(h);
    require_verified(oracle_member(h, identity_word(h.domain)),
                     "oracle rejects the identity");
    for (const TraceWord& m : members) {
        require_pre(oracle_member(h, m),
                    "claimed member \"" + print_word(m) + "\" is rejected by the oracle");
    }
    for (const TraceWord& m : members) {
        require_verified(oracle_member(h, inverse(m)),
                         "oracle not closed under inverse at \"" + print_word(m) + "\"");
        for (const TraceWord& m2 : members) {
            require_verified(oracle_member(h, m * m2),
                             "oracle not closed under product at \"" +
                                 print_word(m * m2) + "\"");
        }
        for (const TraceWord& c : conjugators) {
            require_verified(oracle_member(h, conjugate(m, c)),
                             "oracle not normal at \"" +
                                 print_word(conjugate(m, c)) + "\"");
        }
    }
}

StableProductWord reduce_product_word(const StableProductWord& w) {
    return free_product_reduce(w, WordSyllableOps{}, PowerSyllableOps{});
}

EmbeddingPackage make_embedding(GraphPtr a_graph, GraphPtr b_graph,
                                std::vector<std::string> generator_names,
                                std::vector<TraceWord> a_images,
                                std::vector<TraceWord> b_images,
                                std::string stable_letter) {
    require_input(a_graph != nullptr && b_graph != nullptr, "missing target graph");
    require_input(!generator_names.empty(), "no generators");
    require_input(a_images.size() == generator_names.size() &&
                      b_images.size() == generator_names.size(),
                  "need one image over A and one over B per generator");
    require_input(!stable_letter.empty(), "missing stable letter");
    {
        std::vector<std::string> sorted = generator_names;
        std::sort(sorted.begin(), sorted.end());
        require_input(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                      "duplicate generator name");
    }
    for (const TraceWord& w : a_images) {
        require_input(*w.graph() == *a_graph, "A image over the wrong graph");
    }
    for (const TraceWord& w : b_images) {
        require_input(*w.graph() == *b_graph, "B image over the wrong graph");
    }
    for (const std::string& n : b_graph->vertex_names()) {
        require_input(a_graph->vertex_index(n) < 0,
                      "vertex \"" + n + "\" appears in both targets");
    }
    require_input(a_graph->vertex_index(stable_letter) < 0 &&
                      b_graph->vertex_index(stable_letter) < 0,
                  "stable letter collides with a target vertex");
    for (const std::string& n : generator_names) {
        require_input(n != stable_letter, "stable letter collides with an F generator");
    }
    const bool phi_nontrivial =
        std::any_of(b_images.begin(), b_images.end(),
                    [](const TraceWord& w) { return !w.is_identity(); });
    require_pre(phi_nontrivial, "trivial quotient map: the subgroup would be all of F");

    Homomorphism include_a(generator_names, a_images);
    Homomorphism phi(generator_names, b_images);
    SpecialHnn hnn{discrete_graph(generator_names), stable_letter,
                   [phi](const TraceWord& w) { return phi.apply(w).is_identity(); },
                   [include_a](const TraceWord& w) {
                       return include_a.apply(w).is_identity();
                   }};

    GraphPtr c = join(a_graph, disjoint_union(b_graph, discrete_graph({stable_letter})));
    const int na = a_graph->vertex_count();
    const int nb = b_graph->vertex_count();
    std::vector<std::string> psi_names = generator_names;
    psi_names.push_back(stable_letter);
    std::vector<TraceWord> psi_images;
    psi_images.reserve(psi_names.size());
    for (std::size_t k = 0; k < generator_names.size(); ++k) {
        std::vector<Letter> raw = a_images[k].letters();
        for (const Letter& l : b_images[k].letters()) raw.push_back({l.vertex + na, l.sign});
        psi_images.emplace_back(c, raw);
    }
    psi_images.push_back(TraceWord(c, {Letter{na + nb, 1}}));
    Homomorphism psi_flat(std::move(psi_names), std::move(psi_images));

    return {std::move(hnn),       std::move(a_graph), std::move(b_graph),
            std::move(c),         std::move(include_a), std::move(phi),
            std::move(psi_flat)};
}

CElement psi_embed(const EmbeddingPackage& pkg, const TraceWord& w) {
    const SimplicialGraph& g = *w.graph();
    require_input(g.edge_count() == 0, "raw words live over a free alphabet");
    TraceWord a = identity_word(pkg.a_graph);
    StableProductWord bt;
    for (const Letter& l : w.letters()) {
        const std::string& name = g.vertex_name(l.vertex);
        if (name == pkg.hnn.stable_letter) {
            bt.emplace_back(std::in_place_index<1>, static_cast<long long>(l.sign));
        } else {
            require_input(pkg.hnn.domain->vertex_index(name) >= 0,
                          "letter \"" + name + "\" is not an F generator");
            a = a * power(pkg.include_a.image_of(name), l.sign);
            bt.emplace_back(std::in_place_index<0>, power(pkg.phi.image_of(name), l.sign));
        }
    }
    return {std::move(a), reduce_product_word(bt)};
}

TraceWord flat_image(const EmbeddingPackage& pkg, const CElement& e) {
    require_input(*e.a_part.graph() == *pkg.a_graph, "A coordinate over the wrong graph");
    const int na = pkg.a_graph->vertex_count();
    const int nb = pkg.b_graph->vertex_count();
    std::vector<Letter> raw = e.a_part.letters();
    for (const auto& syl : e.bt_part) {
        if (syl.index() == 0) {
            const TraceWord& bw = std::get<0>(syl);
            require_input(*bw.graph() == *pkg.b_graph, "B syllable over the wrong graph");
            for (const Letter& l : bw.letters()) raw.push_back({l.vertex + na, l.sign});
        } else {
            const long long k = std::get<1>(syl);
            const int sign = k < 0 ? -1 : 1;
            for (long long i = 0, n = k < 0 ? -k : k; i < n; ++i) {
                raw.push_back({na + nb, sign});
            }
        }
    }
    return TraceWord(pkg.c_graph, raw);
}

namespace {

std::string strip(const std::string& line) {
    std::string s = line.substr(0, line.find('#'));
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> tokens(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

} // namespace

EmbeddingPackage parse_embedding(const std::string& text) {
    std::vector<std::string> a_names, b_names, gen_names;
    std::vector<std::pair<std::string, std::string>> a_edges, b_edges;
    std::vector<std::string> a_texts, b_texts;
    std::string stable;

    std::istringstream in(text);
    for (std::string raw_line; std::getline(in, raw_line);) {
        const std::string line = strip(raw_line);
        if (line.empty()) continue;
        const auto colon = line.find(':');
        require_input(colon != std::string::npos, "bad line: " + line);
        const std::string key = strip(line.substr(0, colon));
        const std::string rest = strip(line.substr(colon + 1));
        if (key == "a_vertices" || key == "b_vertices") {
            auto& names = key[0] == 'a' ? a_names : b_names;
            require_input(names.empty(), "repeated " + key + " line");
            names = tokens(rest);
            require_input(!names.empty(), key + " line is empty");
        } else if (key == "a_edge" || key == "b_edge") {
            const auto ts = tokens(rest);
            require_input(ts.size() == 2, key + " needs two vertex names");
            (key[0] == 'a' ? a_edges : b_edges).push_back({ts[0], ts[1]});
        } else if (key == "stable") {
            const auto ts = tokens(rest);
            require_input(stable.empty() && ts.size() == 1, "stable needs one name");
            stable = ts[0];
        } else if (key == "gen") {
            const auto bar1 = rest.find('|');
            require_input(bar1 != std::string::npos, "gen needs name | A word | B word");
            const auto bar2 = rest.find('|', bar1 + 1);
            require_input(bar2 != std::string::npos, "gen needs name | A word | B word");
            const auto name = tokens(rest.substr(0, bar1));
            require_input(name.size() == 1, "gen needs exactly one name");
            gen_names.push_back(name[0]);
            a_texts.push_back(strip(rest.substr(bar1 + 1, bar2 - bar1 - 1)));
            b_texts.push_back(strip(rest.substr(bar2 + 1)));
        } else {
            throw input_error("unknown line key: " + key);
        }
    }
    require_input(!a_names.empty(), "missing a_vertices");
    require_input(!b_names.empty(), "missing b_vertices");
    require_input(!stable.empty(), "missing stable line");
    require_input(!gen_names.empty(), "missing gen lines");

    GraphPtr a = make_graph(a_names, a_edges);
    GraphPtr b = make_graph(b_names, b_edges);
    std::vector<TraceWord> a_images, b_images;
    for (const std::string& t : a_texts) a_images.push_back(parse_word(a, t));
    for (const std::string& t : b_texts) b_images.push_back(parse_word(b, t));
    return make_embedding(std::move(a), std::move(b), std::move(gen_names),
                          std::move(a_images), std::move(b_images), std::move(stable));
}

std::string print_embedding(const EmbeddingPackage& pkg) {
    std::ostringstream out;
    auto graph_lines = [&](const char* stem, const GraphPtr& g) {
        out << stem << "_vertices:";
        for (const auto& n : g->vertex_names()) out << ' ' << n;
        out << '\n';
        for (int u = 0; u < g->vertex_count(); ++u) {
            for (int v = u + 1; v < g->vertex_count(); ++v) {
                if (g->adjacent(u, v)) {
                    out << stem << "_edge: " << g->vertex_name(u) << ' '
                        << g->vertex_name(v) << '\n';
                }
            }
        }
    };
    graph_lines("a", pkg.a_graph);
    graph_lines("b", pkg.b_graph);
    out << "stable: " << pkg.hnn.stable_letter << '\n';
    for (const std::string& n : pkg.hnn.domain->vertex_names()) {
        out << "gen: " << n << " | " << print_word(pkg.include_a.image_of(n)) << " | "
            << print_word(pkg.phi.image_of(n)) << '\n';
    }
    return out.str();
}

EmbeddingPackage load_embedding_file(const std::string& path) {
    std::ifstream in(path);
    require_input(in.good(), "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_embedding(buf.str());
}

GdPackage build_gd(int d) {
    HdPackage hd = build_hd(d);
    GraphPtr a = discrete_graph({"x", "y", "z"});
    const std::vector<std::string> names = {"x", "y", "z"};
    std::vector<TraceWord> a_images, b_images;
    for (const std::string& n : names) {
        a_images.push_back(parse_word(a, n));
        b_images.push_back(hd.product_map.image_of(n));
    }
    EmbeddingPackage emb = make_embedding(a, hd.product, names, a_images, b_images, "t");

    std::vector<TraceWord> samples;
    if (d == 1) {
        const GraphPtr& dom = emb.hnn.domain;
        const Homomorphism lift({"x", "y"}, {parse_word(dom, "x"), parse_word(dom, "y")});
        samples.push_back(inverse(parse_word(dom, "z")) * lift.apply(hd.witnesses[0]));
    } else {
        for (int i = 1; i <= d; ++i) {
            for (int j = i + 1; j <= d; ++j) {
                samples.push_back(
                    commutator(coordinate_witness(hd, i), coordinate_witness(hd, j)));
            }
        }
    }
    for (const TraceWord& s : samples) {
        require_verified(!s.is_identity(), "kernel sample degenerated");
        require_verified(oracle_member(emb.hnn, s), "kernel sample escaped the kernel");
    }

    GdReport report;
    report.d = d;
    report.generator_count = emb.hnn.domain->vertex_count() + 1;
    report.clique = clique_number(*emb.c_graph);
    for (const TupleElement& te : abelian_witnesses(hd)) {
        StableProductWord bt;
        bt.emplace_back(std::in_place_index<0>, te.trace);
        report.abelian_images.push_back(
            flat_image(emb, CElement{identity_word(a), std::move(bt)}));
    }
    report.cited = {
        "the extension acts on a tree with free vertex stabilizers, so its "
        "cohomological dimension is 2",
        "any right angled Artin group containing the extension contains a free "
        "abelian subgroup of rank " + std::to_string(d) +
            ", so its cohomological dimension is at least " + std::to_string(d)};

    return {std::move(hd), std::move(emb), std::move(samples), std::move(report)};
}

SplitVerification verify_split_embedding(const EmbeddingPackage& pkg,
                                         std::span<const TraceWord> kernel_samples,
                                         int random_checks, int max_len,
                                         std::uint64_t seed) {
    require_pre(random_checks > 0, "need a positive sample count");
    require_pre(max_len > 0, "need a positive length bound");
    require_pre(!kernel_samples.empty(), "need at least one kernel sample");
    for (const TraceWord& s : kernel_samples) {
        require_pre(oracle_member(pkg.hnn, s),
                    "sample \"" + print_word(s) + "\" is not in the kernel");
    }

    std::mt19937_64 rng(seed);
    std::vector<TraceWord> conjugators;
    for (int i = 0, n = std::min(random_checks, 8); i < n; ++i) {
        conjugators.push_back(random_word(rng, pkg.hnn.domain, max_len));
    }
    spot_check_oracle(pkg.hnn, kernel_samples, conjugators);

    SplitVerification rep;

    std::vector<TraceWord> gen_images;
    for (const std::string& n : pkg.hnn.domain->vertex_names()) {
        gen_images.push_back(pkg.psi_flat.image_of(n));
    }
    gen_images.push_back(pkg.psi_flat.image_of(pkg.hnn.stable_letter));
    const Parabolic pg = pc_set(pkg.c_graph, gen_images);
    require_verified(pg.conjugator().is_identity(),
                     "closure clause: generator closure is a conjugated parabolic");
    const VertexSet ambient = pg.base();
    rep.ambient = ambient.names();
    rep.sample_limited = ambient != full_vertex_set(pkg.c_graph);

    std::vector<TraceWord> kernel_words(kernel_samples.begin(), kernel_samples.end());
    for (const TraceWord& s : kernel_samples) {
        for (const TraceWord& c : conjugators) kernel_words.push_back(conjugate(s, c));
    }
    std::vector<TraceWord> n_images;
    for (const TraceWord& f : kernel_words) n_images.push_back(pkg.psi_flat.apply(f));
    const Parabolic pn = pc_set(pkg.c_graph, n_images);
    require_verified(pn.conjugator().is_identity(),
                     "split clause: kernel closure is a conjugated parabolic");
    const VertexSet x = pn.base();
    require_verified(x.is_subset_of(ambient),
                     "split clause: kernel closure leaves the ambient");
    const VertexSet y = link(x).set_intersection(ambient);
    require_verified(x.set_union(y) == ambient,
                     "split clause: ambient is not the base joined with its link");
    if (!rep.sample_limited) {
        const DirectFactorCheck dfc = direct_factor_check(pn);
        require_verified(dfc.is_direct_factor && dfc.complement == y,
                         "split clause: direct factor cross-check failed");
    }
    rep.base = x.names();
    rep.complement = y.names();

    std::vector<TraceWord> probes = kernel_words;
    for (const std::string& n : pkg.hnn.domain->vertex_names()) {
        probes.push_back(parse_word(pkg.hnn.domain, n));
    }
    for (int i = 0; i < random_checks; ++i) {
        probes.push_back(random_word(rng, pkg.hnn.domain, max_len));
    }

    const Parabolic factor(identity_word(pkg.c_graph), x);
    for (const TraceWord& f : probes) {
        const bool in_n = oracle_member(pkg.hnn, f);
        const TraceWord img = pkg.psi_flat.apply(f);
        require_verified(member(img, factor) == in_n,
                         "fiber clause: factor membership mismatched the oracle on \"" +
                             print_word(f) + "\"");
        ++rep.fiber_checks;
        require_verified(retract(img, y).is_identity() == in_n,
                         "quotient clause: retraction kernel mismatched the oracle on \"" +
                             print_word(f) + "\"");
        ++rep.quotient_checks;
    }
    return rep;
}

RoundtripReport embedding_roundtrip(const EmbeddingPackage& pkg,
                                    std::span<const TraceWord> kernel_samples,
                                    int checks, int max_len, std::uint64_t seed) {
    require_pre(checks > 0, "need a positive check count");
    require_pre(max_len > 0, "need a positive length bound");
    require_pre(!kernel_samples.empty(), "need at least one kernel sample");

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> t_pow(1, 3);
    RoundtripReport rep;
    const GraphPtr alpha = hnn_alphabet(pkg.hnn);
    const TraceWord t = parse_word(alpha, pkg.hnn.stable_letter);

    for (int i = 0; i < checks; ++i) {
        TraceWord w = identity_word(alpha);
        if (i % 3 == 2) {
            // commutator of a t power with a conjugated kernel member: trivial
            // in the extension, rarely trivial as a raw word
            const TraceWord& s =
                kernel_samples[static_cast<std::size_t>(i) % kernel_samples.size()];
            const TraceWord lifted(alpha, s.letters());
            const TraceWord m = conjugate(lifted, random_word(rng, alpha, max_len));
            w = commutator(power(t, t_pow(rng)), m);
        } else {
            w = random_word(rng, alpha, max_len);
        }
        const bool via_britton = hnn_is_trivial(pkg.hnn, w);
        const CElement split = psi_embed(pkg, w);
        require_verified(via_britton == split.is_identity(),
                         "triviality agreement failed on \"" + print_word(w) + "\"");
        require_verified(flat_image(pkg, split) == pkg.psi_flat.apply(w),
                         "flat image mismatched the split image on \"" +
                             print_word(w) + "\"");
        ++rep.agreement_checks;
    }

    for (int i = 0; i < checks; ++i) {
        TraceWord f = random_word(rng, pkg.hnn.domain, max_len);
        while (f.is_identity()) f = random_word(rng, pkg.hnn.domain, max_len);
        require_verified(!psi_embed(pkg, f).is_identity(),
                         "injectivity spot check failed on \"" + print_word(f) + "\"");
        ++rep.injectivity_checks;
    }

    rep.split = verify_split_embedding(pkg, kernel_samples, checks, max_len, seed + 1);
    rep.target_graph = print_graph(*pkg.c_graph);
    rep.clique = clique_number(*pkg.c_graph);
    return rep;
}

} // namespace raag
