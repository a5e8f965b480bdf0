#include "raag/parabolic.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "raag/errors.hpp"

namespace raag {

namespace {

TraceWord vertex_word(const GraphPtr& g, int v, int sign = 1) {
    return TraceWord(g, {Letter{v, sign}});
}

// Depth-first search over trace prefixes of length target, accepting the
// first prefix r with r^m = t.
bool root_prefix_dfs(const SimplicialGraph& g, std::vector<Letter>& prefix,
                     std::vector<Letter>& rest, std::size_t target, long long m,
                     const TraceWord& t, TraceWord& out) {
    if (prefix.size() == target) {
        TraceWord candidate(t.graph(), prefix);
        if (candidate.length() == static_cast<int>(target) &&
            power(candidate, m) == t) {
            out = candidate;
            return true;
        }
        return false;
    }
    auto exposed = detail::exposed_positions(g, rest, true);
    for (int i : exposed) {
        Letter x = rest[i];
        prefix.push_back(x);
        rest.erase(rest.begin() + i);
        if (root_prefix_dfs(g, prefix, rest, target, m, t, out)) return true;
        rest.insert(rest.begin() + i, x);
        prefix.pop_back();
    }
    return false;
}

// Maximal root of a cyclically reduced word whose support is irreducible.
std::pair<TraceWord, long long> irreducible_root(const TraceWord& t) {
    // Any exponent divides every per-(vertex, sign) occurrence count.
    std::map<std::pair<int, int>, long long> counts;
    for (const Letter& l : t.letters()) ++counts[{l.vertex, l.sign}];
    long long g = 0;
    for (const auto& [key, c] : counts) g = std::gcd(g, c);
    for (long long m = g; m >= 2; --m) {
        if (g % m != 0) continue;
        std::vector<Letter> prefix, rest = t.letters();
        TraceWord out(t.graph());
        if (root_prefix_dfs(*t.graph(), prefix, rest,
                            t.letters().size() / static_cast<std::size_t>(m), m,
                            t, out)) {
            return {out, m};
        }
    }
    return {t, 1};
}

bool support_shortlex_less(const VertexSet& a, const VertexSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.vertices() < b.vertices();
}

} // namespace

FactorDecomposition factor_decomposition(const TraceWord& t) {
    require_pre(!t.is_identity(), "factor decomposition needs a nonempty word");
    require_pre(is_cyclically_reduced(t),
                "factor decomposition needs a cyclically reduced word");
    auto comps = irreducible_components(t.support());
    std::sort(comps.begin(), comps.end(), support_shortlex_less);
    FactorDecomposition out{{}, link(t.support())};
    TraceWord product = identity_word(t.graph());
    for (const auto& comp : comps) {
        TraceWord part = retract(t, comp);
        auto [root, exp] = irreducible_root(part);
        product = product * power(root, exp);
        out.factors.push_back(PureFactor{root, exp});
    }
    require_verified(product == t, "factor decomposition does not multiply back");
    return out;
}

std::pair<TraceWord, long long> primitive_root(const TraceWord& g) {
    require_pre(!g.is_identity(), "primitive root needs a nonempty word");
    auto cr = cyclic_reduce(g);
    auto fd = factor_decomposition(cr.core);
    long long m = 0;
    for (const auto& f : fd.factors) m = std::gcd(m, f.exponent);
    TraceWord root = identity_word(g.graph());
    for (const auto& f : fd.factors) root = root * power(f.root, f.exponent / m);
    require_verified(power(root, m) == cr.core, "root does not power back");
    return {conjugate(root, cr.conjugator), m};
}

std::vector<TraceWord> centralizer_generators(const TraceWord& t) {
    const auto& g = t.graph();
    std::vector<TraceWord> out;
    if (t.is_identity()) {
        for (int v = 0; v < g->vertex_count(); ++v) out.push_back(vertex_word(g, v));
        return out;
    }
    auto cr = cyclic_reduce(t);
    auto fd = factor_decomposition(cr.core);
    for (const auto& f : fd.factors) {
        out.push_back(conjugate(f.root, cr.conjugator));
    }
    for (int s : fd.link_support.vertices()) {
        out.push_back(conjugate(vertex_word(g, s), cr.conjugator));
    }
    return out;
}

Parabolic::Parabolic(const TraceWord& conjugator, const VertexSet& base)
    : conj_(conjugator), base_(base) {
    require_input(*conjugator.graph() == *base.graph(),
                  "conjugator and base live on different graphs");
    // Shorten the representative inside the normalizer coset u·A_{X∪link(X)}.
    VertexSet xl = base_.set_union(link(base_));
    std::vector<Letter> w = conj_.letters();
    for (;;) {
        auto back = detail::exposed_positions(*graph(), w, false);
        std::sort(back.begin(), back.end());
        bool stripped = false;
        for (int i : back) {
            if (xl.contains(w[i].vertex)) {
                w.erase(w.begin() + i);
                stripped = true;
                break;
            }
        }
        if (!stripped) break;
    }
    detail::lexmin_inplace(*graph(), w);
    conj_ = TraceWord(TraceWord::normal_tag{}, conj_.graph(), std::move(w));
}

bool Parabolic::operator==(const Parabolic& o) const {
    return base_ == o.base_ && conj_ == o.conj_;
}

bool member(const TraceWord& g, const Parabolic& p) {
    require_input(*g.graph() == *p.graph(), "word and parabolic graphs differ");
    TraceWord moved = inverse(p.conjugator()) * g * p.conjugator();
    return moved.support().is_subset_of(p.base());
}

bool contains(const Parabolic& p, const Parabolic& q) {
    require_input(*p.graph() == *q.graph(), "parabolic graphs differ");
    for (int v : q.base().vertices()) {
        if (!member(conjugate(vertex_word(q.graph(), v), q.conjugator()), p)) {
            return false;
        }
    }
    return true;
}

Parabolic normalizer(const Parabolic& p) {
    return Parabolic(p.conjugator(), p.base().set_union(link(p.base())));
}

Parabolic pc_element(const TraceWord& g) {
    auto cr = cyclic_reduce(g);
    return Parabolic(cr.conjugator, cr.core.support());
}

Parabolic pc_set(GraphPtr graph, std::span<const TraceWord> gs) {
    TraceWord u = identity_word(graph);
    std::vector<TraceWord> rest(gs.begin(), gs.end());
    for (const auto& g : rest) {
        require_input(*g.graph() == *graph, "closure inputs live on different graphs");
    }
    auto total = [](const std::vector<TraceWord>& ws) {
        long long s = 0;
        for (const auto& w : ws) s += w.length();
        return s;
    };
    // Greedy: conjugate the whole list by one letter while the total length
    // strictly drops; smallest letter key wins ties between equal drops.
    for (;;) {
        long long cur = total(rest);
        long long best = cur;
        std::optional<Letter> best_letter;
        std::vector<TraceWord> best_list;
        for (int v = 0; v < graph->vertex_count(); ++v) {
            for (int sign : {1, -1}) {
                TraceWord l = TraceWord(graph, {Letter{v, sign}});
                std::vector<TraceWord> moved;
                moved.reserve(rest.size());
                for (const auto& g : rest) moved.push_back(inverse(l) * g * l);
                long long tot = total(moved);
                if (tot < best) {
                    best = tot;
                    best_letter = Letter{v, sign};
                    best_list = std::move(moved);
                }
            }
        }
        if (!best_letter) break;
        u = u * TraceWord(graph, {*best_letter});
        rest = std::move(best_list);
    }
    VertexSet x(graph);
    for (const auto& g : rest) x = x.set_union(g.support());
    return Parabolic(u, x);
}

Parabolic pc_set(std::span<const TraceWord> gs) {
    require_input(!gs.empty(), "closure of an empty list needs an explicit graph");
    return pc_set(gs.front().graph(), gs);
}

Parabolic pc_set_certified(GraphPtr graph, std::span<const TraceWord> gs, int bound) {
    for (const auto& g : gs) {
        require_input(*g.graph() == *graph, "closure inputs live on different graphs");
    }
    // All conjugators up to the bound, as canonical forms.
    std::set<TraceWord> seen;
    std::vector<TraceWord> sphere{identity_word(graph)};
    seen.insert(sphere.front());
    for (int r = 1; r <= bound; ++r) {
        std::vector<TraceWord> next;
        for (const TraceWord& w : sphere) {
            for (int v = 0; v < graph->vertex_count(); ++v) {
                for (int sign : {1, -1}) {
                    TraceWord c = w * TraceWord(graph, {Letter{v, sign}});
                    if (c.length() == r && seen.insert(c).second) next.push_back(c);
                }
            }
        }
        sphere = std::move(next);
    }

    std::vector<Parabolic> candidates;
    std::set<std::pair<std::vector<int>, std::vector<int>>> keys;
    for (const TraceWord& u : seen) {
        VertexSet x(graph);
        for (const auto& g : gs) {
            x = x.set_union((inverse(u) * g * u).support());
        }
        Parabolic p(u, x);
        std::vector<int> lkeys;
        for (const Letter& l : p.conjugator().letters()) lkeys.push_back(l.key());
        if (keys.emplace(lkeys, p.base().vertices()).second) candidates.push_back(p);
    }
    for (const Parabolic& p : candidates) {
        bool least = true;
        for (const Parabolic& q : candidates) {
            if (!contains(q, p)) {
                least = false;
                break;
            }
        }
        if (least) return p;
    }
    throw verification_error("no certified least parabolic within conjugator bound " +
                             std::to_string(bound));
}

DirectFactorCheck direct_factor_check(const Parabolic& p) {
    require_pre(p.conjugator().is_identity(),
                "direct factor check needs a full subgroup");
    VertexSet lk = link(p.base());
    DirectFactorCheck out{false, lk};
    out.is_direct_factor = p.base().set_union(lk).size() == p.graph()->vertex_count();
    return out;
}

} // namespace raag
