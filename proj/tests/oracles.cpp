#include "oracles.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "raag/parabolic.hpp"

namespace raag::oracle {

namespace {

std::int64_t ipow9(int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= 9;
    return r;
}

} // namespace

BruteForceNormalForm::BruteForceNormalForm(GraphPtr graph, int max_len)
    : graph_(std::move(graph)), max_len_(max_len) {
    const int nv = graph_->vertex_count();
    if (nv > 4 || max_len > 6) throw std::logic_error("oracle table too large");
    const std::int64_t slots = ipow9(max_len_);
    parent_.resize(slots);
    for (std::int64_t i = 0; i < slots; ++i) parent_[i] = static_cast<std::int32_t>(i);

    // Roots stay minimal in each class, so find() lands on the shortlex least
    // member directly (the encoding is order-isomorphic to shortlex).
    auto unite = [&](std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    };

    // Enumerate words length by length with an odometer over letter keys.
    std::vector<Letter> w;
    const int max_key = 2 * nv - 1;
    for (int len = 1; len <= max_len_; ++len) {
        w.assign(len, Letter{0, 1});
        for (;;) {
            std::int32_t self = encode(w);
            for (int i = 0; i + 1 < len; ++i) {
                if (w[i].vertex != w[i + 1].vertex &&
                    graph_->adjacent(w[i].vertex, w[i + 1].vertex)) {
                    std::vector<Letter> sw = w;
                    std::swap(sw[i], sw[i + 1]);
                    unite(self, encode(sw));
                }
                if (w[i].vertex == w[i + 1].vertex && w[i].sign == -w[i + 1].sign) {
                    std::vector<Letter> del = w;
                    del.erase(del.begin() + i, del.begin() + i + 2);
                    unite(self, encode(del));
                }
            }
            int pos = len - 1;
            while (pos >= 0) {
                int key = w[pos].key() + 1;
                if (key <= max_key) {
                    w[pos] = Letter{key / 2, key % 2 == 0 ? 1 : -1};
                    break;
                }
                w[pos] = Letter{0, 1};
                --pos;
            }
            if (pos < 0) break;
        }
    }
}

std::int32_t BruteForceNormalForm::encode(std::span<const Letter> word) const {
    if (static_cast<int>(word.size()) > max_len_) {
        throw std::logic_error("word exceeds oracle length bound");
    }
    // First letter in the most significant digit, digits 1..8: integer order
    // on codes is exactly shortlex order on words.
    std::int64_t code = 0;
    for (const Letter& l : word) {
        int key = l.key();
        if (l.vertex >= graph_->vertex_count()) {
            throw std::logic_error("letter outside oracle alphabet");
        }
        code = code * 9 + (key + 1);
    }
    return static_cast<std::int32_t>(code);
}

std::vector<Letter> BruteForceNormalForm::decode(std::int32_t code) const {
    std::vector<Letter> out;
    std::int64_t c = code;
    while (c > 0) {
        int d = static_cast<int>(c % 9);
        c /= 9;
        if (d == 0) throw std::logic_error("invalid word code");
        int key = d - 1;
        out.push_back(Letter{key / 2, key % 2 == 0 ? 1 : -1});
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::int32_t BruteForceNormalForm::find(std::int32_t a) const {
    while (parent_[a] != a) {
        parent_[a] = parent_[parent_[a]];
        a = parent_[a];
    }
    return a;
}

std::vector<Letter> BruteForceNormalForm::normal_form(std::span<const Letter> word) const {
    return decode(find(encode(word)));
}

bool BruteForceNormalForm::same_element(std::span<const Letter> a,
                                        std::span<const Letter> b) const {
    return find(encode(a)) == find(encode(b));
}

int min_conjugate_length(const TraceWord& g) {
    std::set<TraceWord> seen;
    std::vector<TraceWord> frontier{g};
    seen.insert(g);
    int best = g.length();
    const int nv = g.graph()->vertex_count();
    while (!frontier.empty()) {
        std::vector<TraceWord> next;
        for (const TraceWord& w : frontier) {
            best = std::min(best, w.length());
            for (int v = 0; v < nv; ++v) {
                for (int sign : {1, -1}) {
                    TraceWord l(w.graph(), {Letter{v, sign}});
                    TraceWord c = l * w * inverse(l);
                    if (c.length() > g.length()) continue;
                    if (seen.insert(c).second) next.push_back(c);
                }
            }
        }
        frontier = std::move(next);
    }
    return best;
}

std::vector<TraceWord> ball(GraphPtr graph, int radius) {
    std::set<TraceWord> seen;
    std::vector<TraceWord> sphere{identity_word(graph)};
    seen.insert(sphere.front());
    const int nv = graph->vertex_count();
    for (int r = 1; r <= radius; ++r) {
        std::vector<TraceWord> next;
        for (const TraceWord& w : sphere) {
            for (int v = 0; v < nv; ++v) {
                for (int sign : {1, -1}) {
                    TraceWord c = w * TraceWord(graph, {Letter{v, sign}});
                    if (c.length() == r && seen.insert(c).second) next.push_back(c);
                }
            }
        }
        sphere = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

std::vector<GraphPtr> all_graphs(int max_vertices) {
    const std::vector<std::string> pool = {"a", "b", "c", "d", "e", "f"};
    std::vector<GraphPtr> out;
    for (int n = 1; n <= max_vertices; ++n) {
        std::vector<std::string> names(pool.begin(), pool.begin() + n);
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
        }
        for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
            std::vector<std::pair<int, int>> edges;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if (mask & (1u << s)) edges.push_back(slots[s]);
            }
            out.push_back(make_graph(names, edges));
        }
    }
    return out;
}

std::optional<int> centralizer_certificate(const TraceWord& t, const TraceWord& c) {
    const auto& graph = t.graph();
    if (t.is_identity()) return c.length(); // every letter is a generator
    auto cr = cyclic_reduce(t);
    auto fd = factor_decomposition(cr.core);
    TraceWord d = inverse(cr.conjugator) * c * cr.conjugator;

    // The centralizer lives in the direct product of the factor subgroups
    // A_{T_i} and A_S, so d must project onto a power of each root.
    VertexSet allowed = fd.link_support;
    for (const auto& f : fd.factors) allowed = allowed.set_union(f.root.support());
    if (!d.support().is_subset_of(allowed)) return std::nullopt;

    int factor_count = 0;
    TraceWord rebuilt = identity_word(graph);
    for (const auto& f : fd.factors) {
        TraceWord part = retract(d, f.root.support());
        if (part.length() % f.root.length() != 0) return std::nullopt;
        long long a = part.length() / f.root.length();
        if (power(f.root, a) == part) {
            // positive exponent
        } else if (power(f.root, -a) == part) {
            a = -a;
        } else {
            return std::nullopt;
        }
        factor_count += static_cast<int>(a < 0 ? -a : a);
        rebuilt = rebuilt * power(f.root, a);
    }
    TraceWord s_part = retract(d, fd.link_support);
    factor_count += s_part.length();
    rebuilt = rebuilt * s_part;
    if (rebuilt != d) return std::nullopt;
    return factor_count;
}

std::uint64_t next_rand(std::uint64_t& state) {
    // splitmix64; fixed seeds in the tests keep runs reproducible.
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::vector<Letter> random_raw_word(std::uint64_t& state, const SimplicialGraph& g,
                                    int max_len) {
    int len = static_cast<int>(next_rand(state) % (max_len + 1));
    std::vector<Letter> out;
    out.reserve(len);
    for (int i = 0; i < len; ++i) {
        int v = static_cast<int>(next_rand(state) % g.vertex_count());
        int sign = (next_rand(state) & 1) ? 1 : -1;
        out.push_back(Letter{v, sign});
    }
    return out;
}

} // namespace raag::oracle
