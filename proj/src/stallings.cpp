#include "raag/stallings.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "raag/errors.hpp"

namespace raag {

namespace {

struct Arc {
    int from, to, gen;
};

int find(std::vector<int>& parent, int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
}

} // namespace

StallingsAutomaton::StallingsAutomaton(GraphPtr alphabet,
                                       std::span<const TraceWord> gens)
    : alphabet_(std::move(alphabet)) {
    require_input(alphabet_ != nullptr, "automaton needs an alphabet");
    require_input(alphabet_->edge_count() == 0,
                  "Stallings automata need a free (discrete) alphabet");

    // Flower: one base-to-base path per generator word.
    std::vector<Arc> arcs;
    int n_states = 1;
    for (const auto& g : gens) {
        require_input(*g.graph() == *alphabet_, "generator over a different alphabet");
        const auto& ls = g.letters();
        for (std::size_t i = 0; i < ls.size(); ++i) {
            int from = i == 0 ? 0 : n_states + static_cast<int>(i) - 1;
            int to = i + 1 == ls.size() ? 0 : n_states + static_cast<int>(i);
            // Store arcs in positive orientation.
            if (ls[i].sign > 0) arcs.push_back({from, to, ls[i].vertex});
            else arcs.push_back({to, from, ls[i].vertex});
        }
        if (!ls.empty()) n_states += static_cast<int>(ls.size()) - 1;
    }

    // Fold: merge targets of equally labeled arcs at a common state.
    std::vector<int> parent(n_states);
    for (int i = 0; i < n_states; ++i) parent[i] = i;
    for (bool changed = true; changed;) {
        changed = false;
        // key: (state, directed label) -> representative target
        std::map<std::pair<int, int>, int> seen;
        for (const Arc& a : arcs) {
            int u = find(parent, a.from), v = find(parent, a.to);
            for (auto [s, label, t] :
                 {std::tuple{u, 2 * a.gen, v}, std::tuple{v, 2 * a.gen + 1, u}}) {
                auto [it, fresh] = seen.emplace(std::pair{s, label}, t);
                if (!fresh) {
                    int other = find(parent, it->second);
                    int mine = find(parent, t);
                    if (other != mine) {
                        parent[std::max(other, mine)] = std::min(other, mine);
                        changed = true;
                    }
                }
            }
        }
    }

    // Dedupe arcs between representatives, then trim non-base leaves.
    std::set<std::tuple<int, int, int>> unique_arcs;
    for (const Arc& a : arcs) {
        unique_arcs.emplace(find(parent, a.from), find(parent, a.to), a.gen);
    }
    int base = find(parent, 0);
    std::map<int, int> degree;
    degree[base] = 0;
    for (const auto& [u, v, g] : unique_arcs) {
        (void)g;
        degree[u] += 1;
        degree[v] += 1;
    }
    for (bool trimmed = true; trimmed;) {
        trimmed = false;
        for (const auto& [s, d] : degree) {
            if (s != base && d <= 1) {
                std::set<std::tuple<int, int, int>> kept;
                for (const auto& arc : unique_arcs) {
                    auto [u, v, g] = arc;
                    (void)g;
                    if (u == s || v == s) {
                        degree[u] -= 1;
                        degree[v] -= 1;
                    } else {
                        kept.insert(arc);
                    }
                }
                unique_arcs = std::move(kept);
                degree.erase(s);
                trimmed = true;
                break;
            }
        }
    }

    // Compact live states into the transition table.
    std::map<int, int> id;
    id[base] = 0;
    for (const auto& [s, d] : degree) {
        (void)d;
        id.emplace(s, static_cast<int>(id.size()));
    }
    state_count_ = static_cast<int>(id.size());
    edge_count_ = static_cast<int>(unique_arcs.size());
    base_ = 0;
    step_.assign(state_count_, std::vector<int>(2 * alphabet_->vertex_count(), -1));
    for (const auto& [u, v, g] : unique_arcs) {
        step_[id[u]][2 * g] = id[v];
        step_[id[v]][2 * g + 1] = id[u];
    }
}

bool StallingsAutomaton::member(const TraceWord& w) const {
    require_input(*w.graph() == *alphabet_, "word over a different alphabet");
    int s = base_;
    for (const Letter& l : w.letters()) {
        s = step_[s][l.key()];
        if (s < 0) return false;
    }
    return s == base_;
}

bool is_free_basis(GraphPtr alphabet, std::span<const TraceWord> gens) {
    StallingsAutomaton a(std::move(alphabet), gens);
    return a.rank() == static_cast<int>(gens.size());
}

} // namespace raag
