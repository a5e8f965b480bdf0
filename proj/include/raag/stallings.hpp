#ifndef RAAG_STALLINGS_HPP
#define RAAG_STALLINGS_HPP

#include <span>
#include <vector>

#include "raag/trace_word.hpp"

namespace raag {

// Folded core automaton of a finitely generated subgroup of a free group.
// Arcs are undirected edges labeled by a generator; traversal against the
// orientation reads the inverse letter.
class StallingsAutomaton {
public:
    // alphabet must be a discrete graph (a free group); gens are words over it.
    StallingsAutomaton(GraphPtr alphabet, std::span<const TraceWord> gens);

    const GraphPtr& alphabet() const { return alphabet_; }
    int state_count() const { return state_count_; }
    int edge_count() const { return edge_count_; }
    int rank() const { return edge_count_ - state_count_ + 1; }

    // True iff w traces a closed loop at the base state.
    bool member(const TraceWord& w) const;

private:
    GraphPtr alphabet_;
    // step_[state][2v + (sign<0)] = target state or -1.
    std::vector<std::vector<int>> step_;
    int base_ = 0;
    int state_count_ = 0;
    int edge_count_ = 0;
};

// rank(<gens>) == gens.size(); fails for trivial or dependent generators.
bool is_free_basis(GraphPtr alphabet, std::span<const TraceWord> gens);

} // namespace raag

#endif
