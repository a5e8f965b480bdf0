#ifndef RAAG_TRACE_WORD_HPP
#define RAAG_TRACE_WORD_HPP

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "raag/graph.hpp"

namespace raag {

// One signed generator occurrence.  Ordering for canonical forms: vertices in
// declaration order, positive sign before negative on the same vertex.
struct Letter {
    int vertex = 0;
    int sign = 1; // +1 or -1

    Letter inverse() const { return {vertex, -sign}; }
    int key() const { return 2 * vertex + (sign < 0 ? 1 : 0); }
    bool operator==(const Letter& o) const { return vertex == o.vertex && sign == o.sign; }
};

namespace detail {

// Appends x to a word kept geodesic, cancelling against the unique matching
// occurrence when one can commute to the end.
void push_reduced(const SimplicialGraph& g, std::vector<Letter>& buf, Letter x);

// Reorders a geodesic word into its lexicographically least linearization.
void lexmin_inplace(const SimplicialGraph& g, std::vector<Letter>& w);

// Positions whose letters can commute to the front (front = true) or to the
// back of w.
std::vector<int> exposed_positions(const SimplicialGraph& g,
                                   const std::vector<Letter>& w, bool front);

} // namespace detail

// Canonical form of raw into out: geodesic, lexicographically least.
void normalize_into(const SimplicialGraph& g, std::span<const Letter> raw,
                    std::vector<Letter>& out);

// Group element carried in canonical form.  Two TraceWords over equal graphs
// compare equal exactly when they represent the same element.
class TraceWord {
public:
    explicit TraceWord(GraphPtr graph);
    TraceWord(GraphPtr graph, std::span<const Letter> raw);
    TraceWord(GraphPtr graph, std::initializer_list<Letter> raw);

    struct normal_tag {};
    TraceWord(normal_tag, GraphPtr graph, std::vector<Letter> canonical);

    const GraphPtr& graph() const { return graph_; }
    const std::vector<Letter>& letters() const { return letters_; }
    int length() const { return static_cast<int>(letters_.size()); }
    bool is_identity() const { return letters_.empty(); }
    VertexSet support() const;

    bool operator==(const TraceWord& o) const;
    bool operator!=(const TraceWord& o) const { return !(*this == o); }
    // Shortlex order on canonical forms; usable as a total element order.
    bool operator<(const TraceWord& o) const;

private:
    GraphPtr graph_;
    std::vector<Letter> letters_;
};

TraceWord identity_word(GraphPtr graph);

TraceWord operator*(const TraceWord& a, const TraceWord& b);
TraceWord inverse(const TraceWord& a);
TraceWord power(const TraceWord& a, long long k);
// u x u^{-1}.
TraceWord conjugate(const TraceWord& x, const TraceWord& u);
// a b a^{-1} b^{-1}.
TraceWord commutator(const TraceWord& a, const TraceWord& b);
bool commutes(const TraceWord& a, const TraceWord& b);

// Canonical retraction onto the subgroup generated by s: letters outside s
// are deleted.  A homomorphism because deleting a generator respects every
// defining relation.
TraceWord retract(const TraceWord& x, const VertexSet& s);

struct CyclicReduction {
    TraceWord conjugator; // u
    TraceWord core;       // t, cyclically reduced
};

// Writes g as u t u^{-1} with t cyclically reduced and |g| = |t| + 2|u|.
CyclicReduction cyclic_reduce(const TraceWord& g);
bool is_cyclically_reduced(const TraceWord& g);

// Word text format: whitespace-separated tokens v, v^-1, v^k; empty word "1".
TraceWord parse_word(GraphPtr graph, const std::string& text);
std::string print_word(const TraceWord& w);

// Map from named free generators into a fixed target group, extended to words
// letter by letter.  Defined with the domain as a list so composition with
// any word over a graph carrying those names is possible.
class Homomorphism {
public:
    Homomorphism(std::vector<std::string> domain_names, std::vector<TraceWord> images);

    const std::vector<std::string>& domain_names() const { return domain_; }
    const GraphPtr& target() const { return target_; }
    const TraceWord& image_of(const std::string& name) const;

    // w may live over any graph whose vertex names all appear in the domain.
    TraceWord apply(const TraceWord& w) const;

private:
    std::vector<std::string> domain_;
    std::unordered_map<std::string, int> index_;
    std::vector<TraceWord> images_;
    GraphPtr target_;
};

} // namespace raag

#endif
