#ifndef RAAG_TEST_ORACLES_HPP
#define RAAG_TEST_ORACLES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "raag/trace_word.hpp"

namespace raag::oracle {

// Quotient of all words of length <= max_len by the congruence generated by
// single commutation swaps and single inverse-pair deletions, computed with a
// union-find over base-9 codes.  Independent of the production normal form;
// used to cross-check it.  Needs graphs with at most 4 vertices.
class BruteForceNormalForm {
public:
    BruteForceNormalForm(GraphPtr graph, int max_len);

    std::vector<Letter> normal_form(std::span<const Letter> word) const;
    bool same_element(std::span<const Letter> a, std::span<const Letter> b) const;

private:
    std::int32_t encode(std::span<const Letter> word) const;
    std::vector<Letter> decode(std::int32_t code) const;
    std::int32_t find(std::int32_t a) const;

    GraphPtr graph_;
    int max_len_;
    mutable std::vector<std::int32_t> parent_;
};

// Smallest canonical length over the conjugation orbit of g, exploring only
// conjugates that never exceed |g|.  Cross-checks cyclic reduction.
int min_conjugate_length(const TraceWord& g);

// All distinct elements of length <= radius, in shortlex order.
std::vector<TraceWord> ball(GraphPtr graph, int radius);

// Every labeled simplicial graph with 1..max_vertices vertices.
std::vector<GraphPtr> all_graphs(int max_vertices);

// Writes c as an explicit product of centralizer_generators(t) and their
// inverses and returns the factor count, or nullopt when c does not factor
// through the centralizer's product structure.  Success must coincide with
// commutes(c, t).
std::optional<int> centralizer_certificate(const TraceWord& t, const TraceWord& c);

// Deterministic raw-word generator for property tests.
std::vector<Letter> random_raw_word(std::uint64_t& state, const SimplicialGraph& g,
                                    int max_len);
std::uint64_t next_rand(std::uint64_t& state);

} // namespace raag::oracle

#endif
