#ifndef RAAG_PARABOLIC_HPP
#define RAAG_PARABOLIC_HPP

#include <span>
#include <utility>
#include <vector>

#include "raag/trace_word.hpp"

namespace raag {

struct PureFactor {
    TraceWord root;     // primitive, irreducible support
    long long exponent; // >= 1
};

// t = t_1^{n_1} ... t_k^{n_k} with the factor supports the irreducible
// components of supp(t), plus S = link(supp(t)).
struct FactorDecomposition {
    std::vector<PureFactor> factors; // shortlex order of supports
    VertexSet link_support;
};

// Requires t cyclically reduced and nonempty.
FactorDecomposition factor_decomposition(const TraceWord& t);

// g = r^m with m maximal; the root is unique.  Requires g nonempty.
std::pair<TraceWord, long long> primitive_root(const TraceWord& g);

// Generators of the centralizer of t: with cyclic_reduce(t) = (u, t') and
// factor_decomposition(t') = (t_i, S), returns u t_i u^-1 followed by
// u s u^-1 for s in S.  For t = identity returns all vertex generators.
std::vector<TraceWord> centralizer_generators(const TraceWord& t);

// Conjugate u A_X u^-1 of a full subgroup.  The stored conjugator is the
// shortlex-least element of the coset u A_{X ∪ link(X)}, so equality of
// subgroups is equality of representations.
class Parabolic {
public:
    Parabolic(const TraceWord& conjugator, const VertexSet& base);

    const GraphPtr& graph() const { return base_.graph(); }
    const TraceWord& conjugator() const { return conj_; }
    const VertexSet& base() const { return base_; }

    bool operator==(const Parabolic& o) const;
    bool operator!=(const Parabolic& o) const { return !(*this == o); }

private:
    TraceWord conj_;
    VertexSet base_;
};

bool member(const TraceWord& g, const Parabolic& p);
// q is a subgroup of p.
bool contains(const Parabolic& p, const Parabolic& q);
Parabolic normalizer(const Parabolic& p);

// Parabolic closure: least parabolic subgroup containing the input(s).
Parabolic pc_element(const TraceWord& g);
Parabolic pc_set(std::span<const TraceWord> gs);
Parabolic pc_set(GraphPtr graph, std::span<const TraceWord> gs);

// Exhaustive certified closure over all conjugators of length <= bound.
// Throws verification_error when no candidate is contained in all others
// (bound too small to certify).
Parabolic pc_set_certified(GraphPtr graph, std::span<const TraceWord> gs,
                           int bound);

struct DirectFactorCheck {
    bool is_direct_factor = false;
    VertexSet complement; // link(X) when the check passes
};

// For a full subgroup A_X: true iff V = X ⊔ link(X).  Requires trivial
// conjugator.
DirectFactorCheck direct_factor_check(const Parabolic& p);

} // namespace raag

#endif
