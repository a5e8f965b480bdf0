#ifndef RAAG_SUBDIRECT_HPP
#define RAAG_SUBDIRECT_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "raag/presentation.hpp"
#include "raag/trace_word.hpp"

namespace raag {

// Element of a direct product of rank-2 free groups, carried as a trace word
// over an f2_power graph.  The coordinate view writes the projection onto
// each factor over the fixed two-letter alphabet x, y; both views describe
// the same element.
struct TupleElement {
    TraceWord trace;

    std::vector<TraceWord> coordinates() const;
    static TupleElement from_coordinates(const GraphPtr& product,
                                         std::span<const TraceWord> coords);

    bool operator==(const TupleElement& o) const { return trace == o.trace; }
    bool operator!=(const TupleElement& o) const { return !(*this == o); }
};

// Three-generated subgroup of a product of d rank-2 free groups that meets
// every factor and contains a free abelian subgroup of rank d: the image of
// F(x, y, z) under the map whose i-th coordinate fixes x and y and sends z
// to the witness w_i.
struct HdPackage {
    int d = 0;
    GraphPtr domain;      // free group on x, y, z
    GraphPtr coordinate;  // free group on x, y
    GraphPtr product;     // f2_power(d)
    std::vector<TraceWord> witnesses;           // w_i, a free basis inside <x, y>
    std::vector<Homomorphism> coordinate_maps;  // x -> x, y -> y, z -> w_i
    Homomorphism product_map;                   // all coordinates at once
};

// w_i = x^-i y x^i for i = 1..d; conjugates of y by distinct powers of x
// fold to a free basis, which is verified before returning.
std::vector<TraceWord> default_witnesses(int d);

// Witnesses must freely generate a subgroup of rank d; rejected otherwise
// with the folded rank in the message.
HdPackage build_hd(int d);
HdPackage build_hd(int d, std::vector<TraceWord> witnesses);

// True iff f dies in coordinate i (1-based), i.e. lies in the kernel of the
// i-th coordinate map: the normal closure of z^-1 w_i.
bool in_coordinate_kernel(const HdPackage& pkg, const TraceWord& f, int i);

// Word over x, y, z that dies in every coordinate except the i-th: x when
// d = 1, otherwise the left-nested commutator of the words z^-1 w_j for
// j != i in ascending order.  The coordinate pattern is verified.
TraceWord coordinate_witness(const HdPackage& pkg, int i);

// Images of the d coordinate witnesses: the i-th is nontrivial exactly in
// coordinate i, so they commute pairwise and generate a free abelian
// subgroup of rank d inside the image.
std::vector<TupleElement> abelian_witnesses(const HdPackage& pkg);

// Quotient of the image by the product of the i-th and j-th projection
// kernels, presented as <x, y, z | z^-1 w_i, z^-1 w_j>, together with
// generator weights of a surjection onto Z.  The surjection shows the
// quotient is infinite, which blocks virtual surjectivity onto the (i, j)
// factor pair and with it finite presentability of the image.
struct PairQuotientCertificate {
    Presentation quotient;
    std::vector<BigInt> weights;
};

PairQuotientCertificate pair_quotient_certificate(const HdPackage& pkg, int i, int j);

// Two surjections of the same group onto the same free group differ, modulo
// the normal closure M of { psi1(x)^-1 psi2(x) : x generating }, by nothing:
// psi1 maps the kernel of psi2 into M.  The checks witness that containment
// for supplied kernel elements: always inside the abelianization of the
// quotient, and inside the quotient itself whenever a single relator with a
// once-occurring generator lets the quotient rewrite to a free group.
struct PushforwardCheck {
    TraceWord element;  // kernel element of psi2, over the domain
    TraceWord image;    // psi1(element), over the target
    bool abelian_contained = false;
    std::optional<bool> exact_contained;
};

struct KernelPushforward {
    std::vector<TraceWord> normal_generators;  // aligned with the generating names
    Presentation quotient;                     // target modulo the nontrivial ones
    std::vector<PushforwardCheck> checks;
};

KernelPushforward kernel_pushforward(const Homomorphism& psi1,
                                     const Homomorphism& psi2,
                                     const std::vector<std::string>& generating_names,
                                     std::span<const TraceWord> kernel_elements);

// Coordinates where every generator projects trivially are dropped: the
// generated subgroup meets those factors trivially, so the projection away
// from them is injective on it.  For each kept coordinate a search over
// products of at most `bound` generators looks for a nontrivial element
// supported in that coordinate alone; absence within the bound leaves the
// witness unset.
struct FactorDropReport {
    std::vector<int> kept;     // 1-based surviving coordinate indices
    GraphPtr reduced_product;  // f2_power over the kept coordinates
    std::vector<TupleElement> reduced_generators;
    std::vector<std::optional<TupleElement>> intersection_witnesses;  // aligned with kept
};

FactorDropReport drop_trivial_factors(const GraphPtr& product,
                                      std::span<const TupleElement> gens, int bound);

} // namespace raag

#endif
