#ifndef RAAG_HNN_HPP
#define RAAG_HNN_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "raag/free_product.hpp"
#include "raag/subdirect.hpp"
#include "raag/trace_word.hpp"

namespace raag {

using MembershipOracle = std::function<bool(const TraceWord&)>;

// A group F with a normal subgroup N, extended by a stable letter t that
// commutes with every element of N.  N enters through a membership oracle
// because the kernels of interest are not finitely generated.  F's own word
// problem is decided by trivial_in_f when set (say, through an embedding of
// F into an ambient group) and by free reduction over the alphabet
// otherwise.
struct SpecialHnn {
    GraphPtr domain;  // free alphabet of F's generators, a discrete graph
    std::string stable_letter;
    MembershipOracle in_subgroup;             // N membership on domain words
    MembershipOracle trivial_in_f = nullptr;  // F word problem override
};

// Free alphabet of the extension: F's generators followed by the stable
// letter, all mutually non-commuting.
GraphPtr hnn_alphabet(const SpecialHnn& h);

// Alternating form f_0 t^{k_1} f_1 ... t^{k_n} f_n with every k_i nonzero.
// britton_reduce returns it with every interior f_i outside N, the shape in
// which a word with n >= 1 is visibly nontrivial.
struct HnnWord {
    struct Block {
        long long power = 0;  // k_i, never zero
        TraceWord word;       // f_i over the F alphabet
        bool operator==(const Block&) const = default;
    };

    TraceWord head;  // f_0
    std::vector<Block> tail;

    int syllable_count() const { return static_cast<int>(tail.size()); }
    bool operator==(const HnnWord&) const = default;
};

// Splits a word over hnn_alphabet (or any discrete graph using those names)
// into the alternating form, then repeatedly pinches t^k f t^k' -> f t^(k+k')
// for interior f in N, which is valid because t centralizes N.  Idempotent;
// oracle exceptions resurface as oracle_error naming the offending word.
HnnWord britton_reduce(const SpecialHnn& h, const TraceWord& w);

// Word problem for the extension: after reduction the word is trivial iff no
// stable letters remain and the head is trivial in F.
bool hnn_is_trivial(const SpecialHnn& h, const TraceWord& w);

// Writes an alternating form back as one word over hnn_alphabet.
TraceWord flatten(const SpecialHnn& h, const HnnWord& g);

// Samples the oracle's subgroup axioms: the identity and all pairwise
// products and inverses of the claimed members stay inside, and so do their
// conjugates by the supplied words (normality).  Violations throw
// verification_error.
void spot_check_oracle(const SpecialHnn& h, std::span<const TraceWord> members,
                       std::span<const TraceWord> conjugators);

// Syllable ops for words in B * <t>: one factor holds trace words over B's
// graph, the other holds stable-letter exponents.
struct WordSyllableOps {
    bool trivial(const TraceWord& w) const { return w.is_identity(); }
    TraceWord mul(const TraceWord& a, const TraceWord& b) const { return a * b; }
};

struct PowerSyllableOps {
    bool trivial(long long k) const { return k == 0; }
    long long mul(long long a, long long b) const { return a + b; }
};

using StableProductWord = FreeProductWord<TraceWord, long long>;

StableProductWord reduce_product_word(const StableProductWord& w);

// Element of C = A x (B * <t>) in split form: the A coordinate and the
// reduced free-product word.  This is the shape the injectivity argument
// needs; flat_image converts to a single word over C's graph.
struct CElement {
    TraceWord a_part;
    StableProductWord bt_part;

    bool is_identity() const { return a_part.is_identity() && bt_part.empty(); }
    bool operator==(const CElement&) const = default;
};

// F carried into A together with phi : F -> B whose kernel is N.  The
// extension then embeds into C = join(A, disjoint_union(B, <t>)) by
// f -> (f, phi(f)) and t -> t; psi_flat is that map in flat form over C.
struct EmbeddingPackage {
    SpecialHnn hnn;  // oracle derived from phi
    GraphPtr a_graph;
    GraphPtr b_graph;
    GraphPtr c_graph;
    Homomorphism include_a;  // F generators -> A
    Homomorphism phi;        // F generators -> B; kernel defines N
    Homomorphism psi_flat;   // F generators + t -> C
};

// Vertex names of A, B and the stable letter must be pairwise disjoint so
// the combined graph keeps everyone's name.  phi must not be the trivial
// map: N = F leaves nothing to extend over.
EmbeddingPackage make_embedding(GraphPtr a_graph, GraphPtr b_graph,
                                std::vector<std::string> generator_names,
                                std::vector<TraceWord> a_images,
                                std::vector<TraceWord> b_images,
                                std::string stable_letter);

// Image of a word over hnn_alphabet, split into coordinates.  The element is
// trivial in C exactly when the input is trivial in the extension.
CElement psi_embed(const EmbeddingPackage& pkg, const TraceWord& w);

// The same element as a single word over C's graph; agrees with applying
// psi_flat to the raw word.
TraceWord flat_image(const EmbeddingPackage& pkg, const CElement& e);

// Text format: a_vertices / a_edge / b_vertices / b_edge / stable lines and
// one "gen: name | word over A | word over B" line per generator.
EmbeddingPackage parse_embedding(const std::string& text);
std::string print_embedding(const EmbeddingPackage& pkg);
EmbeddingPackage load_embedding_file(const std::string& path);

// Four-generated extension whose container must hold a free abelian group
// of rank d: F = F(x, y, z) sits discretely in A, phi is the coordinate
// product map onto the subgroup with the rank-d abelian witnesses, and N is
// its kernel.
struct GdReport {
    int d = 0;
    int generator_count = 0;  // computed: F generators plus the stable letter
    int clique = 0;           // computed: clique number of C's graph
    std::vector<TraceWord> abelian_images;  // pairwise commuting, rank d, over C
    std::vector<std::string> cited;         // recorded facts, not computed here
};

struct GdPackage {
    HdPackage hd;
    EmbeddingPackage embedding;
    std::vector<TraceWord> kernel_samples;  // nontrivial members of N
    GdReport report;
};

GdPackage build_gd(int d);

// Clause-by-clause verification that the kernel closure splits the target:
//   closure   pc of the generator images; must sit unconjugated, and when it
//             is not the whole target the report is marked sample-limited
//             and the remaining clauses run relative to that base;
//   split     pc of the kernel-sample images is a full subgroup on a vertex
//             set X with ambient = X together with link(X);
//   fiber     psi(f) lies in the X factor exactly when the oracle holds;
//   quotient  retracting psi(f) onto the complement kills exactly the
//             oracle members, so F/N embeds into the complement factor.
// Any failing clause throws verification_error naming it.
struct SplitVerification {
    std::vector<std::string> ambient;  // base of pc(generators)
    bool sample_limited = false;       // ambient smaller than the target
    std::vector<std::string> base;     // X
    std::vector<std::string> complement;  // link(X) inside the ambient
    int fiber_checks = 0;
    int quotient_checks = 0;
};

SplitVerification verify_split_embedding(const EmbeddingPackage& pkg,
                                         std::span<const TraceWord> kernel_samples,
                                         int random_checks, int max_len,
                                         std::uint64_t seed);

// Both directions of the containment equivalence exercised on one package:
// forward, the psi data with sampled triviality agreement and injectivity;
// backward, the split verification recovering F (restriction of psi) and
// F/N (quotient clause) inside the target.  The report carries the target
// graph and its clique number.
struct RoundtripReport {
    int agreement_checks = 0;    // Britton triviality == psi triviality
    int injectivity_checks = 0;  // nontrivial f keeps psi(f) nontrivial
    SplitVerification split;
    std::string target_graph;
    int clique = 0;
};

RoundtripReport embedding_roundtrip(const EmbeddingPackage& pkg,
                                    std::span<const TraceWord> kernel_samples,
                                    int checks, int max_len, std::uint64_t seed);

} // namespace raag

#endif
