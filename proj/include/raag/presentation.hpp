#ifndef RAAG_PRESENTATION_HPP
#define RAAG_PRESENTATION_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

#include "raag/trace_word.hpp"

namespace raag {

using BigInt = boost::multiprecision::cpp_int;

// Group presentation: named generators and relator words over them.
struct Presentation {
    GraphPtr generators; // discrete graph carrying the generator names
    std::vector<TraceWord> relators;
};

Presentation make_presentation(const std::vector<std::string>& generator_names,
                               const std::vector<std::string>& relator_texts);

// Text format: "gens: x y z" then one "rel: <word>" line per relator.
Presentation parse_presentation(const std::string& text);
std::string print_presentation(const Presentation& p);
Presentation load_presentation_file(const std::string& path);

// Smith normal form with successive divisibility, plus the right transform
// tracked so kernels of the row space can be certified.
struct SmithDecomposition {
    std::vector<BigInt> diagonal;            // d_1 | d_2 | ..., zeros trimmed
    int rank = 0;                            // number of nonzero diagonal entries
    std::vector<std::vector<BigInt>> right;  // V with A·V in diagonal form
};

SmithDecomposition smith_normal_form(std::vector<std::vector<BigInt>> m, int cols);

struct AbelianizationResult {
    std::vector<BigInt> invariants; // nonzero diagonal entries of the SNF
    int rank = 0;
    int free_rank = 0; // #generators - rank
};

// Exponent-sum matrix of the relators, reduced over the integers.
AbelianizationResult abelianization_snf(const Presentation& p);

// Generator weights of a surjection onto the integers killing every relator;
// nullopt when the abelianization has free rank 0 (no such surjection).
std::optional<std::vector<BigInt>> infinite_quotient_certificate(const Presentation& p);

} // namespace raag

#endif
