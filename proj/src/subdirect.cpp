#include "raag/subdirect.hpp"

#include <map>
#include <set>
#include <utility>

#include "raag/errors.hpp"
#include "raag/stallings.hpp"

namespace raag {

namespace {

GraphPtr coordinate_alphabet() { return discrete_graph({"x", "y"}); }

// Number of rank-2 factors of an f2_power-shaped product graph.
int product_width(const GraphPtr& g) {
    const int n = g->vertex_count();
    if (n == 0) return 0;
    require_input(n % 2 == 0 && *g == *f2_power(n / 2),
                  "not a product of rank-2 free groups");
    return n / 2;
}

// Rewrite a word over x, y into the letters of coordinate block i (0-based).
std::vector<Letter> lift_letters(const TraceWord& w, int i) {
    std::vector<Letter> out;
    for (const Letter& l : w.letters()) {
        out.push_back({2 * i + l.vertex, l.sign});
    }
    return out;
}

Homomorphism coordinate_inclusion(const GraphPtr& domain) {
    return Homomorphism({"x", "y"},
                        {parse_word(domain, "x"), parse_word(domain, "y")});
}

std::vector<BigInt> exponent_row(const TraceWord& w) {
    std::vector<BigInt> row(w.graph()->vertex_count(), 0);
    for (const Letter& l : w.letters()) row[l.vertex] += l.sign;
    return row;
}

// v lies in the integer row span of rows iff appending it changes neither the
// rank nor the invariant factors of the lattice.
bool row_in_lattice(const std::vector<std::vector<BigInt>>& rows,
                    const std::vector<BigInt>& v, int cols) {
    auto base = smith_normal_form(rows, cols);
    auto extended = rows;
    extended.push_back(v);
    auto ext = smith_normal_form(extended, cols);
    return base.rank == ext.rank && base.diagonal == ext.diagonal;
}

} // namespace

std::vector<TraceWord> TupleElement::coordinates() const {
    const int d = product_width(trace.graph());
    auto coord = coordinate_alphabet();
    std::vector<std::vector<Letter>> buckets(d);
    for (const Letter& l : trace.letters()) {
        buckets[l.vertex / 2].push_back({l.vertex % 2, l.sign});
    }
    std::vector<TraceWord> out;
    for (int i = 0; i < d; ++i) out.emplace_back(coord, buckets[i]);
    return out;
}

TupleElement TupleElement::from_coordinates(const GraphPtr& product,
                                            std::span<const TraceWord> coords) {
    const int d = product_width(product);
    require_input(static_cast<int>(coords.size()) == d, "need one word per coordinate");
    std::vector<Letter> letters;
    for (int i = 0; i < d; ++i) {
        require_input(coords[i].graph()->vertex_count() == 2 &&
                          coords[i].graph()->edge_count() == 0,
                      "coordinates must be words over a rank-2 free group");
        auto lifted = lift_letters(coords[i], i);
        letters.insert(letters.end(), lifted.begin(), lifted.end());
    }
    return TupleElement{TraceWord(product, letters)};
}

std::vector<TraceWord> default_witnesses(int d) {
    require_pre(d >= 1, "need d >= 1");
    auto coord = coordinate_alphabet();
    const TraceWord x = parse_word(coord, "x");
    const TraceWord y = parse_word(coord, "y");
    std::vector<TraceWord> out;
    for (int i = 1; i <= d; ++i) out.push_back(conjugate(y, power(x, -i)));
    require_verified(is_free_basis(coord, out), "default witnesses failed the basis check");
    return out;
}

HdPackage build_hd(int d, std::vector<TraceWord> witnesses) {
    require_pre(d >= 1, "need d >= 1");
    require_pre(static_cast<int>(witnesses.size()) == d, "need one witness per coordinate");
    auto coord = coordinate_alphabet();
    std::vector<TraceWord> ws;
    for (const TraceWord& w : witnesses) {
        require_pre(*w.graph() == *coord, "witnesses must be words over x, y");
        ws.emplace_back(coord, w.letters());
    }
    const int rank = StallingsAutomaton(coord, ws).rank();
    if (rank != d) {
        throw precondition_error("witnesses fold to rank " + std::to_string(rank) +
                                 ", need " + std::to_string(d));
    }

    auto domain = discrete_graph({"x", "y", "z"});
    auto product = f2_power(d);

    const TraceWord cx = parse_word(coord, "x");
    const TraceWord cy = parse_word(coord, "y");
    std::vector<Homomorphism> coordinate_maps;
    for (int i = 0; i < d; ++i) {
        coordinate_maps.emplace_back(std::vector<std::string>{"x", "y", "z"},
                                     std::vector<TraceWord>{cx, cy, ws[i]});
    }

    std::vector<Letter> px, py, pz;
    for (int i = 0; i < d; ++i) {
        px.push_back({2 * i, 1});
        py.push_back({2 * i + 1, 1});
        auto lifted = lift_letters(ws[i], i);
        pz.insert(pz.end(), lifted.begin(), lifted.end());
    }
    Homomorphism product_map(std::vector<std::string>{"x", "y", "z"},
                             std::vector<TraceWord>{TraceWord(product, px),
                                                    TraceWord(product, py),
                                                    TraceWord(product, pz)});

    return HdPackage{d,
                     std::move(domain),
                     std::move(coord),
                     std::move(product),
                     std::move(ws),
                     std::move(coordinate_maps),
                     std::move(product_map)};
}

HdPackage build_hd(int d) { return build_hd(d, default_witnesses(d)); }

bool in_coordinate_kernel(const HdPackage& pkg, const TraceWord& f, int i) {
    require_input(1 <= i && i <= pkg.d, "coordinate index out of range");
    return pkg.coordinate_maps[i - 1].apply(f).is_identity();
}

TraceWord coordinate_witness(const HdPackage& pkg, int i) {
    require_input(1 <= i && i <= pkg.d, "coordinate index out of range");
    TraceWord c = identity_word(pkg.domain);
    if (pkg.d == 1) {
        c = parse_word(pkg.domain, "x");
    } else {
        Homomorphism incl = coordinate_inclusion(pkg.domain);
        const TraceWord z_inv = inverse(parse_word(pkg.domain, "z"));
        bool first = true;
        for (int j = 1; j <= pkg.d; ++j) {
            if (j == i) continue;
            TraceWord a = z_inv * incl.apply(pkg.witnesses[j - 1]);
            c = first ? a : commutator(c, a);
            first = false;
        }
    }
    for (int j = 1; j <= pkg.d; ++j) {
        const bool dies = pkg.coordinate_maps[j - 1].apply(c).is_identity();
        require_verified(dies == (j != i), "coordinate witness has the wrong kernel pattern");
    }
    return c;
}

std::vector<TupleElement> abelian_witnesses(const HdPackage& pkg) {
    std::vector<TupleElement> out;
    for (int i = 1; i <= pkg.d; ++i) {
        TupleElement t{pkg.product_map.apply(coordinate_witness(pkg, i))};
        auto coords = t.coordinates();
        for (int j = 0; j < pkg.d; ++j) {
            require_verified(coords[j].is_identity() == (j != i - 1),
                             "tuple witness supported outside its coordinate");
        }
        out.push_back(std::move(t));
    }
    return out;
}

PairQuotientCertificate pair_quotient_certificate(const HdPackage& pkg, int i, int j) {
    require_pre(1 <= i && i < j && j <= pkg.d, "need coordinates 1 <= i < j <= d");
    Homomorphism incl = coordinate_inclusion(pkg.domain);
    const TraceWord z_inv = inverse(parse_word(pkg.domain, "z"));
    Presentation p{pkg.domain,
                   {z_inv * incl.apply(pkg.witnesses[i - 1]),
                    z_inv * incl.apply(pkg.witnesses[j - 1])}};
    auto cert = infinite_quotient_certificate(p);
    require_verified(cert.has_value(), "pair quotient admits no surjection onto Z");
    return PairQuotientCertificate{std::move(p), std::move(*cert)};
}

KernelPushforward kernel_pushforward(const Homomorphism& psi1,
                                     const Homomorphism& psi2,
                                     const std::vector<std::string>& generating_names,
                                     std::span<const TraceWord> kernel_elements) {
    require_pre(psi1.domain_names() == psi2.domain_names(),
                "surjections must share a domain");
    const GraphPtr target = psi1.target();
    require_pre(*target == *psi2.target(), "surjections must share a target");
    require_pre(target->edge_count() == 0, "target must be a free group");

    std::set<std::string> supplied;
    for (const std::string& name : generating_names) {
        (void)psi1.image_of(name); // rejects names outside the domain
        supplied.insert(name);
    }
    for (const std::string& name : psi1.domain_names()) {
        require_pre(supplied.count(name) == 1,
                    "generating set must cover the domain generators");
    }

    for (const Homomorphism* psi : {&psi1, &psi2}) {
        std::vector<TraceWord> images;
        for (const std::string& name : psi->domain_names()) {
            images.push_back(psi->image_of(name));
        }
        StallingsAutomaton a(target, images);
        for (int v = 0; v < target->vertex_count(); ++v) {
            require_pre(a.member(TraceWord(target, {Letter{v, 1}})),
                        "map is not surjective onto the target");
        }
    }

    KernelPushforward out;
    std::vector<TraceWord> nontrivial;
    for (const std::string& name : generating_names) {
        TraceWord g = inverse(psi1.image_of(name)) * psi2.image_of(name);
        if (!g.is_identity()) nontrivial.push_back(g);
        out.normal_generators.push_back(std::move(g));
    }
    out.quotient = Presentation{target, nontrivial};

    // With a single relator containing some generator exactly once, the
    // quotient rewrites to a free group on the remaining generators, which
    // makes membership in the normal closure decidable.
    std::optional<Homomorphism> rewrite;
    if (nontrivial.size() == 1) {
        const auto& letters = nontrivial.front().letters();
        std::vector<int> count(target->vertex_count(), 0);
        for (const Letter& l : letters) ++count[l.vertex];
        int once = -1;
        for (int v = 0; v < target->vertex_count() && once < 0; ++v) {
            if (count[v] == 1) once = v;
        }
        if (once >= 0) {
            std::size_t pos = 0;
            while (letters[pos].vertex != once) ++pos;
            TraceWord head(target, std::span<const Letter>(letters.data(), pos));
            TraceWord tail(target, std::span<const Letter>(letters.data() + pos + 1,
                                                           letters.size() - pos - 1));
            // head g tail = 1 forces g = head^-1 tail^-1 (or the inverse form).
            TraceWord expr = letters[pos].sign > 0 ? inverse(head) * inverse(tail)
                                                   : tail * head;
            std::vector<TraceWord> images;
            for (int v = 0; v < target->vertex_count(); ++v) {
                images.push_back(v == once ? expr : TraceWord(target, {Letter{v, 1}}));
            }
            rewrite = Homomorphism(target->vertex_names(), images);
        }
    }

    std::vector<std::vector<BigInt>> rows;
    for (const TraceWord& g : nontrivial) rows.push_back(exponent_row(g));
    for (const TraceWord& h : kernel_elements) {
        require_pre(psi2.apply(h).is_identity(), "supplied element is not in the kernel");
        TraceWord image = psi1.apply(h);
        PushforwardCheck check{h, image, false, std::nullopt};
        check.abelian_contained =
            row_in_lattice(rows, exponent_row(image), target->vertex_count());
        require_verified(check.abelian_contained,
                         "kernel image escapes the abelianized quotient");
        if (nontrivial.empty()) {
            check.exact_contained = image.is_identity();
        } else if (rewrite) {
            check.exact_contained = rewrite->apply(image).is_identity();
        }
        if (check.exact_contained.has_value()) {
            require_verified(*check.exact_contained, "kernel image escapes the quotient");
        }
        out.checks.push_back(std::move(check));
    }
    return out;
}

FactorDropReport drop_trivial_factors(const GraphPtr& product,
                                      std::span<const TupleElement> gens, int bound) {
    const int m = product_width(product);
    require_input(bound >= 0, "bound must be nonnegative");
    std::vector<std::vector<TraceWord>> coords;
    for (const TupleElement& g : gens) {
        require_input(*g.trace.graph() == *product, "generator over the wrong product");
        coords.push_back(g.coordinates());
    }

    FactorDropReport report;
    for (int c = 0; c < m; ++c) {
        bool live = false;
        for (const auto& gc : coords) live = live || !gc[c].is_identity();
        if (live) report.kept.push_back(c + 1);
    }
    const int k = static_cast<int>(report.kept.size());
    report.reduced_product =
        k == 0 ? discrete_graph(std::vector<std::string>{}) : f2_power(k);
    for (const auto& gc : coords) {
        std::vector<TraceWord> sel;
        for (int c : report.kept) sel.push_back(gc[c - 1]);
        report.reduced_generators.push_back(
            TupleElement::from_coordinates(report.reduced_product, sel));
    }
    report.intersection_witnesses.assign(k, std::nullopt);
    if (k == 0) return report;

    std::vector<TraceWord> alphabet;
    for (const TupleElement& g : gens) {
        if (g.trace.is_identity()) continue;
        alphabet.push_back(g.trace);
        alphabet.push_back(inverse(g.trace));
    }
    std::map<int, int> slot_of; // kept coordinate -> witness slot
    for (int s = 0; s < k; ++s) slot_of[report.kept[s]] = s;

    std::set<TraceWord> visited{identity_word(product)};
    std::vector<TraceWord> frontier{identity_word(product)};
    int found = 0;
    for (int depth = 0; depth < bound && found < k && !alphabet.empty(); ++depth) {
        std::vector<TraceWord> next;
        for (const TraceWord& e : frontier) {
            for (const TraceWord& a : alphabet) {
                TraceWord p = e * a;
                if (!visited.insert(p).second) continue;
                next.push_back(p);
                if (p.is_identity()) continue;
                const auto sup = p.support().vertices();
                const int c = sup.front() / 2;
                bool single = true;
                for (int v : sup) single = single && v / 2 == c;
                if (!single) continue;
                auto& slot = report.intersection_witnesses[slot_of.at(c + 1)];
                if (!slot.has_value()) {
                    slot = TupleElement{p};
                    ++found;
                }
            }
        }
        frontier = std::move(next);
    }
    return report;
}

} // namespace raag
