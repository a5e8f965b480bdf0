#include "raag/trace_word.hpp"

#include <algorithm>
#include <sstream>

#include "raag/errors.hpp"

namespace raag {

namespace detail {

void push_reduced(const SimplicialGraph& g, std::vector<Letter>& buf, Letter x) {
    // An occurrence cancels x only if it can commute to the end of buf.
    for (int i = static_cast<int>(buf.size()) - 1; i >= 0; --i) {
        const Letter& y = buf[i];
        if (y.vertex == x.vertex) {
            if (y.sign == -x.sign) {
                buf.erase(buf.begin() + i);
                return;
            }
            break;
        }
        if (!g.adjacent(y.vertex, x.vertex)) break;
    }
    buf.push_back(x);
}

void lexmin_inplace(const SimplicialGraph& g, std::vector<Letter>& w) {
    const int n = static_cast<int>(w.size());
    if (n <= 1) return;
    const int nv = g.vertex_count();
    std::vector<int> next(n + 1);
    for (int i = 0; i <= n; ++i) next[i] = i + 1;
    int head = 0;
    std::vector<int> prev(n + 1);
    for (int i = 0; i <= n; ++i) prev[i] = i - 1;

    std::vector<Letter> out;
    out.reserve(n);
    std::vector<char> possible(nv);
    for (int step = 0; step < n; ++step) {
        std::fill(possible.begin(), possible.end(), 1);
        int possible_count = nv;
        int best = -1;
        for (int i = head; i < n; i = next[i]) {
            const Letter& li = w[i];
            if (possible[li.vertex] &&
                (best == -1 || li.key() < w[best].key())) {
                best = i;
            }
            // li now blocks every vertex it does not commute with.
            for (int v = 0; v < nv; ++v) {
                if (possible[v] && (v == li.vertex || !g.adjacent(v, li.vertex))) {
                    possible[v] = 0;
                    --possible_count;
                }
            }
            if (possible_count == 0) break;
        }
        out.push_back(w[best]);
        int p = prev[best], q = next[best];
        if (p >= 0) next[p] = q;
        else head = q;
        prev[q] = p;
    }
    w = std::move(out);
}

} // namespace detail

void normalize_into(const SimplicialGraph& g, std::span<const Letter> raw,
                    std::vector<Letter>& out) {
    out.clear();
    for (const Letter& x : raw) {
        require_input(x.vertex >= 0 && x.vertex < g.vertex_count(),
                      "letter vertex out of range");
        require_input(x.sign == 1 || x.sign == -1, "letter sign must be +1 or -1");
        detail::push_reduced(g, out, x);
    }
    detail::lexmin_inplace(g, out);
}

TraceWord::TraceWord(GraphPtr graph) : graph_(std::move(graph)) {
    require_input(graph_ != nullptr, "word needs a graph");
}

TraceWord::TraceWord(GraphPtr graph, std::span<const Letter> raw)
    : graph_(std::move(graph)) {
    require_input(graph_ != nullptr, "word needs a graph");
    normalize_into(*graph_, raw, letters_);
}

TraceWord::TraceWord(GraphPtr graph, std::initializer_list<Letter> raw)
    : TraceWord(std::move(graph), std::span<const Letter>(raw.begin(), raw.size())) {}

TraceWord::TraceWord(normal_tag, GraphPtr graph, std::vector<Letter> canonical)
    : graph_(std::move(graph)), letters_(std::move(canonical)) {}

VertexSet TraceWord::support() const {
    VertexSet out(graph_);
    for (const Letter& l : letters_) out.add(l.vertex);
    return out;
}

bool TraceWord::operator==(const TraceWord& o) const {
    return *graph_ == *o.graph_ && letters_ == o.letters_;
}

bool TraceWord::operator<(const TraceWord& o) const {
    require_input(*graph_ == *o.graph_, "comparing words over different graphs");
    if (letters_.size() != o.letters_.size()) {
        return letters_.size() < o.letters_.size();
    }
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (letters_[i].key() != o.letters_[i].key()) {
            return letters_[i].key() < o.letters_[i].key();
        }
    }
    return false;
}

TraceWord identity_word(GraphPtr graph) { return TraceWord(std::move(graph)); }

TraceWord operator*(const TraceWord& a, const TraceWord& b) {
    require_input(*a.graph() == *b.graph(), "multiplying words over different graphs");
    std::vector<Letter> buf = a.letters();
    for (const Letter& x : b.letters()) detail::push_reduced(*a.graph(), buf, x);
    detail::lexmin_inplace(*a.graph(), buf);
    return TraceWord(TraceWord::normal_tag{}, a.graph(), std::move(buf));
}

TraceWord inverse(const TraceWord& a) {
    std::vector<Letter> buf(a.letters().rbegin(), a.letters().rend());
    for (Letter& l : buf) l.sign = -l.sign;
    detail::lexmin_inplace(*a.graph(), buf);
    return TraceWord(TraceWord::normal_tag{}, a.graph(), std::move(buf));
}

TraceWord power(const TraceWord& a, long long k) {
    if (k == 0) return identity_word(a.graph());
    TraceWord base = k > 0 ? a : inverse(a);
    unsigned long long e = k > 0 ? static_cast<unsigned long long>(k)
                                 : 0ULL - static_cast<unsigned long long>(k);
    TraceWord acc = identity_word(a.graph());
    while (e > 0) {
        if (e & 1ULL) acc = acc * base;
        e >>= 1ULL;
        if (e > 0) base = base * base;
    }
    return acc;
}

TraceWord conjugate(const TraceWord& x, const TraceWord& u) {
    return u * x * inverse(u);
}

TraceWord commutator(const TraceWord& a, const TraceWord& b) {
    return a * b * inverse(a) * inverse(b);
}

bool commutes(const TraceWord& a, const TraceWord& b) { return a * b == b * a; }

TraceWord retract(const TraceWord& x, const VertexSet& s) {
    require_input(*x.graph() == *s.graph(), "retraction set lives on a different graph");
    std::vector<Letter> buf;
    buf.reserve(x.letters().size());
    for (const Letter& l : x.letters()) {
        if (s.contains(l.vertex)) buf.push_back(l);
    }
    return TraceWord(x.graph(), buf);
}

namespace detail {

std::vector<int> exposed_positions(const SimplicialGraph& g,
                                   const std::vector<Letter>& w, bool front) {
    const int n = static_cast<int>(w.size());
    const int nv = g.vertex_count();
    std::vector<char> possible(nv, 1);
    int possible_count = nv;
    std::vector<int> out;
    for (int step = 0; step < n && possible_count > 0; ++step) {
        int i = front ? step : n - 1 - step;
        const Letter& li = w[i];
        if (possible[li.vertex]) out.push_back(i);
        for (int v = 0; v < nv; ++v) {
            if (possible[v] && (v == li.vertex || !g.adjacent(v, li.vertex))) {
                possible[v] = 0;
                --possible_count;
            }
        }
    }
    return out;
}

} // namespace detail

bool is_cyclically_reduced(const TraceWord& g) {
    const auto& w = g.letters();
    auto front = detail::exposed_positions(*g.graph(), w, true);
    auto back = detail::exposed_positions(*g.graph(), w, false);
    for (int i : front) {
        for (int j : back) {
            if (i != j && w[i].vertex == w[j].vertex && w[i].sign == -w[j].sign) {
                return false;
            }
        }
    }
    return true;
}

CyclicReduction cyclic_reduce(const TraceWord& g) {
    std::vector<Letter> w = g.letters();
    std::vector<Letter> conj;
    const auto& graph = *g.graph();
    for (;;) {
        auto front = detail::exposed_positions(graph, w, true);
        auto back = detail::exposed_positions(graph, w, false);
        int fi = -1, bj = -1;
        for (int i : front) {
            for (int j : back) {
                if (i != j && w[i].vertex == w[j].vertex && w[i].sign == -w[j].sign) {
                    fi = i;
                    bj = j;
                    break;
                }
            }
            if (fi >= 0) break;
        }
        if (fi < 0) break;
        conj.push_back(w[fi]);
        if (fi > bj) std::swap(fi, bj);
        w.erase(w.begin() + bj);
        w.erase(w.begin() + fi);
    }
    detail::lexmin_inplace(graph, w);
    CyclicReduction out{TraceWord(g.graph(), conj),
                        TraceWord(TraceWord::normal_tag{}, g.graph(), std::move(w))};
    require_verified(conjugate(out.core, out.conjugator) == g,
                     "cyclic reduction lost the element");
    require_verified(g.length() ==
                         out.core.length() + 2 * out.conjugator.length(),
                     "cyclic reduction conjugator is not geodesic");
    return out;
}

TraceWord parse_word(GraphPtr graph, const std::string& text) {
    require_input(graph != nullptr, "word needs a graph");
    std::istringstream in(text);
    std::string token;
    std::vector<Letter> raw;
    while (in >> token) {
        if (token == "1") continue;
        std::string name = token;
        long long exp = 1;
        auto caret = token.find('^');
        if (caret != std::string::npos) {
            name = token.substr(0, caret);
            std::string etext = token.substr(caret + 1);
            std::size_t used = 0;
            try {
                exp = std::stoll(etext, &used);
            } catch (const std::exception&) {
                throw input_error("bad exponent in token '" + token + "'");
            }
            require_input(used == etext.size() && !etext.empty(),
                          "bad exponent in token '" + token + "'");
        }
        int v = graph->vertex_index(name);
        require_input(v >= 0, "unknown generator '" + name + "'");
        require_input(exp != 0, "zero exponent in token '" + token + "'");
        require_input(exp >= -1000000 && exp <= 1000000,
                      "exponent out of supported range in '" + token + "'");
        Letter l{v, exp >= 0 ? 1 : -1};
        for (long long i = 0; i < (exp >= 0 ? exp : -exp); ++i) raw.push_back(l);
    }
    return TraceWord(std::move(graph), raw);
}

std::string print_word(const TraceWord& w) {
    // One token per letter so printed forms mirror the stored canonical form.
    if (w.is_identity()) return "1";
    std::ostringstream out;
    bool first = true;
    for (const Letter& l : w.letters()) {
        if (!first) out << ' ';
        first = false;
        out << w.graph()->vertex_name(l.vertex);
        if (l.sign < 0) out << "^-1";
    }
    return out.str();
}

Homomorphism::Homomorphism(std::vector<std::string> domain_names,
                           std::vector<TraceWord> images)
    : domain_(std::move(domain_names)), images_(std::move(images)) {
    require_input(domain_.size() == images_.size(),
                  "homomorphism needs one image per generator");
    require_input(!images_.empty(), "homomorphism needs at least one generator");
    target_ = images_.front().graph();
    for (const auto& im : images_) {
        require_input(*im.graph() == *target_, "images live over different graphs");
    }
    for (std::size_t i = 0; i < domain_.size(); ++i) {
        auto [it, fresh] = index_.emplace(domain_[i], static_cast<int>(i));
        (void)it;
        require_input(fresh, "duplicate generator '" + domain_[i] + "'");
    }
}

const TraceWord& Homomorphism::image_of(const std::string& name) const {
    auto it = index_.find(name);
    require_input(it != index_.end(), "no image for generator '" + name + "'");
    return images_[it->second];
}

TraceWord Homomorphism::apply(const TraceWord& w) const {
    std::vector<Letter> raw;
    for (const Letter& l : w.letters()) {
        const std::string& name = w.graph()->vertex_name(l.vertex);
        const TraceWord& im = image_of(name);
        if (l.sign > 0) {
            raw.insert(raw.end(), im.letters().begin(), im.letters().end());
        } else {
            for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it) {
                raw.push_back(it->inverse());
            }
        }
    }
    return TraceWord(target_, raw);
}

} // namespace raag
