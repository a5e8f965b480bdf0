#include "raag/presentation.hpp"

#include <fstream>
#include <sstream>

#include "raag/errors.hpp"

namespace raag {

Presentation make_presentation(const std::vector<std::string>& generator_names,
                               const std::vector<std::string>& relator_texts) {
    Presentation p;
    p.generators = discrete_graph(generator_names);
    for (const auto& text : relator_texts) {
        p.relators.push_back(parse_word(p.generators, text));
    }
    return p;
}

Presentation parse_presentation(const std::string& text) {
    std::optional<std::vector<std::string>> gens;
    std::vector<std::string> rels;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        const std::string where = " (line " + std::to_string(line_no) + ")";
        if (head == "gens:") {
            require_input(!gens.has_value(), "repeated gens line" + where);
            gens.emplace();
            std::string name;
            while (ls >> name) gens->push_back(name);
        } else if (head == "rel:") {
            require_input(gens.has_value(), "rel before gens" + where);
            std::string rest, token;
            while (ls >> token) rest += token + " ";
            require_input(!rest.empty(), "empty relator" + where);
            rels.push_back(rest);
        } else {
            throw input_error("unrecognized line '" + head + "'" + where);
        }
    }
    require_input(gens.has_value(), "presentation needs a gens line");
    return make_presentation(*gens, rels);
}

std::string print_presentation(const Presentation& p) {
    std::ostringstream out;
    out << "gens:";
    for (const auto& name : p.generators->vertex_names()) out << ' ' << name;
    out << '\n';
    for (const auto& r : p.relators) out << "rel: " << print_word(r) << '\n';
    return out.str();
}

Presentation load_presentation_file(const std::string& path) {
    std::ifstream in(path);
    require_input(static_cast<bool>(in), "cannot open presentation file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presentation(buf.str());
}

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

} // namespace

SmithDecomposition smith_normal_form(std::vector<std::vector<BigInt>> m, int cols) {
    const int rows = static_cast<int>(m.size());
    for (const auto& row : m) {
        require_input(static_cast<int>(row.size()) == cols, "ragged matrix");
    }
    SmithDecomposition out;
    out.right.assign(cols, std::vector<BigInt>(cols, 0));
    for (int i = 0; i < cols; ++i) out.right[i][i] = 1;
    auto& v = out.right;

    auto col_op = [&](auto fn) {
        for (int i = 0; i < rows; ++i) fn(m[i]);
        for (int i = 0; i < cols; ++i) fn(v[i]);
    };

    // Diagonalize; truncated quotients leave remainders, so a dirty pivot
    // position is simply retried with the now-smaller minimum entry.
    auto eliminate = [&]() {
        int k = 0;
        while (k < rows && k < cols) {
            int pr = -1, pc = -1;
            for (int i = k; i < rows; ++i) {
                for (int j = k; j < cols; ++j) {
                    if (m[i][j] != 0 &&
                        (pr < 0 || abs_big(m[i][j]) < abs_big(m[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
                }
            }
            if (pr < 0) break;
            std::swap(m[k], m[pr]);
            if (pc != k) {
                col_op([&, pc, k](std::vector<BigInt>& row) {
                    std::swap(row[k], row[pc]);
                });
            }
            bool clean = true;
            for (int i = k + 1; i < rows; ++i) {
                BigInt q = m[i][k] / m[k][k];
                if (q != 0) {
                    for (int j = k; j < cols; ++j) m[i][j] -= q * m[k][j];
                }
                if (m[i][k] != 0) clean = false;
            }
            for (int j = k + 1; j < cols; ++j) {
                BigInt q = m[k][j] / m[k][k];
                if (q != 0) {
                    col_op([&, j, k, q](std::vector<BigInt>& row) {
                        row[j] -= q * row[k];
                    });
                }
                if (m[k][j] != 0) clean = false;
            }
            if (clean) ++k;
        }
        return k;
    };

    int rank = eliminate();
    // Divisibility chain: mixing a violating column into its predecessor and
    // re-eliminating replaces d_i by gcd(d_i, d_{i+1}); terminates because the
    // leading entries shrink.
    for (bool dirty = true; dirty;) {
        dirty = false;
        for (int i = 0; i + 1 < rank; ++i) {
            if (m[i + 1][i + 1] % m[i][i] != 0) {
                col_op([&, i](std::vector<BigInt>& row) { row[i] += row[i + 1]; });
                rank = eliminate();
                dirty = true;
                break;
            }
        }
    }

    for (int i = 0; i < rank; ++i) out.diagonal.push_back(abs_big(m[i][i]));
    out.rank = rank;
    return out;
}

AbelianizationResult abelianization_snf(const Presentation& p) {
    const int cols = p.generators->vertex_count();
    std::vector<std::vector<BigInt>> m;
    for (const auto& r : p.relators) {
        std::vector<BigInt> row(cols, 0);
        for (const Letter& l : r.letters()) row[l.vertex] += l.sign;
        m.push_back(std::move(row));
    }
    auto snf = smith_normal_form(std::move(m), cols);
    AbelianizationResult out;
    out.invariants = snf.diagonal;
    out.rank = snf.rank;
    out.free_rank = cols - snf.rank;
    return out;
}

std::optional<std::vector<BigInt>> infinite_quotient_certificate(const Presentation& p) {
    const int cols = p.generators->vertex_count();
    std::vector<std::vector<BigInt>> m;
    for (const auto& r : p.relators) {
        std::vector<BigInt> row(cols, 0);
        for (const Letter& l : r.letters()) row[l.vertex] += l.sign;
        m.push_back(std::move(row));
    }
    auto snf = smith_normal_form(m, cols);
    if (snf.rank >= cols) return std::nullopt;

    // Any right-transform column past the rank maps to zero under the matrix.
    std::vector<BigInt> w(cols);
    for (int i = 0; i < cols; ++i) w[i] = snf.right[i][snf.rank];
    BigInt g = 0;
    for (const auto& x : w) g = boost::multiprecision::gcd(g, abs_big(x));
    require_verified(g != 0, "kernel column is zero");
    for (auto& x : w) x /= g;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != 0) {
            if (w[i] < 0) {
                for (auto& x : w) x = -x;
            }
            break;
        }
    }
    for (const auto& row : m) {
        BigInt dot = 0;
        for (int j = 0; j < cols; ++j) dot += row[j] * w[j];
        require_verified(dot == 0, "certificate does not kill a relator");
    }
    return w;
}

} // namespace raag
