#include "raag/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "raag/errors.hpp"

namespace raag {

namespace {

bool valid_vertex_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    // Must not start with a digit, and must not parse as a bare power suffix.
    return !(s[0] >= '0' && s[0] <= '9');
}

} // namespace

SimplicialGraph::SimplicialGraph(std::vector<std::string> vertex_names,
                                 const std::vector<std::pair<int, int>>& edges)
    : names_(std::move(vertex_names)) {
    const int n = static_cast<int>(names_.size());
    for (int i = 0; i < n; ++i) {
        require_input(valid_vertex_name(names_[i]),
                      "bad vertex name '" + names_[i] + "'");
        auto [it, fresh] = index_.emplace(names_[i], i);
        (void)it;
        require_input(fresh, "duplicate vertex name '" + names_[i] + "'");
    }
    adj_.assign(static_cast<std::size_t>(n) * n, false);
    nbrs_.resize(n);
    for (auto [u, v] : edges) {
        require_input(u >= 0 && u < n && v >= 0 && v < n, "edge endpoint out of range");
        require_input(u != v, "loop edge at vertex '" + names_[u] + "'");
        if (adj_[matrix_index(u, v)]) continue;
        adj_[matrix_index(u, v)] = true;
        adj_[matrix_index(v, u)] = true;
        ++edge_count_;
    }
    for (int v = 0; v < n; ++v) {
        for (int u = 0; u < n; ++u) {
            if (adj_[matrix_index(v, u)]) nbrs_[v].push_back(u);
        }
    }
}

int SimplicialGraph::vertex_index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

bool SimplicialGraph::operator==(const SimplicialGraph& other) const {
    return names_ == other.names_ && adj_ == other.adj_;
}

GraphPtr make_graph(std::vector<std::string> vertex_names,
                    const std::vector<std::pair<int, int>>& edges) {
    return std::make_shared<SimplicialGraph>(std::move(vertex_names), edges);
}

GraphPtr make_graph(std::vector<std::string> vertex_names,
                    const std::vector<std::pair<std::string, std::string>>& edges) {
    SimplicialGraph lookup(vertex_names, {});
    std::vector<std::pair<int, int>> idx_edges;
    idx_edges.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        int u = lookup.vertex_index(a);
        int v = lookup.vertex_index(b);
        require_input(u >= 0, "unknown edge endpoint '" + a + "'");
        require_input(v >= 0, "unknown edge endpoint '" + b + "'");
        idx_edges.emplace_back(u, v);
    }
    return make_graph(std::move(vertex_names), idx_edges);
}

VertexSet::VertexSet(GraphPtr graph) : graph_(std::move(graph)) {
    require_input(graph_ != nullptr, "vertex set needs a graph");
    mask_.assign(graph_->vertex_count(), false);
}

VertexSet::VertexSet(GraphPtr graph, const std::vector<int>& vertices)
    : VertexSet(std::move(graph)) {
    for (int v : vertices) {
        require_input(v >= 0 && v < graph_->vertex_count(), "vertex index out of range");
        add(v);
    }
}

VertexSet::VertexSet(GraphPtr graph, const std::vector<std::string>& vertex_names)
    : VertexSet(std::move(graph)) {
    for (const auto& name : vertex_names) {
        int v = graph_->vertex_index(name);
        require_input(v >= 0, "unknown vertex '" + name + "'");
        add(v);
    }
}

void VertexSet::add(int v) {
    if (!mask_.at(v)) {
        mask_[v] = true;
        ++size_;
    }
}

void VertexSet::remove(int v) {
    if (mask_.at(v)) {
        mask_[v] = false;
        --size_;
    }
}

std::vector<int> VertexSet::vertices() const {
    std::vector<int> out;
    out.reserve(size_);
    for (int v = 0; v < static_cast<int>(mask_.size()); ++v) {
        if (mask_[v]) out.push_back(v);
    }
    return out;
}

std::vector<std::string> VertexSet::names() const {
    std::vector<std::string> out;
    out.reserve(size_);
    for (int v : vertices()) out.push_back(graph_->vertex_name(v));
    return out;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
    require_input(*graph_ == *other.graph_, "vertex sets live on different graphs");
    for (int v = 0; v < static_cast<int>(mask_.size()); ++v) {
        if (mask_[v] && !other.mask_[v]) return false;
    }
    return true;
}

VertexSet VertexSet::set_union(const VertexSet& other) const {
    require_input(*graph_ == *other.graph_, "vertex sets live on different graphs");
    VertexSet out(graph_);
    for (int v = 0; v < static_cast<int>(mask_.size()); ++v) {
        if (mask_[v] || other.mask_[v]) out.add(v);
    }
    return out;
}

VertexSet VertexSet::set_intersection(const VertexSet& other) const {
    require_input(*graph_ == *other.graph_, "vertex sets live on different graphs");
    VertexSet out(graph_);
    for (int v = 0; v < static_cast<int>(mask_.size()); ++v) {
        if (mask_[v] && other.mask_[v]) out.add(v);
    }
    return out;
}

VertexSet VertexSet::complement() const {
    VertexSet out(graph_);
    for (int v = 0; v < static_cast<int>(mask_.size()); ++v) {
        if (!mask_[v]) out.add(v);
    }
    return out;
}

bool VertexSet::operator==(const VertexSet& other) const {
    return *graph_ == *other.graph_ && mask_ == other.mask_;
}

VertexSet full_vertex_set(GraphPtr graph) {
    VertexSet out(std::move(graph));
    return out.complement();
}

VertexSet link(const VertexSet& u) {
    const auto& g = *u.graph();
    VertexSet out(u.graph());
    for (int v = 0; v < g.vertex_count(); ++v) {
        bool ok = true;
        for (int w : u.vertices()) {
            if (!g.adjacent(v, w)) {
                ok = false;
                break;
            }
        }
        if (ok) out.add(v);
    }
    return out;
}

std::vector<VertexSet> irreducible_components(const VertexSet& u) {
    require_input(!u.empty(), "irreducible components need a nonempty set");
    const auto& g = *u.graph();
    auto verts = u.vertices();
    const int k = static_cast<int>(verts.size());
    // Union into components along non-edges of the induced subgraph.
    std::vector<int> parent(k);
    for (int i = 0; i < k; ++i) parent[i] = i;
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            if (!g.adjacent(verts[i], verts[j])) parent[find(i)] = find(j);
        }
    }
    std::vector<std::vector<int>> buckets(k);
    for (int i = 0; i < k; ++i) buckets[find(i)].push_back(verts[i]);
    std::vector<VertexSet> out;
    for (int i = 0; i < k; ++i) {
        if (!buckets[i].empty()) out.emplace_back(u.graph(), buckets[i]);
    }
    std::sort(out.begin(), out.end(), [](const VertexSet& a, const VertexSet& b) {
        return a.vertices().front() < b.vertices().front();
    });
    return out;
}

namespace {

// Plain branch-and-bound over candidate lists; fine at desk scale.
void clique_search(const SimplicialGraph& g, std::vector<int>& current,
                   const std::vector<int>& candidates, std::vector<int>& best) {
    if (current.size() + candidates.size() <= best.size()) return;
    if (candidates.empty()) {
        if (current.size() > best.size()) best = current;
        return;
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (current.size() + (candidates.size() - i) <= best.size()) return;
        int v = candidates[i];
        std::vector<int> next;
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            if (g.adjacent(v, candidates[j])) next.push_back(candidates[j]);
        }
        current.push_back(v);
        clique_search(g, current, next, best);
        current.pop_back();
    }
}

} // namespace

std::vector<int> max_clique(const SimplicialGraph& g) {
    require_input(g.vertex_count() > 0, "clique number needs a nonempty graph");
    std::vector<int> all(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
    std::vector<int> best, current;
    clique_search(g, current, all, best);
    return best;
}

int clique_number(const SimplicialGraph& g) {
    return static_cast<int>(max_clique(g).size());
}

GraphPtr discrete_graph(const std::vector<std::string>& names) {
    return make_graph(names, std::vector<std::pair<int, int>>{});
}

GraphPtr discrete_graph(int k, const std::string& stem) {
    require_input(k >= 0, "negative vertex count");
    std::vector<std::string> names;
    names.reserve(k);
    for (int i = 1; i <= k; ++i) names.push_back(stem + std::to_string(i));
    return discrete_graph(names);
}

GraphPtr complete_graph(const std::vector<std::string>& names) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) {
        for (int j = i + 1; j < static_cast<int>(names.size()); ++j) {
            edges.emplace_back(i, j);
        }
    }
    return make_graph(names, edges);
}

namespace {

GraphPtr combine(const GraphPtr& a, const GraphPtr& b, bool cross_edges) {
    require_input(a && b, "combine needs two graphs");
    std::vector<std::string> names = a->vertex_names();
    std::vector<std::string> taken = names;
    for (const auto& name : b->vertex_names()) {
        std::string candidate = name;
        int suffix = 2;
        while (std::find(taken.begin(), taken.end(), candidate) != taken.end()) {
            candidate = name + "_" + std::to_string(suffix++);
        }
        taken.push_back(candidate);
        names.push_back(candidate);
    }
    const int na = a->vertex_count();
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < na; ++u) {
        for (int v = u + 1; v < na; ++v) {
            if (a->adjacent(u, v)) edges.emplace_back(u, v);
        }
    }
    for (int u = 0; u < b->vertex_count(); ++u) {
        for (int v = u + 1; v < b->vertex_count(); ++v) {
            if (b->adjacent(u, v)) edges.emplace_back(na + u, na + v);
        }
    }
    if (cross_edges) {
        for (int u = 0; u < na; ++u) {
            for (int v = 0; v < b->vertex_count(); ++v) edges.emplace_back(u, na + v);
        }
    }
    return make_graph(std::move(names), edges);
}

} // namespace

GraphPtr join(const GraphPtr& a, const GraphPtr& b) { return combine(a, b, true); }

GraphPtr disjoint_union(const GraphPtr& a, const GraphPtr& b) {
    return combine(a, b, false);
}

GraphPtr f2_power(int d) {
    require_input(d >= 1, "f2 power needs d >= 1");
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i <= d; ++i) {
        names.push_back("x" + std::to_string(i));
        names.push_back("y" + std::to_string(i));
    }
    // Cross edges between distinct pairs only: each factor stays free.
    for (int i = 0; i < 2 * d; ++i) {
        for (int j = i + 1; j < 2 * d; ++j) {
            if (i / 2 != j / 2) edges.emplace_back(i, j);
        }
    }
    return make_graph(std::move(names), edges);
}

GraphPtr parse_graph(const std::string& text) {
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> edges;
    bool saw_vertices = false;
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
        if (head == "vertices:") {
            require_input(!saw_vertices, "repeated vertices line" + where);
            saw_vertices = true;
            std::string name;
            while (ls >> name) names.push_back(name);
        } else if (head == "edge:") {
            std::string a, b, extra;
            require_input(static_cast<bool>(ls >> a >> b), "edge needs two endpoints" + where);
            require_input(!(ls >> extra), "edge takes exactly two endpoints" + where);
            edges.emplace_back(a, b);
        } else {
            throw input_error("unrecognized line '" + head + "'" + where);
        }
    }
    require_input(saw_vertices, "graph text needs a vertices line");
    return make_graph(std::move(names), edges);
}

std::string print_graph(const SimplicialGraph& g) {
    std::ostringstream out;
    out << "vertices:";
    for (const auto& name : g.vertex_names()) out << ' ' << name;
    out << '\n';
    for (int u = 0; u < g.vertex_count(); ++u) {
        for (int v = u + 1; v < g.vertex_count(); ++v) {
            if (g.adjacent(u, v)) {
                out << "edge: " << g.vertex_name(u) << ' ' << g.vertex_name(v) << '\n';
            }
        }
    }
    return out.str();
}

GraphPtr load_graph_file(const std::string& path) {
    std::ifstream in(path);
    require_input(static_cast<bool>(in), "cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

} // namespace raag
