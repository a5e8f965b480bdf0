#ifndef RAAG_GRAPH_HPP
#define RAAG_GRAPH_HPP

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace raag {

class SimplicialGraph;
using GraphPtr = std::shared_ptr<const SimplicialGraph>;

// Finite simplicial graph: named vertices in a fixed declaration order plus a
// symmetric, loop-free adjacency relation.  Vertex order is significant: it is
// the tie-break order used everywhere downstream (canonical words, component
// ordering, clique reporting), so two graphs with the same edges but different
// declaration order are different objects.
class SimplicialGraph {
public:
    SimplicialGraph(std::vector<std::string> vertex_names,
                    const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return edge_count_; }
    const std::string& vertex_name(int v) const { return names_.at(v); }
    const std::vector<std::string>& vertex_names() const { return names_; }

    // -1 if no vertex has that name.
    int vertex_index(const std::string& name) const;

    bool adjacent(int u, int v) const { return adj_[matrix_index(u, v)]; }
    const std::vector<int>& neighbors(int v) const { return nbrs_.at(v); }

    bool operator==(const SimplicialGraph& other) const;
    bool operator!=(const SimplicialGraph& other) const { return !(*this == other); }

private:
    std::size_t matrix_index(int u, int v) const {
        return static_cast<std::size_t>(u) * names_.size() + static_cast<std::size_t>(v);
    }

    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<bool> adj_;
    std::vector<std::vector<int>> nbrs_;
    int edge_count_ = 0;
};

GraphPtr make_graph(std::vector<std::string> vertex_names,
                    const std::vector<std::pair<int, int>>& edges);
GraphPtr make_graph(std::vector<std::string> vertex_names,
                    const std::vector<std::pair<std::string, std::string>>& edges);

// Subset of the vertices of one fixed graph.
class VertexSet {
public:
    explicit VertexSet(GraphPtr graph);
    VertexSet(GraphPtr graph, const std::vector<int>& vertices);
    VertexSet(GraphPtr graph, const std::vector<std::string>& vertex_names);

    const GraphPtr& graph() const { return graph_; }
    bool contains(int v) const { return mask_.at(v); }
    int size() const { return size_; }
    bool empty() const { return size_ == 0; }

    void add(int v);
    void remove(int v);

    // Member indices in declaration order.
    std::vector<int> vertices() const;
    std::vector<std::string> names() const;

    bool is_subset_of(const VertexSet& other) const;
    VertexSet set_union(const VertexSet& other) const;
    VertexSet set_intersection(const VertexSet& other) const;
    VertexSet complement() const;

    bool operator==(const VertexSet& other) const;
    bool operator!=(const VertexSet& other) const { return !(*this == other); }

private:
    GraphPtr graph_;
    std::vector<bool> mask_;
    int size_ = 0;
};

VertexSet full_vertex_set(GraphPtr graph);

// Vertices adjacent to every member of u.  link(empty) is all of the graph's
// vertices; a vertex is never in the link of any set containing it.
VertexSet link(const VertexSet& u);

// Partition of u into inclusion-maximal subsets that pairwise commute with
// each other: connected components of the complement graph restricted to u.
// Components are ordered by their smallest vertex; precondition: u nonempty.
std::vector<VertexSet> irreducible_components(const VertexSet& u);

// Size of a largest complete subgraph; precondition: at least one vertex.
int clique_number(const SimplicialGraph& g);
// One witnessing clique, lexicographically least among maximum cliques.
std::vector<int> max_clique(const SimplicialGraph& g);

// Builders.  Every builder yields declaration order as documented so that
// downstream canonical forms are reproducible.
GraphPtr discrete_graph(const std::vector<std::string>& names);
GraphPtr discrete_graph(int k, const std::string& stem = "x");
GraphPtr complete_graph(const std::vector<std::string>& names);

// Join: all of a's vertices first, then b's, plus every cross edge.
// Disjoint union: same vertex order, no cross edges.  Name collisions get a
// numeric suffix on the second operand ("a" -> "a_2").
GraphPtr join(const GraphPtr& a, const GraphPtr& b);
GraphPtr disjoint_union(const GraphPtr& a, const GraphPtr& b);

// Presentation graph of (F_2)^d: d commuting pairs {x_i, y_i}, i = 1..d;
// vertex order x_1, y_1, x_2, y_2, ...
GraphPtr f2_power(int d);

// Text format: "vertices: a b c" then "edge: a b" lines, '#' comments.
GraphPtr parse_graph(const std::string& text);
std::string print_graph(const SimplicialGraph& g);
GraphPtr load_graph_file(const std::string& path);

} // namespace raag

#endif
