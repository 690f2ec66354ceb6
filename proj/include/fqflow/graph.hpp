#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace fqflow {

struct Edge {
    int tail = 0;  // i(e)
    int head = 0;  // f(e)
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Loopless multigraph with oriented edges; parallel edges are repeated pairs.
class Multigraph {
public:
    Multigraph() = default;
    /// Throws NegativeIndex, InvalidArgument (index out of range) or HasLoops.
    Multigraph(int n_vertices, std::vector<Edge> edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

    std::vector<int> degrees() const;

    friend bool operator==(const Multigraph&, const Multigraph&) = default;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

struct ParsedGraph {
    Multigraph graph;
    int loop_count = 0;
};

/// Parses "u v" lines; '#' starts a comment. Loops are stripped and counted.
/// Throws MalformedLine, NegativeIndex or EmptyGraph.
ParsedGraph parse_edge_list(std::string_view text);
ParsedGraph read_edge_list_file(const std::string& path);
std::string to_edge_list(const Multigraph& g);

/// k3, k4, k5, k33, k34, k35, petersen, k5_plus_pendant3, two_triangles_bridge.
Multigraph named_graph(std::string_view name);
std::vector<std::string> catalog_names();

Multigraph complete_graph(int n);
Multigraph complete_bipartite(int a, int b);
Multigraph path_graph(int n);
Multigraph cycle_graph(int n);

using VertexSubset = std::vector<int>;  // sorted, duplicate-free

VertexSubset normalize_subset(const Multigraph& g, VertexSubset w);
VertexSubset complement(const Multigraph& g, const VertexSubset& w);

/// Merges W into one vertex and drops edges internal to W. The surviving vertex
/// set is (V \ W) + {min W}, relabelled in increasing order, so |W| = 1 is the
/// identity. Throws EmptySubset.
Multigraph contract(const Multigraph& g, const VertexSubset& w);
/// Original indices of the edges that survive contract(g, w), in order.
std::vector<int> contracted_edges(const Multigraph& g, const VertexSubset& w);

using IncidenceMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

/// eps(v, e) = -1 at i(e), +1 at f(e), 0 elsewhere.
IncidenceMatrix incidence(const Multigraph& g);

bool is_connected(const Multigraph& g);

/// Indices of bridge edges (parallel copies are never bridges).
std::vector<int> bridges(const Multigraph& g);

}  // namespace fqflow
