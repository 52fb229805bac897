#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ira/interleaver.hpp"

namespace ira {

// Undirected simple graph on vertices 0..vertex_count-1.
struct SimpleGraph {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> edges;

    // Neighbor lists, each sorted ascending.
    std::vector<std::vector<int>> adjacency() const;
    bool has_edge(int a, int b) const;
};

struct VertexPath {
    std::vector<int> vertices;

    int length() const { return static_cast<int>(vertices.size()); }
};

struct PropertyReport {
    int vertex_count = 0;
    int edge_count = 0;
    std::map<int, int> degree_histogram;  // degree -> vertex count
    std::optional<int> regular_degree;    // set when all degrees equal
    std::optional<int> girth;             // empty when acyclic
};

// The 25-vertex 4-regular girth-5 graph, labeled so that 0-1-...-24 is a
// Hamiltonian path. Validated at load.
SimpleGraph gruenbaum_graph();

// Exact girth (BFS from every vertex) and degree histogram. Throws
// std::invalid_argument on self-loops, duplicate edges or out-of-range
// endpoints.
PropertyReport validate_graph(const SimpleGraph& g);

// Backtracking search for a path visiting every vertex exactly once,
// starting at `start`. Neighbors are tried in ascending index order, so the
// result is deterministic. Returns nullopt when the search tree is exhausted.
std::optional<VertexPath> find_hamiltonian_path(const SimpleGraph& g, int start);

// True when path visits every vertex of g exactly once along edges of g.
bool is_hamiltonian_path(const SimpleGraph& g, const VertexPath& path);

// Relabel vertices by Hamiltonian-path visit order, drop the path edges, and
// search the residual subgraph for a path through every vertex (start
// vertices tried in ascending relabeled order, neighbors ascending). The
// visited relabeled numbers form the dither sequence. Returns nullopt when
// the residual subgraph admits no such traversal. Throws if `ham` is not a
// Hamiltonian path of g.
std::optional<DitherSequence> derive_dither_sequence(const SimpleGraph& g,
                                                     const VertexPath& ham);

// One "u v" pair per line.
void write_edge_list(const SimpleGraph& g, std::ostream& out);

}  // namespace ira
