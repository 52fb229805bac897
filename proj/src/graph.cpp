#include "ira/graph.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>
#include <stdexcept>

namespace ira {

namespace {

// Residual edges of the embedded graph beyond the 0-1-...-24 spine: a second
// vertex-covering chain plus the two edges that complete 4-regularity.
const std::pair<int, int> kGruenbaumResidual[26] = {
    {7, 20}, {20, 12}, {12, 4},  {4, 9},   {9, 21}, {21, 0}, {0, 18},
    {18, 11}, {11, 6}, {6, 16},  {16, 3},  {3, 19}, {19, 23}, {23, 10},
    {10, 15}, {15, 1}, {1, 24},  {24, 17}, {17, 13}, {13, 22}, {22, 2},
    {2, 8},  {8, 14}, {14, 5},  {0, 5},   {7, 24}};

// Backtracking path extension over sorted adjacency, ascending neighbors.
bool extend_path(const std::vector<std::vector<int>>& adj, std::vector<int>& path,
                 std::vector<char>& used, int target_len) {
    if (static_cast<int>(path.size()) == target_len) return true;
    for (int next : adj[path.back()]) {
        if (used[next]) continue;
        used[next] = 1;
        path.push_back(next);
        if (extend_path(adj, path, used, target_len)) return true;
        path.pop_back();
        used[next] = 0;
    }
    return false;
}

std::optional<std::vector<int>> hamiltonian_from(const std::vector<std::vector<int>>& adj,
                                                 int start, int n) {
    std::vector<int> path{start};
    std::vector<char> used(n, 0);
    used[start] = 1;
    if (extend_path(adj, path, used, n)) return path;
    return std::nullopt;
}

}  // namespace

std::vector<std::vector<int>> SimpleGraph::adjacency() const {
    std::vector<std::vector<int>> adj(vertex_count);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
    }
    return adj;
}

bool SimpleGraph::has_edge(int a, int b) const {
    for (auto [u, v] : edges) {
        if ((u == a && v == b) || (u == b && v == a)) return true;
    }
    return false;
}

SimpleGraph gruenbaum_graph() {
    SimpleGraph g;
    g.vertex_count = 25;
    g.edges.reserve(50);
    for (int i = 0; i < 24; i++) {
        g.edges.emplace_back(i, i + 1);
    }
    for (auto e : kGruenbaumResidual) {
        g.edges.push_back(e);
    }
    PropertyReport report = validate_graph(g);
    if (report.regular_degree != 4 || report.girth != 5 || report.edge_count != 50) {
        throw std::logic_error("gruenbaum_graph: embedded constant failed validation");
    }
    return g;
}

PropertyReport validate_graph(const SimpleGraph& g) {
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : g.edges) {
        if (a < 0 || b < 0 || a >= g.vertex_count || b >= g.vertex_count) {
            throw std::invalid_argument("validate_graph: endpoint out of range");
        }
        if (a == b) throw std::invalid_argument("validate_graph: self-loop");
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) {
            throw std::invalid_argument("validate_graph: duplicate edge");
        }
    }

    PropertyReport report;
    report.vertex_count = g.vertex_count;
    report.edge_count = static_cast<int>(g.edges.size());

    auto adj = g.adjacency();
    for (const auto& nbrs : adj) {
        report.degree_histogram[static_cast<int>(nbrs.size())]++;
    }
    if (report.degree_histogram.size() == 1) {
        report.regular_degree = report.degree_histogram.begin()->first;
    }

    // Girth by BFS from every vertex: the first non-tree edge met closes the
    // shortest cycle through the root's BFS layers.
    int best = -1;
    for (int root = 0; root < g.vertex_count; root++) {
        std::vector<int> dist(g.vertex_count, -1), parent(g.vertex_count, -1);
        std::deque<int> queue{root};
        dist[root] = 0;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int v : adj[u]) {
                if (dist[v] == -1) {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if (v != parent[u]) {
                    int len = dist[u] + dist[v] + 1;
                    if (best == -1 || len < best) best = len;
                }
            }
        }
    }
    if (best != -1) report.girth = best;
    return report;
}

std::optional<VertexPath> find_hamiltonian_path(const SimpleGraph& g, int start) {
    if (start < 0 || start >= g.vertex_count) {
        throw std::invalid_argument("find_hamiltonian_path: bad start vertex");
    }
    auto found = hamiltonian_from(g.adjacency(), start, g.vertex_count);
    if (!found) return std::nullopt;
    return VertexPath{std::move(*found)};
}

bool is_hamiltonian_path(const SimpleGraph& g, const VertexPath& path) {
    if (path.length() != g.vertex_count) return false;
    std::vector<char> used(g.vertex_count, 0);
    auto adj = g.adjacency();
    for (int i = 0; i < path.length(); i++) {
        int v = path.vertices[i];
        if (v < 0 || v >= g.vertex_count || used[v]) return false;
        used[v] = 1;
        if (i > 0 && !std::binary_search(adj[path.vertices[i - 1]].begin(),
                                         adj[path.vertices[i - 1]].end(), v)) {
            return false;
        }
    }
    return true;
}

std::optional<DitherSequence> derive_dither_sequence(const SimpleGraph& g,
                                                     const VertexPath& ham) {
    if (!is_hamiltonian_path(g, ham)) {
        throw std::invalid_argument("derive_dither_sequence: not a Hamiltonian path");
    }
    const int n = g.vertex_count;
    // Relabel by visit order.
    std::vector<int> label(n);
    for (int i = 0; i < n; i++) {
        label[ham.vertices[i]] = i;
    }
    // Residual subgraph: every edge not on the path, in relabeled indices.
    std::vector<std::vector<int>> residual(n);
    for (auto [a, b] : g.edges) {
        int u = label[a], v = label[b];
        if (std::abs(u - v) == 1) continue;  // path edge
        residual[u].push_back(v);
        residual[v].push_back(u);
    }
    for (auto& nbrs : residual) {
        std::sort(nbrs.begin(), nbrs.end());
    }
    for (int start = 0; start < n; start++) {
        if (auto found = hamiltonian_from(residual, start, n)) {
            return DitherSequence{std::move(*found)};
        }
    }
    return std::nullopt;
}

void write_edge_list(const SimpleGraph& g, std::ostream& out) {
    for (auto [a, b] : g.edges) {
        out << a << " " << b << "\n";
    }
}

}  // namespace ira
