#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gvbench/common.hpp"

namespace gvbench {

// Undirected simple graph. Edges are kept canonical: u < v, sorted, unique.
// Immutable after construction by convention; all operations on it are pure.
struct Graph {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::uint64_t seed = 0;      // generator seed, 0 for loaded graphs
    double density_param = 0.0;  // the generator's d, 0 for loaded graphs
    std::string name;

    bool operator==(const Graph& other) const {
        return node_count == other.node_count && edges == other.edges;
    }
};

// Canonicalizes (sorts, dedups) and validates edges against node_count.
// Throws Error on self-loops or out-of-range endpoints.
Graph make_graph(int node_count, std::vector<std::pair<int, int>> edges,
                 std::string name = {});

// Neighbor lists, index per node.
std::vector<std::vector<int>> adjacency(const Graph& g);

std::vector<int> degrees(const Graph& g);

// Density d = sqrt(2|E| / |V|^2).
double edge_density(const Graph& g);

// Target edge count for density d on n nodes: round(d^2 * n^2 / 2),
// half away from zero.
long long target_edge_count(int n, double d);

// Uniform simple graph with exactly round(d^2*n^2/2) edges, sampled without
// replacement over all unordered pairs via a seeded partial Fisher-Yates on
// pair indices. Throws Error when the target exceeds n*(n-1)/2.
Graph generate_random_graph(int n, double d, std::uint64_t seed);

inline int node_count(const Graph& g) { return g.node_count; }
inline long long edge_count(const Graph& g) { return (long long)g.edges.size(); }

// Maximum degree; rejects an empty node set.
int max_degree(const Graph& g);

// BFS hop distance; nullopt when u and v are disconnected; 0 when u == v.
// Throws Error on invalid node indices.
std::optional<int> shortest_path_length(const Graph& g, int u, int v);

// Hop distance from src to every node; -1 for unreachable.
std::vector<int> bfs_distances(const Graph& g, int src);

// Up to `cap` unordered pairs at exactly the requested shortest-path length,
// sampled uniformly without replacement from the full candidate set.
std::vector<std::pair<int, int>> enumerate_pairs_by_spl(const Graph& g, int length,
                                                        long long cap,
                                                        std::uint64_t seed);

// Count of pairs per shortest-path length (index = length); index 0 unused.
std::vector<long long> spl_census(const Graph& g, int max_length);

// Edge-list text format: first line "N M", then M lines "u v", 0-based,
// u < v, ASCII, newline-terminated.
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);
Graph parse_edge_list(const std::string& text, const std::string& origin);
std::string format_edge_list(const Graph& g);

enum class Task { T0, T1, T2, T3 };

const char* task_name(Task t);
Task task_from_name(const std::string& s);

// Ground truth for a counting task (T0..T2) on a graph.
long long counting_ground_truth(const Graph& g, Task task);

}  // namespace gvbench
