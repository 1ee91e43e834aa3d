#include "gvbench/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace gvbench {

Graph make_graph(int node_count, std::vector<std::pair<int, int>> edges,
                 std::string name) {
    if (node_count < 0) throw Error("node_count must be >= 0");
    for (auto& e : edges) {
        if (e.first == e.second)
            throw Error(concat("self-loop on node ", e.first));
        if (e.first > e.second) std::swap(e.first, e.second);
        if (e.first < 0 || e.second >= node_count)
            throw Error(concat("edge {", e.first, ",", e.second,
                               "} out of range for ", node_count, " nodes"));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Graph g;
    g.node_count = node_count;
    g.edges = std::move(edges);
    g.name = std::move(name);
    return g;
}

std::vector<std::vector<int>> adjacency(const Graph& g) {
    std::vector<std::vector<int>> adj(std::size_t(g.node_count));
    for (const auto& [u, v] : g.edges) {
        adj[std::size_t(u)].push_back(v);
        adj[std::size_t(v)].push_back(u);
    }
    return adj;
}

std::vector<int> degrees(const Graph& g) {
    std::vector<int> deg(std::size_t(g.node_count), 0);
    for (const auto& [u, v] : g.edges) {
        ++deg[std::size_t(u)];
        ++deg[std::size_t(v)];
    }
    return deg;
}

double edge_density(const Graph& g) {
    if (g.node_count == 0) return 0.0;
    return std::sqrt(2.0 * double(g.edges.size()) /
                     (double(g.node_count) * double(g.node_count)));
}

long long target_edge_count(int n, double d) {
    return round_half_away(d * d * double(n) * double(n) / 2.0);
}

namespace {

// Unordered pairs (u,v), u<v, enumerated as (0,1),(0,2),...,(0,n-1),(1,2),...
std::pair<int, int> unrank_pair(long long idx, int n) {
    int u = 0;
    long long row = n - 1;
    while (idx >= row) {
        idx -= row;
        ++u;
        --row;
    }
    return {u, u + 1 + int(idx)};
}

}  // namespace

Graph generate_random_graph(int n, double d, std::uint64_t seed) {
    if (n < 1) throw Error("generate_random_graph: n must be >= 1");
    if (d < 0.0) throw Error("generate_random_graph: d must be >= 0");
    const long long total_pairs = (long long)n * (n - 1) / 2;
    const long long m = target_edge_count(n, d);
    if (m > total_pairs)
        throw Error(concat("generate_random_graph: target edge count ", m,
                           " exceeds simple-graph maximum ", total_pairs,
                           " for (n=", n, ", d=", d, ")"));

    // Partial Fisher-Yates over the virtual array of pair indices; only the
    // displaced positions are materialized.
    Rng rng(seed);
    std::unordered_map<long long, long long> displaced;
    displaced.reserve(std::size_t(m) * 2);
    auto value_at = [&](long long i) {
        auto it = displaced.find(i);
        return it == displaced.end() ? i : it->second;
    };
    std::vector<std::pair<int, int>> edges;
    edges.reserve(std::size_t(m));
    for (long long i = 0; i < m; ++i) {
        long long j = i + (long long)uniform_below(rng, std::uint64_t(total_pairs - i));
        long long vi = value_at(i);
        long long vj = value_at(j);
        displaced[j] = vi;
        displaced[i] = vj;
        edges.push_back(unrank_pair(vj, n));
    }
    Graph g = make_graph(n, std::move(edges));
    if ((long long)g.edges.size() != m)
        throw Error("generate_random_graph: internal sampling error");
    g.seed = seed;
    g.density_param = d;
    return g;
}

int max_degree(const Graph& g) {
    if (g.node_count < 1) throw Error("max_degree: empty node set");
    auto deg = degrees(g);
    return *std::max_element(deg.begin(), deg.end());
}

std::vector<int> bfs_distances(const Graph& g, int src) {
    auto adj = adjacency(g);
    std::vector<int> dist(std::size_t(g.node_count), -1);
    std::deque<int> q;
    dist[std::size_t(src)] = 0;
    q.push_back(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int w : adj[std::size_t(u)]) {
            if (dist[std::size_t(w)] < 0) {
                dist[std::size_t(w)] = dist[std::size_t(u)] + 1;
                q.push_back(w);
            }
        }
    }
    return dist;
}

std::optional<int> shortest_path_length(const Graph& g, int u, int v) {
    if (u < 0 || u >= g.node_count || v < 0 || v >= g.node_count)
        throw Error(concat("shortest_path_length: invalid node index (u=", u,
                           ", v=", v, ", n=", g.node_count, ")"));
    if (u == v) return 0;
    auto dist = bfs_distances(g, u);
    int d = dist[std::size_t(v)];
    if (d < 0) return std::nullopt;
    return d;
}

std::vector<long long> spl_census(const Graph& g, int max_length) {
    std::vector<long long> census(std::size_t(max_length) + 1, 0);
    for (int u = 0; u < g.node_count; ++u) {
        auto dist = bfs_distances(g, u);
        for (int v = u + 1; v < g.node_count; ++v) {
            int d = dist[std::size_t(v)];
            if (d >= 1 && d <= max_length) ++census[std::size_t(d)];
        }
    }
    return census;
}

std::vector<std::pair<int, int>> enumerate_pairs_by_spl(const Graph& g, int length,
                                                        long long cap,
                                                        std::uint64_t seed) {
    if (length < 1) throw Error("enumerate_pairs_by_spl: length must be >= 1");
    if (cap < 0) throw Error("enumerate_pairs_by_spl: cap must be >= 0");
    std::vector<std::pair<int, int>> candidates;
    for (int u = 0; u < g.node_count; ++u) {
        auto dist = bfs_distances(g, u);
        for (int v = u + 1; v < g.node_count; ++v)
            if (dist[std::size_t(v)] == length) candidates.emplace_back(u, v);
    }
    const long long take = std::min<long long>(cap, (long long)candidates.size());
    Rng rng(seed);
    std::vector<std::pair<int, int>> out;
    out.reserve(std::size_t(take));
    for (long long i = 0; i < take; ++i) {
        long long j =
            i + (long long)uniform_below(rng, std::uint64_t((long long)candidates.size() - i));
        std::swap(candidates[std::size_t(i)], candidates[std::size_t(j)]);
        out.push_back(candidates[std::size_t(i)]);
    }
    return out;
}

Graph parse_edge_list(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& msg) -> Error {
        return Error(concat(origin, ":", line_no, ": ", msg));
    };
    if (!std::getline(in, line)) {
        line_no = 1;
        throw fail("empty file, expected header \"N M\"");
    }
    ++line_no;
    long long n = 0, m = 0;
    {
        std::istringstream hs(line);
        std::string extra;
        if (!(hs >> n >> m) || (hs >> extra))
            throw fail(concat("malformed header line: \"", line, "\""));
        if (n < 0 || m < 0) throw fail("negative counts in header");
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(std::size_t(m));
    std::vector<std::pair<int, int>> sorted_seen;
    for (long long i = 0; i < m; ++i) {
        if (!std::getline(in, line)) {
            ++line_no;
            throw fail(concat("expected ", m, " edges, file ends after ", i));
        }
        ++line_no;
        std::istringstream es(line);
        long long u = 0, v = 0;
        std::string extra;
        if (!(es >> u >> v) || (es >> extra))
            throw fail(concat("malformed edge line: \"", line, "\""));
        if (u == v) throw fail(concat("self-loop edge \"", u, " ", v, "\""));
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw fail(concat("node index out of range in \"", u, " ", v, "\""));
        if (u > v) std::swap(u, v);
        edges.emplace_back(int(u), int(v));
    }
    {
        auto sorted = edges;
        std::sort(sorted.begin(), sorted.end());
        auto dup = std::adjacent_find(sorted.begin(), sorted.end());
        if (dup != sorted.end())
            throw Error(concat(origin, ": duplicate edge {", dup->first, ",",
                               dup->second, "}"));
    }
    Graph g = make_graph(int(n), std::move(edges));
    return g;
}

Graph load_edge_list(const std::string& path) {
    Graph g = parse_edge_list(read_text_file(path), path);
    std::string stem = path;
    if (auto pos = stem.find_last_of("/\\"); pos != std::string::npos)
        stem = stem.substr(pos + 1);
    if (auto pos = stem.find_last_of('.'); pos != std::string::npos)
        stem = stem.substr(0, pos);
    g.name = stem;
    return g;
}

std::string format_edge_list(const Graph& g) {
    std::ostringstream os;
    os << g.node_count << ' ' << g.edges.size() << '\n';
    for (const auto& [u, v] : g.edges) os << u << ' ' << v << '\n';
    return os.str();
}

void save_edge_list(const Graph& g, const std::string& path) {
    write_text_file(path, format_edge_list(g));
}

const char* task_name(Task t) {
    switch (t) {
        case Task::T0: return "T0";
        case Task::T1: return "T1";
        case Task::T2: return "T2";
        case Task::T3: return "T3";
    }
    throw Error("unknown task");
}

Task task_from_name(const std::string& s) {
    if (s == "T0") return Task::T0;
    if (s == "T1") return Task::T1;
    if (s == "T2") return Task::T2;
    if (s == "T3") return Task::T3;
    throw Error(concat("unknown task tag \"", s, "\""));
}

long long counting_ground_truth(const Graph& g, Task task) {
    switch (task) {
        case Task::T0: return g.node_count;
        case Task::T1: return edge_count(g);
        case Task::T2: return max_degree(g);
        case Task::T3: break;
    }
    throw Error("counting_ground_truth: T3 needs a highlighted pair");
}

}  // namespace gvbench
