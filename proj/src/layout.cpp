#include "gvbench/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gvbench {

int Partition::community_count() const {
    int k = 0;
    for (int c : community_of) k = std::max(k, c + 1);
    return k;
}

// ---------------------------------------------------------------------------
// GEM
// ---------------------------------------------------------------------------

Layout gem_layout(const Graph& g, std::uint64_t seed, const GemParams& params) {
    const int n = g.node_count;
    if (n < 1) throw Error("gem_layout: need at least one node");
    Layout layout;
    layout.positions.assign(std::size_t(n), Point{});
    if (n == 1) return layout;

    const auto adj = adjacency(g);
    const auto deg = degrees(g);
    const double L = params.desired_length;
    const double L2 = L * L;

    Rng rng(mix_seed(seed, 0x67656d00ull));  // "gem"

    // initial placement: uniform in a square centered at the origin
    const double side = params.init_box_factor * std::sqrt(double(n)) * L;
    for (auto& p : layout.positions) {
        p.x = (uniform_real(rng) - 0.5) * side;
        p.y = (uniform_real(rng) - 0.5) * side;
    }

    auto mass = [&](int v) { return 1.0 + double(deg[std::size_t(v)]) / 2.0; };

    const double start_temp = params.start_temp_node_factor * double(n) * L;
    const double stop_temp = params.stop_temp_factor * L;
    std::vector<double> temp(std::size_t(n), start_temp);
    std::vector<Point> impulse(std::size_t(n), Point{});
    std::vector<double> skew(std::size_t(n), 0.0);
    double temp_sum = start_temp * double(n);

    Point barycenter{0.0, 0.0};
    double mass_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        barycenter.x += mass(v) * layout.positions[std::size_t(v)].x;
        barycenter.y += mass(v) * layout.positions[std::size_t(v)].y;
        mass_sum += mass(v);
    }

    const double sin_rot = std::sin(1.5707963267948966 + params.rotation_angle / 2.0);
    const double cos_osc = std::cos(params.oscillation_angle / 2.0);

    const long long max_updates =
        (long long)std::llround(params.rounds_factor * double(n) * double(n));
    std::vector<int> order;
    std::size_t order_pos = 0;

    for (long long update = 0; update < max_updates; ++update) {
        if (temp_sum / double(n) <= stop_temp) break;
        if (order_pos >= order.size()) {
            order.resize(std::size_t(n));
            std::iota(order.begin(), order.end(), 0);
            shuffle(order, rng);
            order_pos = 0;
        }
        const int v = order[order_pos++];
        const Point pv = layout.positions[std::size_t(v)];

        // gravitation toward the (mass-weighted) barycenter
        Point p{(barycenter.x / mass_sum - pv.x) * params.gravity,
                (barycenter.y / mass_sum - pv.y) * params.gravity};

        if (params.max_disturbance > 0.0) {
            p.x += (uniform_real(rng) * 2.0 - 1.0) * params.max_disturbance;
            p.y += (uniform_real(rng) * 2.0 - 1.0) * params.max_disturbance;
        }

        // repulsion from every other node
        for (int u = 0; u < n; ++u) {
            if (u == v) continue;
            const double dx = pv.x - layout.positions[std::size_t(u)].x;
            const double dy = pv.y - layout.positions[std::size_t(u)].y;
            const double d2 = dx * dx + dy * dy;
            if (d2 > 0.0) {
                p.x += dx * L2 / d2;
                p.y += dy * L2 / d2;
            }
        }

        // attraction along incident edges, scaled down by node mass
        const double mv = mass(v);
        for (int u : adj[std::size_t(v)]) {
            const double dx = pv.x - layout.positions[std::size_t(u)].x;
            const double dy = pv.y - layout.positions[std::size_t(u)].y;
            const double d = std::sqrt(dx * dx + dy * dy);
            p.x -= dx * d / (L * mv);
            p.y -= dy * d / (L * mv);
        }

        const double plen = std::sqrt(p.x * p.x + p.y * p.y);
        if (plen == 0.0) continue;

        // move by exactly the local temperature
        const double tv = temp[std::size_t(v)];
        p.x *= tv / plen;
        p.y *= tv / plen;
        layout.positions[std::size_t(v)].x += p.x;
        layout.positions[std::size_t(v)].y += p.y;
        barycenter.x += mv * p.x;
        barycenter.y += mv * p.y;

        const Point prev = impulse[std::size_t(v)];
        const double cross_len = std::sqrt((p.x * p.x + p.y * p.y) *
                                           (prev.x * prev.x + prev.y * prev.y));
        if (cross_len > 0.0) {
            const double sin_beta = (p.x * prev.y - p.y * prev.x) / cross_len;
            const double cos_beta = (p.x * prev.x + p.y * prev.y) / cross_len;

            temp_sum -= temp[std::size_t(v)];
            double t = temp[std::size_t(v)];
            if (std::fabs(sin_beta) > sin_rot)
                skew[std::size_t(v)] += params.rotation_sensitivity *
                                        (sin_beta > 0.0 ? 1.0 : -1.0);
            if (std::fabs(cos_beta) > cos_osc)
                t *= 1.0 + cos_beta * params.oscillation_sensitivity;
            t *= 1.0 - std::min(1.0, std::fabs(skew[std::size_t(v)]));
            t = std::min(t, start_temp);
            temp[std::size_t(v)] = t;
            temp_sum += t;
        }
        impulse[std::size_t(v)] = p;
    }

    for (const auto& p : layout.positions)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error("gem_layout: non-finite position");
    return layout;
}

// ---------------------------------------------------------------------------
// Modularity and Louvain
// ---------------------------------------------------------------------------

double modularity(const Graph& g, const Partition& p) {
    if ((int)p.community_of.size() != g.node_count)
        throw Error("modularity: partition does not cover all nodes");
    const long long m = edge_count(g);
    if (m == 0) throw Error("modularity: undefined for zero-edge graph");
    const int k = p.community_count();
    std::vector<long long> intra(std::size_t(k), 0);
    std::vector<long long> deg_sum(std::size_t(k), 0);
    for (const auto& [u, v] : g.edges) {
        const int cu = p.community_of[std::size_t(u)];
        const int cv = p.community_of[std::size_t(v)];
        if (cu == cv) ++intra[std::size_t(cu)];
        ++deg_sum[std::size_t(cu)];
        ++deg_sum[std::size_t(cv)];
    }
    double q = 0.0;
    for (int c = 0; c < k; ++c) {
        const double ec = double(intra[std::size_t(c)]) / double(m);
        const double dc = double(deg_sum[std::size_t(c)]) / (2.0 * double(m));
        q += ec - dc * dc;
    }
    return q;
}

Partition singleton_partition(const Graph& g) {
    Partition p;
    p.community_of.resize(std::size_t(g.node_count));
    std::iota(p.community_of.begin(), p.community_of.end(), 0);
    return p;
}

namespace {

// Weighted graph for Louvain level aggregation. self_weight holds intra
// weights folded into a node (counted once).
struct WeightedGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj;  // neighbor, weight
    std::vector<double> self_weight;
    double total_weight = 0.0;  // sum of edge weights incl. self loops
};

struct LevelResult {
    std::vector<int> community_of;  // per node of the level graph, dense ids
    double gain = 0.0;
    int communities = 0;
};

constexpr double kGainEpsilon = 1e-9;

LevelResult louvain_one_level(const WeightedGraph& g, Rng& rng) {
    const int n = g.n;
    std::vector<int> community(std::size_t(n));
    std::iota(community.begin(), community.end(), 0);
    std::vector<double> node_weight(std::size_t(n), 0.0);  // weighted degree
    for (int v = 0; v < n; ++v) {
        double w = 2.0 * g.self_weight[std::size_t(v)];
        for (const auto& [u, ew] : g.adj[std::size_t(v)]) w += ew;
        node_weight[std::size_t(v)] = w;
    }
    std::vector<double> community_weight = node_weight;  // sum of degrees per community
    const double two_m = 2.0 * g.total_weight;

    LevelResult result;
    bool improved = true;
    std::vector<int> order(std::size_t(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> link_weight(std::size_t(n), 0.0);
    std::vector<int> touched;
    while (improved) {
        improved = false;
        double pass_gain = 0.0;
        shuffle(order, rng);
        for (int v : order) {
            const int old_c = community[std::size_t(v)];
            // weights from v to each neighboring community
            touched.clear();
            for (const auto& [u, ew] : g.adj[std::size_t(v)]) {
                const int cu = community[std::size_t(u)];
                if (link_weight[std::size_t(cu)] == 0.0) touched.push_back(cu);
                link_weight[std::size_t(cu)] += ew;
            }
            if (link_weight[std::size_t(old_c)] == 0.0) touched.push_back(old_c);

            community_weight[std::size_t(old_c)] -= node_weight[std::size_t(v)];
            const double kv = node_weight[std::size_t(v)];

            // gain of joining community c (relative to staying isolated):
            // link(v,c)/m - ktot(c)*kv/(2 m^2)
            int best_c = old_c;
            double best_gain = link_weight[std::size_t(old_c)] / g.total_weight -
                               community_weight[std::size_t(old_c)] * kv /
                                   (two_m * g.total_weight);
            std::sort(touched.begin(), touched.end());
            for (int c : touched) {
                double gain = link_weight[std::size_t(c)] / g.total_weight -
                              community_weight[std::size_t(c)] * kv /
                                  (two_m * g.total_weight);
                if (gain > best_gain + kGainEpsilon ||
                    (gain > best_gain - kGainEpsilon && c < best_c)) {
                    if (gain > best_gain + kGainEpsilon) {
                        best_gain = gain;
                        best_c = c;
                    } else if (c < best_c) {
                        best_c = c;
                    }
                }
            }
            const double old_gain = link_weight[std::size_t(old_c)] / g.total_weight -
                                    community_weight[std::size_t(old_c)] * kv /
                                        (two_m * g.total_weight);
            community_weight[std::size_t(best_c)] += node_weight[std::size_t(v)];
            community[std::size_t(v)] = best_c;
            if (best_c != old_c) {
                pass_gain += best_gain - old_gain;
                improved = true;
            }
            for (int c : touched) link_weight[std::size_t(c)] = 0.0;
        }
        result.gain += pass_gain;
        if (pass_gain < kGainEpsilon) break;
    }

    // renumber densely, by order of first appearance over node ids
    std::vector<int> renumber(std::size_t(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        int& r = renumber[std::size_t(community[std::size_t(v)])];
        if (r < 0) r = next++;
        community[std::size_t(v)] = renumber[std::size_t(community[std::size_t(v)])];
    }
    result.community_of = std::move(community);
    result.communities = next;
    return result;
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<int>& community_of,
                        int communities) {
    WeightedGraph out;
    out.n = communities;
    out.adj.resize(std::size_t(communities));
    out.self_weight.assign(std::size_t(communities), 0.0);
    out.total_weight = g.total_weight;
    std::vector<std::vector<double>> acc(std::size_t(communities));
    for (auto& row : acc) row.assign(std::size_t(communities), 0.0);
    for (int v = 0; v < g.n; ++v) {
        const int cv = community_of[std::size_t(v)];
        out.self_weight[std::size_t(cv)] += g.self_weight[std::size_t(v)];
        for (const auto& [u, ew] : g.adj[std::size_t(v)]) {
            const int cu = community_of[std::size_t(u)];
            if (cu == cv) {
                if (u > v) out.self_weight[std::size_t(cv)] += ew;
            } else {
                acc[std::size_t(cv)][std::size_t(cu)] += ew;
            }
        }
    }
    for (int c = 0; c < communities; ++c)
        for (int d = 0; d < communities; ++d)
            if (acc[std::size_t(c)][std::size_t(d)] > 0.0)
                out.adj[std::size_t(c)].emplace_back(d, acc[std::size_t(c)][std::size_t(d)]);
    return out;
}

}  // namespace

Partition louvain_partition(const Graph& g, std::uint64_t seed) {
    if (g.node_count < 1) throw Error("louvain_partition: need at least one node");
    if (g.edges.empty()) return singleton_partition(g);

    WeightedGraph wg;
    wg.n = g.node_count;
    wg.adj.resize(std::size_t(g.node_count));
    wg.self_weight.assign(std::size_t(g.node_count), 0.0);
    for (const auto& [u, v] : g.edges) {
        wg.adj[std::size_t(u)].emplace_back(v, 1.0);
        wg.adj[std::size_t(v)].emplace_back(u, 1.0);
    }
    wg.total_weight = double(g.edges.size());

    Rng rng(mix_seed(seed, 0x6c6f757661696eull));  // "louvain"
    std::vector<int> mapping(std::size_t(g.node_count));
    std::iota(mapping.begin(), mapping.end(), 0);

    int level = 0;
    while (true) {
        LevelResult lr = louvain_one_level(wg, rng);
        ++level;
        const bool no_change = lr.communities == wg.n && lr.gain < kGainEpsilon;
        for (auto& m : mapping) m = lr.community_of[std::size_t(m)];
        if (no_change || lr.communities == 1) break;
        wg = aggregate(wg, lr.community_of, lr.communities);
        if (level > g.node_count) break;  // cannot iterate more levels than nodes
    }

    // renumber communities by ascending smallest member node id
    int k = 0;
    for (int c : mapping) k = std::max(k, c + 1);
    std::vector<int> first_member(std::size_t(k), -1);
    for (int v = 0; v < g.node_count; ++v)
        if (first_member[std::size_t(mapping[std::size_t(v)])] < 0)
            first_member[std::size_t(mapping[std::size_t(v)])] = v;
    std::vector<int> by_min(std::size_t(k));
    std::iota(by_min.begin(), by_min.end(), 0);
    std::sort(by_min.begin(), by_min.end(), [&](int a, int b) {
        return first_member[std::size_t(a)] < first_member[std::size_t(b)];
    });
    std::vector<int> renumber(std::size_t(k));
    for (int i = 0; i < k; ++i) renumber[std::size_t(by_min[std::size_t(i)])] = i;

    Partition p;
    p.community_of.resize(std::size_t(g.node_count));
    for (int v = 0; v < g.node_count; ++v)
        p.community_of[std::size_t(v)] = renumber[std::size_t(mapping[std::size_t(v)])];
    return p;
}

Ordering ordering_from_partition(const Graph& g, const Partition& p) {
    if ((int)p.community_of.size() != g.node_count)
        throw Error("ordering_from_partition: partition does not cover all nodes");
    const int k = p.community_count();
    std::vector<std::vector<int>> members(std::size_t(k));
    for (int v = 0; v < g.node_count; ++v) {
        const int c = p.community_of[std::size_t(v)];
        if (c < 0 || c >= k) throw Error("ordering_from_partition: bad community id");
        members[std::size_t(c)].push_back(v);
    }
    std::vector<int> community_order(std::size_t(k));
    std::iota(community_order.begin(), community_order.end(), 0);
    std::sort(community_order.begin(), community_order.end(), [&](int a, int b) {
        const auto& ma = members[std::size_t(a)];
        const auto& mb = members[std::size_t(b)];
        if (ma.size() != mb.size()) return ma.size() > mb.size();
        return ma.front() < mb.front();  // members are ascending by construction
    });
    Ordering o;
    o.permutation.reserve(std::size_t(g.node_count));
    for (int c : community_order)
        for (int v : members[std::size_t(c)]) o.permutation.push_back(v);
    return o;
}

// ---------------------------------------------------------------------------
// Sidecar formats
// ---------------------------------------------------------------------------

std::string format_layout(const Layout& l) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < l.positions.size(); ++i)
        os << i << ' ' << l.positions[i].x << ' ' << l.positions[i].y << '\n';
    return os.str();
}

Layout parse_layout(const std::string& text, const std::string& origin) {
    Layout l;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        long long id = 0;
        double x = 0.0, y = 0.0;
        if (!(ls >> id >> x >> y))
            throw Error(concat(origin, ":", line_no, ": malformed layout line"));
        if (id != (long long)l.positions.size())
            throw Error(concat(origin, ":", line_no, ": ids must be consecutive from 0"));
        l.positions.push_back(Point{x, y});
    }
    return l;
}

void save_layout(const Layout& l, const std::string& path) {
    write_text_file(path, format_layout(l));
}

Layout load_layout(const std::string& path) {
    return parse_layout(read_text_file(path), path);
}

std::string format_partition(const Partition& p) {
    std::ostringstream os;
    for (std::size_t i = 0; i < p.community_of.size(); ++i)
        os << i << ' ' << p.community_of[i] << '\n';
    return os.str();
}

void save_partition(const Partition& p, const std::string& path) {
    write_text_file(path, format_partition(p));
}

std::string format_ordering(const Ordering& o) {
    std::ostringstream os;
    for (std::size_t i = 0; i < o.permutation.size(); ++i) {
        os << o.permutation[i];
        os << '\n';
    }
    return os.str();
}

Ordering parse_ordering(const std::string& text, const std::string& origin) {
    Ordering o;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int v = 0;
        if (!(ls >> v))
            throw Error(concat(origin, ":", line_no, ": malformed ordering line"));
        o.permutation.push_back(v);
    }
    std::vector<bool> seen(o.permutation.size(), false);
    for (int v : o.permutation) {
        if (v < 0 || std::size_t(v) >= o.permutation.size() || seen[std::size_t(v)])
            throw Error(concat(origin, ": ordering is not a permutation"));
        seen[std::size_t(v)] = true;
    }
    return o;
}

void save_ordering(const Ordering& o, const std::string& path) {
    write_text_file(path, format_ordering(o));
}

Ordering load_ordering(const std::string& path) {
    return parse_ordering(read_text_file(path), path);
}

}  // namespace gvbench
