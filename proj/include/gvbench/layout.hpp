#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gvbench/graph.hpp"

namespace gvbench {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// One position per node, abstract layout units.
struct Layout {
    std::vector<Point> positions;
};

// Node -> community id, ids dense in [0, k).
struct Partition {
    std::vector<int> community_of;

    int community_count() const;
};

// Row/column permutation; permutation[i] = node placed at position i.
struct Ordering {
    std::vector<int> permutation;
};

// GEM force-directed layout parameters. Temperatures are in layout units;
// the per-node start temperature and the round cap scale with the node count.
struct GemParams {
    double desired_length = 128.0;
    double rounds_factor = 4.0;           // vertex-update cap = rounds_factor * n^2
    double start_temp_node_factor = 0.5;  // initial temp = factor * n * desired_length
    double stop_temp_factor = 0.02;       // stop when mean temp < factor * desired_length
    double gravity = 1.0 / 16.0;
    double oscillation_angle = 1.5707963267948966;  // pi/2
    double rotation_angle = 1.0471975511965976;     // pi/3
    double oscillation_sensitivity = 0.3;
    double rotation_sensitivity = 0.01;
    double max_disturbance = 0.0;
    double init_box_factor = 1.0;  // initial square side = factor * sqrt(n) * desired_length
};

// Seeded GEM layout (Frick-style adaptive spring embedder with per-node
// temperatures, oscillation/rotation detection and gravity). Deterministic
// for fixed (graph, seed, params); a single node lands at the origin.
Layout gem_layout(const Graph& g, std::uint64_t seed, const GemParams& params = {});

// Newman modularity Q = sum_c [ e_c/m - (deg_c/(2m))^2 ]. Throws Error on a
// zero-edge graph (undefined).
double modularity(const Graph& g, const Partition& p);

// Seeded Louvain community detection (greedy modularity maximization with
// level aggregation). Node visit order is a seeded shuffle per pass; equal
// gains resolve to the lowest community id; a pass stops when its total gain
// drops below 1e-9. A zero-edge graph yields the singleton partition.
Partition louvain_partition(const Graph& g, std::uint64_t seed);

Partition singleton_partition(const Graph& g);

// Communities sorted by descending size (ties by smallest member id);
// ascending node id inside each community.
Ordering ordering_from_partition(const Graph& g, const Partition& p);

// Sidecar formats: layout "id x y" per node; partition "node community".
std::string format_layout(const Layout& l);
Layout parse_layout(const std::string& text, const std::string& origin);
void save_layout(const Layout& l, const std::string& path);
Layout load_layout(const std::string& path);

std::string format_partition(const Partition& p);
void save_partition(const Partition& p, const std::string& path);

std::string format_ordering(const Ordering& o);
Ordering parse_ordering(const std::string& text, const std::string& origin);
void save_ordering(const Ordering& o, const std::string& path);
Ordering load_ordering(const std::string& path);

}  // namespace gvbench
