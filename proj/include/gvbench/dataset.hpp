#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gvbench/graph.hpp"

namespace gvbench {

enum class Technique { NL, AM };
enum class Split { Train, Validation, Test };

const char* technique_name(Technique t);
Technique technique_from_name(const std::string& s);
const char* split_name(Split s);
Split split_from_name(const std::string& s);

struct SampleMeta {
    int n = 0;
    double d = 0.0;
    std::optional<int> spl_length;
    std::optional<std::pair<int, int>> highlight;  // T3 only
};

struct SampleRecord {
    std::string sample_id;  // "{instance_id}_{technique}"
    std::string graph_file;
    Task task = Task::T0;
    Technique technique = Technique::NL;
    std::string image_file;
    long long ground_truth = 0;
    Split split = Split::Train;
    SampleMeta meta;

    // technique-independent id used to pair samples across techniques
    std::string instance_id() const;
};

struct Manifest {
    std::vector<SampleRecord> samples;

    std::vector<const SampleRecord*> select(
        std::optional<Split> split, std::optional<Task> task,
        std::optional<Technique> technique = std::nullopt) const;
    long long count_graphs() const;  // distinct graph files
};

// Generated graph plus its identity inside a corpus.
struct CorpusGraph {
    std::string id;
    Graph graph;
    Split split = Split::Train;
};

struct CountingCorpusConfig {
    int n_min = 20;
    int n_max = 100;
    std::vector<double> densities{0.2, 0.4, 0.6};
    long long train_graphs = 0;
    long long validation_graphs = 0;
    long long test_graphs = 0;
    std::vector<Task> tasks{Task::T0, Task::T1, Task::T2};
    std::vector<Technique> techniques{Technique::NL, Technique::AM};
    std::uint64_t seed = 0;
};

struct CountingCorpus {
    Manifest manifest;
    std::vector<CorpusGraph> graphs;
    long long combinations = 0;  // feasible (n, d) combinations
    std::vector<std::string> warnings;
};

// Builds the counting-task corpus: per split, graph counts are spread over
// node sizes with deviation <= 1 (and over densities within each size), so
// the node-count ground truth stays uniform per split. Infeasible (n, d)
// combinations are excluded with a warning. Graph files are named but not
// written; path_prefix is prepended to graph/image paths in the manifest.
CountingCorpus build_counting_corpus(const CountingCorpusConfig& cfg,
                                     const std::string& graph_dir,
                                     const std::string& image_dir);

struct SplCorpusConfig {
    std::vector<int> lengths{2, 3, 4};
    long long max_pairs_per_cell = 1000000;  // upper bound on the balancing cap
    double train_ratio = 0.8;
    double validation_ratio = 0.1;
    double test_ratio = 0.1;
    bool stratified = true;
    std::vector<Technique> techniques{Technique::NL, Technique::AM};
    std::uint64_t seed = 0;
};

struct SplCorpus {
    Manifest manifest;
    long long cap = 0;  // pairs per (graph, length) actually used
    std::map<std::string, std::map<int, long long>> census;  // graph id -> length -> avail
};

// Builds the shortest-path-length corpus from the given graphs. The cap is
// min(config cap, smallest cell availability) so classes stay exactly
// balanced; a cell with zero available pairs aborts with a census report.
SplCorpus build_spl_corpus(const std::vector<CorpusGraph>& graphs,
                           const SplCorpusConfig& cfg, const std::string& graph_dir,
                           const std::string& image_dir);

struct DistributionAudit {
    std::map<long long, long long> class_counts;
    long long total = 0;
    long long max_abs_deviation = 0;  // from the rounded mean count
    bool uniform = false;
};

// Per-ground-truth counts for one (split, task), counting instances once
// (techniques mirror the same instances). uniform = deviation <= tolerance.
DistributionAudit audit_distribution(const Manifest& m, Split split, Task task,
                                     long long tolerance = 1);

// Stratified-by-ground-truth split assignment (largest remainder per class),
// falling back to plain seeded assignment when stratified=false. Ratios must
// sum to 1. Samples sharing an instance_id stay in the same split.
void assign_splits(Manifest& m, double train_ratio, double validation_ratio,
                   double test_ratio, std::uint64_t seed, bool stratified = true);

// Line-delimited JSON records, sorted by sample_id; schema violations are
// reported with their line number.
std::string format_manifest(const Manifest& m);
Manifest parse_manifest(const std::string& text, const std::string& origin);
void write_manifest(const Manifest& m, const std::string& path);
Manifest read_manifest(const std::string& path);

}  // namespace gvbench
