#include "gvbench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace gvbench {

using nlohmann::json;

const char* technique_name(Technique t) {
    switch (t) {
        case Technique::NL: return "NL";
        case Technique::AM: return "AM";
    }
    throw Error("unknown technique");
}

Technique technique_from_name(const std::string& s) {
    if (s == "NL") return Technique::NL;
    if (s == "AM") return Technique::AM;
    throw Error(concat("unknown technique tag \"", s, "\""));
}

const char* split_name(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::Validation: return "validation";
        case Split::Test: return "test";
    }
    throw Error("unknown split");
}

Split split_from_name(const std::string& s) {
    if (s == "train") return Split::Train;
    if (s == "validation") return Split::Validation;
    if (s == "test") return Split::Test;
    throw Error(concat("unknown split tag \"", s, "\""));
}

std::string SampleRecord::instance_id() const {
    const std::string suffix = concat("_", technique_name(technique));
    if (sample_id.size() >= suffix.size() &&
        sample_id.compare(sample_id.size() - suffix.size(), suffix.size(), suffix) == 0)
        return sample_id.substr(0, sample_id.size() - suffix.size());
    return sample_id;
}

std::vector<const SampleRecord*> Manifest::select(std::optional<Split> split,
                                                  std::optional<Task> task,
                                                  std::optional<Technique> technique) const {
    std::vector<const SampleRecord*> out;
    for (const auto& s : samples) {
        if (split && s.split != *split) continue;
        if (task && s.task != *task) continue;
        if (technique && s.technique != *technique) continue;
        out.push_back(&s);
    }
    return out;
}

long long Manifest::count_graphs() const {
    std::unordered_set<std::string> files;
    for (const auto& s : samples) files.insert(s.graph_file);
    return (long long)files.size();
}

namespace {

std::string graph_id(long long index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "g%06lld", index);
    return buf;
}

std::string image_path(const std::string& image_dir, Split split, Technique tech,
                       const std::string& instance, Task task) {
    return concat(image_dir, "/", split_name(split), "/", technique_name(tech), "/",
                  instance, "_", task_name(task), ".pgm");
}

// Distributes `total` over `bins` with counts differing by at most one;
// which bins receive the remainder is a seeded draw.
std::vector<long long> spread_evenly(long long total, std::size_t bins, Rng& rng) {
    std::vector<long long> out(bins, bins ? total / (long long)bins : 0);
    if (bins == 0) return out;
    long long rem = total % (long long)bins;
    std::vector<std::size_t> idx(bins);
    for (std::size_t i = 0; i < bins; ++i) idx[i] = i;
    shuffle(idx, rng);
    for (long long i = 0; i < rem; ++i) ++out[idx[std::size_t(i)]];
    return out;
}

}  // namespace

CountingCorpus build_counting_corpus(const CountingCorpusConfig& cfg,
                                     const std::string& graph_dir,
                                     const std::string& image_dir) {
    if (cfg.n_min < 1 || cfg.n_max < cfg.n_min)
        throw Error("counting corpus: bad node-count range");
    if (cfg.densities.empty()) throw Error("counting corpus: no densities");
    if (cfg.tasks.empty()) throw Error("counting corpus: no tasks");
    if (cfg.techniques.empty()) throw Error("counting corpus: no techniques");
    for (Task t : cfg.tasks)
        if (t == Task::T3) throw Error("counting corpus: T3 belongs to the SPL corpus");

    CountingCorpus out;

    // feasible densities per node count
    std::vector<int> sizes;
    std::unordered_map<int, std::vector<double>> feasible;
    for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
        std::vector<double> ds;
        for (double d : cfg.densities) {
            const long long target = target_edge_count(n, d);
            if (target <= (long long)n * (n - 1) / 2) {
                ds.push_back(d);
            } else {
                out.warnings.push_back(
                    concat("infeasible combination excluded: n=", n, " d=", d,
                           " (target ", target, " edges > ", (long long)n * (n - 1) / 2, ")"));
            }
        }
        if (!ds.empty()) {
            sizes.push_back(n);
            feasible[n] = std::move(ds);
        } else {
            out.warnings.push_back(concat("node count ", n, " excluded entirely"));
        }
    }
    if (sizes.empty()) throw Error("counting corpus: no feasible (n, d) combinations");
    for (const auto& [n, ds] : feasible) out.combinations += (long long)ds.size();

    const Split splits[3] = {Split::Train, Split::Validation, Split::Test};
    const long long counts[3] = {cfg.train_graphs, cfg.validation_graphs, cfg.test_graphs};

    long long next_graph = 0;
    for (int si = 0; si < 3; ++si) {
        if (counts[si] <= 0) continue;
        Rng quota_rng(mix_seed(cfg.seed, 0x71756f7461ull, (std::uint64_t)si));  // "quota"
        const auto per_size = spread_evenly(counts[si], sizes.size(), quota_rng);
        for (std::size_t ni = 0; ni < sizes.size(); ++ni) {
            const int n = sizes[ni];
            const auto& ds = feasible[n];
            const auto per_density = spread_evenly(per_size[ni], ds.size(), quota_rng);
            for (std::size_t di = 0; di < ds.size(); ++di) {
                for (long long inst = 0; inst < per_density[di]; ++inst) {
                    const std::uint64_t gseed =
                        mix_seed(cfg.seed, 0x677261706873ull, (std::uint64_t)si,
                                 (std::uint64_t)n, (std::uint64_t)di, (std::uint64_t)inst);
                    CorpusGraph cg;
                    cg.id = graph_id(next_graph++);
                    cg.graph = generate_random_graph(n, ds[di], gseed);
                    cg.graph.name = cg.id;
                    cg.split = splits[si];
                    out.graphs.push_back(std::move(cg));
                }
            }
        }
    }

    for (const auto& cg : out.graphs) {
        for (Task task : cfg.tasks) {
            const long long gt = counting_ground_truth(cg.graph, task);
            for (Technique tech : cfg.techniques) {
                SampleRecord s;
                s.sample_id = concat(cg.id, "_", task_name(task), "_", technique_name(tech));
                s.graph_file = concat(graph_dir, "/", cg.id, ".edges");
                s.task = task;
                s.technique = tech;
                s.image_file = image_path(image_dir, cg.split, tech, cg.id, task);
                s.ground_truth = gt;
                s.split = cg.split;
                s.meta.n = cg.graph.node_count;
                s.meta.d = cg.graph.density_param;
                out.manifest.samples.push_back(std::move(s));
            }
        }
    }
    std::sort(out.manifest.samples.begin(), out.manifest.samples.end(),
              [](const SampleRecord& a, const SampleRecord& b) {
                  return a.sample_id < b.sample_id;
              });
    return out;
}

SplCorpus build_spl_corpus(const std::vector<CorpusGraph>& graphs,
                           const SplCorpusConfig& cfg, const std::string& graph_dir,
                           const std::string& image_dir) {
    if (graphs.empty()) throw Error("spl corpus: no graphs");
    if (cfg.lengths.empty()) throw Error("spl corpus: no lengths");
    if (cfg.max_pairs_per_cell < 1) throw Error("spl corpus: max_pairs_per_cell must be >= 1");

    SplCorpus out;
    const int max_len = *std::max_element(cfg.lengths.begin(), cfg.lengths.end());

    long long cap = cfg.max_pairs_per_cell;
    std::vector<std::string> empty_cells;
    for (const auto& cg : graphs) {
        const auto census = spl_census(cg.graph, max_len);
        for (int len : cfg.lengths) {
            const long long avail = census[std::size_t(len)];
            out.census[cg.id][len] = avail;
            if (avail == 0)
                empty_cells.push_back(concat(cg.id, " length ", len));
            else
                cap = std::min(cap, avail);
        }
    }
    if (!empty_cells.empty()) {
        std::ostringstream os;
        os << "spl corpus: no available pairs for some cells; census:";
        for (const auto& [gid, by_len] : out.census) {
            os << "\n  " << gid << ":";
            for (const auto& [len, avail] : by_len)
                os << " length " << len << "=" << avail;
        }
        throw Error(os.str());
    }
    out.cap = cap;

    Manifest& m = out.manifest;
    for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
        const auto& cg = graphs[gi];
        long long pair_index = 0;
        for (int len : cfg.lengths) {
            const auto pairs = enumerate_pairs_by_spl(
                cg.graph, len, cap,
                mix_seed(cfg.seed, 0x73706c70ull, (std::uint64_t)gi, (std::uint64_t)len));
            if ((long long)pairs.size() != cap)
                throw Error(concat("spl corpus: internal sampling shortfall on ", cg.id,
                                   " length ", len));
            for (const auto& pr : pairs) {
                char pbuf[32];
                std::snprintf(pbuf, sizeof(pbuf), "p%05lld", pair_index++);
                const std::string instance = concat(cg.id, "_", pbuf);
                for (Technique tech : cfg.techniques) {
                    SampleRecord s;
                    s.sample_id = concat(instance, "_T3_", technique_name(tech));
                    s.graph_file = concat(graph_dir, "/", cg.id, ".edges");
                    s.task = Task::T3;
                    s.technique = tech;
                    s.ground_truth = len;
                    s.split = Split::Train;  // assigned below
                    s.meta.n = cg.graph.node_count;
                    s.meta.d = edge_density(cg.graph);
                    s.meta.spl_length = len;
                    s.meta.highlight = pr;
                    m.samples.push_back(std::move(s));
                }
            }
        }
    }

    assign_splits(m, cfg.train_ratio, cfg.validation_ratio, cfg.test_ratio,
                  mix_seed(cfg.seed, 0x73706c6974ull), cfg.stratified);

    // image paths depend on the split, so they are filled in afterwards
    for (auto& s : m.samples) {
        const std::string instance = s.instance_id();
        std::string base = instance.substr(0, instance.size() - 3);  // drop "_T3"
        s.image_file = image_path(image_dir, s.split, s.technique, base, Task::T3);
    }

    std::sort(m.samples.begin(), m.samples.end(),
              [](const SampleRecord& a, const SampleRecord& b) {
                  return a.sample_id < b.sample_id;
              });
    return out;
}

DistributionAudit audit_distribution(const Manifest& m, Split split, Task task,
                                     long long tolerance) {
    DistributionAudit audit;
    std::unordered_set<std::string> seen;
    for (const auto& s : m.samples) {
        if (s.split != split || s.task != task) continue;
        if (!seen.insert(s.instance_id()).second) continue;  // one count per instance
        ++audit.class_counts[s.ground_truth];
        ++audit.total;
    }
    if (audit.class_counts.empty())
        throw Error(concat("audit_distribution: no samples for split=", split_name(split),
                           " task=", task_name(task)));
    const double mean = double(audit.total) / double(audit.class_counts.size());
    const long long rounded = round_half_away(mean);
    for (const auto& [cls, count] : audit.class_counts)
        audit.max_abs_deviation =
            std::max(audit.max_abs_deviation, std::llabs(count - rounded));
    audit.uniform = audit.max_abs_deviation <= tolerance;
    return audit;
}

void assign_splits(Manifest& m, double train_ratio, double validation_ratio,
                   double test_ratio, std::uint64_t seed, bool stratified) {
    const double sum = train_ratio + validation_ratio + test_ratio;
    if (std::fabs(sum - 1.0) > 1e-9)
        throw Error(concat("assign_splits: ratios must sum to 1, got ", sum));
    if (train_ratio < 0 || validation_ratio < 0 || test_ratio < 0)
        throw Error("assign_splits: negative ratio");

    // group samples by instance so techniques stay together
    std::map<std::string, std::vector<std::size_t>> instances;
    std::map<std::string, long long> instance_gt;
    for (std::size_t i = 0; i < m.samples.size(); ++i) {
        const std::string id = m.samples[i].instance_id();
        instances[id].push_back(i);
        instance_gt[id] = m.samples[i].ground_truth;
    }

    // class -> instance ids (single pseudo-class when not stratified)
    std::map<long long, std::vector<std::string>> by_class;
    for (const auto& [id, idx] : instances)
        by_class[stratified ? instance_gt[id] : 0].push_back(id);

    Rng rng(mix_seed(seed, 0x73747261ull));
    for (auto& [cls, ids] : by_class) {
        shuffle(ids, rng);
        const long long c = (long long)ids.size();
        const double want[3] = {train_ratio * double(c), validation_ratio * double(c),
                                test_ratio * double(c)};
        long long quota[3];
        double frac[3];
        long long used = 0;
        for (int s = 0; s < 3; ++s) {
            quota[s] = (long long)std::floor(want[s] + 1e-9);
            frac[s] = want[s] - double(quota[s]);
            used += quota[s];
        }
        // remainder to the largest fractional parts; ties favor train, then validation
        std::vector<int> order{0, 1, 2};
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return frac[a] > frac[b]; });
        for (long long r = 0; r < c - used; ++r) ++quota[order[std::size_t(r % 3)]];

        std::size_t pos = 0;
        const Split split_of[3] = {Split::Train, Split::Validation, Split::Test};
        for (int s = 0; s < 3; ++s)
            for (long long k = 0; k < quota[s]; ++k, ++pos)
                for (std::size_t i : instances[ids[pos]])
                    m.samples[i].split = split_of[s];
    }
}

// ---------------------------------------------------------------------------
// Manifest serialization (JSON lines)
// ---------------------------------------------------------------------------

namespace {

json sample_to_json(const SampleRecord& s) {
    json meta;
    meta["n"] = s.meta.n;
    meta["d"] = s.meta.d;
    if (s.meta.spl_length) meta["spl_length"] = *s.meta.spl_length;
    if (s.meta.highlight)
        meta["pair"] = json::array({s.meta.highlight->first, s.meta.highlight->second});
    json j;
    j["sample_id"] = s.sample_id;
    j["graph_file"] = s.graph_file;
    j["task"] = task_name(s.task);
    j["technique"] = technique_name(s.technique);
    j["image_file"] = s.image_file;
    j["ground_truth"] = s.ground_truth;
    j["split"] = split_name(s.split);
    j["meta"] = std::move(meta);
    return j;
}

void require_keys(const json& j, const std::set<std::string>& required,
                  const std::set<std::string>& optional, const std::string& where) {
    for (const auto& key : required)
        if (!j.contains(key)) throw Error(concat(where, ": missing key \"", key, "\""));
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!required.count(it.key()) && !optional.count(it.key()))
            throw Error(concat(where, ": unknown key \"", it.key(), "\""));
}

SampleRecord sample_from_json(const json& j, const std::string& where) {
    require_keys(j,
                 {"sample_id", "graph_file", "task", "technique", "image_file",
                  "ground_truth", "split", "meta"},
                 {}, where);
    SampleRecord s;
    try {
        s.sample_id = j.at("sample_id").get<std::string>();
        s.graph_file = j.at("graph_file").get<std::string>();
        s.task = task_from_name(j.at("task").get<std::string>());
        s.technique = technique_from_name(j.at("technique").get<std::string>());
        s.image_file = j.at("image_file").get<std::string>();
        s.ground_truth = j.at("ground_truth").get<long long>();
        s.split = split_from_name(j.at("split").get<std::string>());
        const json& meta = j.at("meta");
        require_keys(meta, {"n", "d"}, {"spl_length", "pair"}, where);
        s.meta.n = meta.at("n").get<int>();
        s.meta.d = meta.at("d").get<double>();
        if (meta.contains("spl_length")) s.meta.spl_length = meta.at("spl_length").get<int>();
        if (meta.contains("pair")) {
            const auto& p = meta.at("pair");
            if (!p.is_array() || p.size() != 2)
                throw Error(concat(where, ": meta.pair must be [u, v]"));
            s.meta.highlight = std::make_pair(p[0].get<int>(), p[1].get<int>());
        }
    } catch (const json::exception& e) {
        throw Error(concat(where, ": ", e.what()));
    }
    if (s.ground_truth < 0) throw Error(concat(where, ": negative ground_truth"));
    if (s.task == Task::T3 && !s.meta.highlight)
        throw Error(concat(where, ": T3 sample without a highlighted pair"));
    if (s.task != Task::T3 && s.meta.highlight)
        throw Error(concat(where, ": non-T3 sample with a highlighted pair"));
    return s;
}

}  // namespace

std::string format_manifest(const Manifest& m) {
    auto sorted = m.samples;
    std::sort(sorted.begin(), sorted.end(),
              [](const SampleRecord& a, const SampleRecord& b) {
                  return a.sample_id < b.sample_id;
              });
    std::ostringstream os;
    for (const auto& s : sorted) os << sample_to_json(s).dump() << '\n';
    return os.str();
}

Manifest parse_manifest(const std::string& text, const std::string& origin) {
    Manifest m;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::unordered_set<std::string> ids;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::string where = concat(origin, ":", line_no);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error(concat(where, ": invalid JSON: ", e.what()));
        }
        SampleRecord s = sample_from_json(j, where);
        if (!ids.insert(s.sample_id).second)
            throw Error(concat(where, ": duplicate sample_id \"", s.sample_id, "\""));
        m.samples.push_back(std::move(s));
    }
    return m;
}

void write_manifest(const Manifest& m, const std::string& path) {
    write_text_file(path, format_manifest(m));
}

Manifest read_manifest(const std::string& path) {
    return parse_manifest(read_text_file(path), path);
}

}  // namespace gvbench
