#include "gvbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace gvbench {

namespace {

void check_lengths(const std::vector<double>& y, const std::vector<double>& yh,
                   const char* op) {
    if (y.size() != yh.size())
        throw Error(concat(op, ": length mismatch (", y.size(), " vs ", yh.size(), ")"));
    if (y.empty()) throw Error(concat(op, ": empty input"));
}

}  // namespace

double mse(const std::vector<double>& y, const std::vector<double>& yh) {
    check_lengths(y, yh, "mse");
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double d = y[i] - yh[i];
        sum += d * d;
    }
    return sum / double(y.size());
}

double accuracy(const std::vector<double>& y, const std::vector<double>& yh) {
    check_lengths(y, yh, "accuracy");
    long long hits = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] == yh[i]) ++hits;
    return double(hits) / double(y.size());
}

double percent10(const std::vector<double>& y, const std::vector<double>& yh) {
    check_lengths(y, yh, "percent10");
    long long hits = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (9.0 * y[i] <= 10.0 * yh[i] && 10.0 * yh[i] <= 11.0 * y[i]) ++hits;
    }
    return double(hits) / double(y.size());
}

double delta10(const std::vector<double>& y, const std::vector<double>& yh) {
    check_lengths(y, yh, "delta10");
    long long hits = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (std::fabs(yh[i] - y[i]) <= 10.0) ++hits;
    return double(hits) / double(y.size());
}

double r2(const std::vector<double>& y, const std::vector<double>& yh) {
    check_lengths(y, yh, "r2");
    if (y.size() < 2) throw Error("r2: need at least 2 samples");
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= double(y.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double r = y[i] - yh[i];
        double t = y[i] - mean;
        ss_res += r * r;
        ss_tot += t * t;
    }
    if (ss_tot == 0.0) throw Error("r2: zero-variance ground truths, undefined");
    return 1.0 - ss_res / ss_tot;
}

std::vector<std::vector<long long>> confusion_matrix(const std::vector<long long>& y,
                                                     const std::vector<long long>& yh,
                                                     int classes) {
    if (y.size() != yh.size()) throw Error("confusion_matrix: length mismatch");
    if (classes < 1) throw Error("confusion_matrix: classes must be >= 1");
    std::vector<std::vector<long long>> c(std::size_t(classes),
                                          std::vector<long long>(std::size_t(classes), 0));
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] < 0 || y[i] >= classes || yh[i] < 0 || yh[i] >= classes)
            throw Error(concat("confusion_matrix: class out of range at index ", i));
        ++c[std::size_t(y[i])][std::size_t(yh[i])];
    }
    return c;
}

MccResult mcc(const std::vector<long long>& y, const std::vector<long long>& yh,
              int classes) {
    if (y.size() != yh.size()) throw Error("mcc: length mismatch");
    if (y.empty()) throw Error("mcc: empty input");
    // Sparse marginals; MCC = (N*c - sum_k t_k p_k) /
    //   sqrt(N^2 - sum p_k^2) / sqrt(N^2 - sum t_k^2)
    std::unordered_map<long long, long long> truth_count, pred_count;
    long long correct = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] < 0 || y[i] >= classes || yh[i] < 0 || yh[i] >= classes)
            throw Error(concat("mcc: class out of range at index ", i));
        ++truth_count[y[i]];
        ++pred_count[yh[i]];
        if (y[i] == yh[i]) ++correct;
    }
    const double n = double(y.size());
    double sum_tp = 0.0, sum_t2 = 0.0, sum_p2 = 0.0;
    for (const auto& [k, t] : truth_count) {
        sum_t2 += double(t) * double(t);
        auto it = pred_count.find(k);
        if (it != pred_count.end()) sum_tp += double(t) * double(it->second);
    }
    for (const auto& [k, p] : pred_count) sum_p2 += double(p) * double(p);

    const double numerator = n * double(correct) - sum_tp;
    const double denom_t = n * n - sum_t2;
    const double denom_p = n * n - sum_p2;
    MccResult res;
    if (denom_t <= 0.0 || denom_p <= 0.0) {
        res.value = 0.0;
        res.degenerate = true;
        return res;
    }
    res.value = numerator / (std::sqrt(denom_p) * std::sqrt(denom_t));
    return res;
}

const char* metric_name(Metric m) {
    switch (m) {
        case Metric::MSE: return "mse";
        case Metric::Accuracy: return "accuracy";
        case Metric::Percent10: return "percent10";
        case Metric::Delta10: return "delta10";
    }
    throw Error("unknown metric");
}

Metric metric_from_name(const std::string& s) {
    if (s == "mse") return Metric::MSE;
    if (s == "accuracy") return Metric::Accuracy;
    if (s == "percent10") return Metric::Percent10;
    if (s == "delta10") return Metric::Delta10;
    throw Error(concat("unknown metric \"", s, "\""));
}

bool metric_minimizes(Metric m) { return m == Metric::MSE; }

double score_metric(Metric m, const std::vector<double>& y,
                    const std::vector<double>& yh) {
    switch (m) {
        case Metric::MSE: return mse(y, yh);
        case Metric::Accuracy: return accuracy(y, yh);
        case Metric::Percent10: return percent10(y, yh);
        case Metric::Delta10: return delta10(y, yh);
    }
    throw Error("unknown metric");
}

int select_best_epoch(const std::map<int, double>& score_by_epoch, Metric m) {
    if (score_by_epoch.empty()) throw Error("select_best_epoch: no epochs");
    const bool minimize = metric_minimizes(m);
    int best_epoch = score_by_epoch.begin()->first;
    double best = score_by_epoch.begin()->second;
    for (const auto& [epoch, score] : score_by_epoch) {
        bool better = minimize ? score < best : score > best;
        if (better) {
            best = score;
            best_epoch = epoch;
        }
    }
    return best_epoch;
}

std::vector<double> ground_truths(const PredictionSet& ps) {
    std::vector<double> v;
    v.reserve(ps.entries.size());
    for (const auto& e : ps.entries) v.push_back(double(e.ground_truth));
    return v;
}

std::vector<double> predictions(const PredictionSet& ps) {
    std::vector<double> v;
    v.reserve(ps.entries.size());
    for (const auto& e : ps.entries) v.push_back(double(e.prediction));
    return v;
}

ComparisonResult compare_techniques(const PredictionSet& a, const PredictionSet& b,
                                    double alpha, bool paired) {
    if (a.entries.empty() || b.entries.empty())
        throw Error("compare_techniques: empty prediction set");
    std::unordered_map<std::string, const PredictionEntry*> b_by_id;
    b_by_id.reserve(b.entries.size());
    for (const auto& e : b.entries) {
        if (!b_by_id.emplace(e.sample_id, &e).second)
            throw Error(concat("compare_techniques: duplicate sample_id \"",
                               e.sample_id, "\" in B"));
    }
    if (a.entries.size() != b.entries.size())
        throw Error(concat("compare_techniques: sample_id sets differ (",
                           a.entries.size(), " vs ", b.entries.size(), ")"));
    std::vector<double> err_a, err_b;
    err_a.reserve(a.entries.size());
    err_b.reserve(a.entries.size());
    for (const auto& e : a.entries) {
        auto it = b_by_id.find(e.sample_id);
        if (it == b_by_id.end())
            throw Error(concat("compare_techniques: sample_id \"", e.sample_id,
                               "\" missing from B"));
        err_a.push_back(std::fabs(double(e.prediction) - double(e.ground_truth)));
        err_b.push_back(
            std::fabs(double(it->second->prediction) - double(it->second->ground_truth)));
    }

    ComparisonResult res;
    double sa = 0.0, sb = 0.0;
    for (double v : err_a) sa += v;
    for (double v : err_b) sb += v;
    res.mean_abs_diff_a = sa / double(err_a.size());
    res.mean_abs_diff_b = sb / double(err_b.size());

    if (paired) {
        res.test = wilcoxon_signed_rank(err_a, err_b);
        res.p_value = res.test.p_value;
        res.degenerate = res.test.degenerate;
    } else {
        auto rs = wilcoxon_rank_sum(err_a, err_b);
        res.p_value = rs.p_value;
    }

    if (!res.degenerate && res.p_value < alpha) {
        if (res.mean_abs_diff_a < res.mean_abs_diff_b) res.winner = Winner::A;
        else if (res.mean_abs_diff_b < res.mean_abs_diff_a) res.winner = Winner::B;
    }
    return res;
}

std::vector<GroupBucket> group_performance(const PredictionSet& preds,
                                           const std::vector<int>& node_counts,
                                           const std::vector<double>& densities,
                                           Grouping grouping,
                                           const std::vector<Metric>& metrics) {
    const std::size_t n = preds.entries.size();
    if (node_counts.size() != n || densities.size() != n)
        throw Error("group_performance: metadata not aligned with predictions");
    std::map<std::string, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < n; ++i) {
        std::string key;
        if (grouping == Grouping::NodeRange) {
            int lo = (node_counts[i] / 10) * 10;
            char buf[32];
            std::snprintf(buf, sizeof(buf), "n%03d-%03d", lo, lo + 9);
            key = buf;
        } else {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "d%.2f", densities[i]);
            key = buf;
        }
        buckets[key].push_back(i);
    }
    std::vector<GroupBucket> out;
    for (const auto& [label, idx] : buckets) {
        GroupBucket b;
        b.label = label;
        b.count = (long long)idx.size();
        std::vector<double> y, yh;
        y.reserve(idx.size());
        yh.reserve(idx.size());
        for (std::size_t i : idx) {
            y.push_back(double(preds.entries[i].ground_truth));
            yh.push_back(double(preds.entries[i].prediction));
        }
        for (Metric m : metrics) b.metric_values[metric_name(m)] = score_metric(m, y, yh);
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace gvbench
