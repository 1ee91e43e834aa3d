#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gvbench/common.hpp"
#include "gvbench/stats.hpp"

namespace gvbench {

// ---------------------------------------------------------------------------
// Selection metrics. y = ground truths, yh = predictions.
// ---------------------------------------------------------------------------

double mse(const std::vector<double>& y, const std::vector<double>& yh);
double accuracy(const std::vector<double>& y, const std::vector<double>& yh);

// Fraction of predictions within the closed interval [0.9*y, 1.1*y]. The
// bounds are evaluated as 9*y <= 10*yh <= 11*y so that exact decimal
// boundaries (integer inputs) land inside the interval.
double percent10(const std::vector<double>& y, const std::vector<double>& yh);

// Fraction of predictions within +/-10 units of the ground truth (closed).
double delta10(const std::vector<double>& y, const std::vector<double>& yh);

// Coefficient of determination. Requires length >= 2 and nonzero variance
// of y (throws Error otherwise). May be negative.
double r2(const std::vector<double>& y, const std::vector<double>& yh);

// The learning-feasibility gate: strictly above 0.3.
inline bool learned(double r2_score) { return r2_score > 0.3; }

// C[i][j] = count of (truth i, predicted j); classes x classes.
std::vector<std::vector<long long>> confusion_matrix(const std::vector<long long>& y,
                                                     const std::vector<long long>& yh,
                                                     int classes);

struct MccResult {
    double value = 0.0;
    bool degenerate = false;  // zero denominator, value defined as 0
};

// Multiclass Matthews correlation coefficient via the generalized covariance
// form, computed from sparse class tallies.
MccResult mcc(const std::vector<long long>& y, const std::vector<long long>& yh,
              int classes);

enum class Metric { MSE, Accuracy, Percent10, Delta10 };

const char* metric_name(Metric m);
Metric metric_from_name(const std::string& s);
// true when smaller scores are better (MSE), false otherwise
bool metric_minimizes(Metric m);

double score_metric(Metric m, const std::vector<double>& y,
                    const std::vector<double>& yh);

// argbest over epochs (min for MSE, max otherwise); ties resolved to the
// earliest epoch, independent of input order.
int select_best_epoch(const std::map<int, double>& score_by_epoch, Metric m);

// ---------------------------------------------------------------------------
// Prediction sets and technique comparison.
// ---------------------------------------------------------------------------

struct PredictionEntry {
    std::string sample_id;  // instance id, technique-independent
    long long ground_truth = 0;
    long long prediction = 0;
};

struct Provenance {
    std::string task;
    std::string technique;
    std::string architecture;
    int epoch = -1;
};

struct PredictionSet {
    std::vector<PredictionEntry> entries;
    Provenance provenance;
};

std::vector<double> ground_truths(const PredictionSet& ps);
std::vector<double> predictions(const PredictionSet& ps);

enum class Winner { A, B, None };

struct ComparisonResult {
    double mean_abs_diff_a = 0.0;
    double mean_abs_diff_b = 0.0;
    double p_value = 1.0;
    Winner winner = Winner::None;
    bool degenerate = false;
    WilcoxonResult test;
};

// Paired comparison of per-sample absolute errors |prediction - truth|,
// matched by sample_id. Winner is the side with the strictly lower mean
// absolute error, declared only when p < alpha. Set paired=false for the
// rank-sum variant.
ComparisonResult compare_techniques(const PredictionSet& a, const PredictionSet& b,
                                    double alpha = 0.05, bool paired = true);

struct GroupBucket {
    std::string label;
    long long count = 0;
    std::map<std::string, double> metric_values;  // metric name -> value
};

enum class Grouping { NodeRange, Density };

// Per-bucket metric table; node ranges are decades of width 10, densities
// are the distinct density values. Empty buckets are absent.
std::vector<GroupBucket> group_performance(
    const PredictionSet& preds,
    const std::vector<int>& node_counts,     // per entry, aligned with preds
    const std::vector<double>& densities,    // per entry, aligned with preds
    Grouping grouping, const std::vector<Metric>& metrics);

}  // namespace gvbench
