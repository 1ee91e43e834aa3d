#pragma once

#include <cstddef>
#include <vector>

#include "gvbench/common.hpp"

namespace gvbench {

// ---------------------------------------------------------------------------
// Special functions.
//
// Regularized incomplete gamma P(a,x)/Q(a,x) via the standard power series
// (x < a+1) and Lentz continued fraction (x >= a+1), iterated to ~1e-15
// relative term size; erfc and the normal/chi-square tails are derived from
// it. Accuracy is checked against high-precision reference values in the
// test suite (target 1e-10).
// ---------------------------------------------------------------------------

double gamma_p(double a, double x);  // P(a,x), lower regularized
double gamma_q(double a, double x);  // Q(a,x) = 1 - P(a,x), upper regularized
double erfc_approx(double x);
double normal_cdf(double z);
// Two-sided tail of the standard normal: P(|Z| >= |z|).
double normal_two_sided_p(double z);
// Upper tail of the chi-square distribution with k degrees of freedom.
double chi_square_upper_tail(double x, int dof);

// ---------------------------------------------------------------------------
// Nonparametric tests.
// ---------------------------------------------------------------------------

struct WilcoxonResult {
    double statistic = 0.0;   // W+ (sum of ranks of positive differences)
    double p_value = 1.0;     // two-sided
    int n_effective = 0;      // pairs remaining after dropping zero differences
    bool degenerate = false;  // all differences were zero
    bool exact = false;       // p computed by exact enumeration
};

// Paired two-sided Wilcoxon signed-rank test. Zero differences are dropped,
// tied absolute differences get averaged ranks. Exact p by full enumeration
// of sign assignments (subset-sum counting) when n_effective <= exact_limit,
// otherwise a normal approximation with tie-corrected variance and
// continuity correction.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                    const std::vector<double>& b,
                                    int exact_limit = 20);

struct RankSumResult {
    double u_statistic = 0.0;
    double p_value = 1.0;
};

// Unpaired two-sided Wilcoxon rank-sum (Mann-Whitney U), normal approximation
// with tie correction. Exposed as the alternative comparison policy.
RankSumResult wilcoxon_rank_sum(const std::vector<double>& a,
                                const std::vector<double>& b);

struct KruskalWallisResult {
    double h_statistic = 0.0;
    double p_value = 1.0;
};

// Kruskal-Wallis rank test with tie correction; p from the chi-square upper
// tail with (groups - 1) degrees of freedom.
KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

// Average ranks (1-based) with ties averaged; helper shared by the tests.
std::vector<double> average_ranks(const std::vector<double>& values);

}  // namespace gvbench
