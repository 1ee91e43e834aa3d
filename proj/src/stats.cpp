#include "gvbench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gvbench {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-16;

// Series expansion for P(a,x), valid/fast for x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a,x), valid/fast for x >= a+1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0) throw Error("gamma_p: a must be > 0");
    if (x < 0.0) throw Error("gamma_p: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (a <= 0.0) throw Error("gamma_q: a must be > 0");
    if (x < 0.0) throw Error("gamma_q: x must be >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double erfc_approx(double x) {
    if (x < 0.0) return 2.0 - erfc_approx(-x);
    if (x == 0.0) return 1.0;
    return gamma_q(0.5, x * x);
}

double normal_cdf(double z) { return 0.5 * erfc_approx(-z / std::sqrt(2.0)); }

double normal_two_sided_p(double z) {
    double p = erfc_approx(std::fabs(z) / std::sqrt(2.0));
    return std::min(1.0, p);
}

double chi_square_upper_tail(double x, int dof) {
    if (dof < 1) throw Error("chi_square_upper_tail: dof must be >= 1");
    if (x <= 0.0) return 1.0;
    return gamma_q(double(dof) / 2.0, x / 2.0);
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i..j share the average of ranks i+1..j+1
        double avg = (double(i + 1) + double(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a,
                                    const std::vector<double>& b,
                                    int exact_limit) {
    if (a.size() != b.size())
        throw Error(concat("wilcoxon_signed_rank: length mismatch (", a.size(),
                           " vs ", b.size(), ")"));
    if (a.empty()) throw Error("wilcoxon_signed_rank: empty input");

    std::vector<double> abs_d;
    std::vector<int> sign;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        if (d == 0.0) continue;
        abs_d.push_back(std::fabs(d));
        sign.push_back(d > 0.0 ? 1 : -1);
    }
    WilcoxonResult res;
    res.n_effective = int(abs_d.size());
    if (abs_d.empty()) {
        res.degenerate = true;
        res.p_value = 1.0;
        return res;
    }

    const auto ranks = average_ranks(abs_d);
    double w_plus = 0.0;
    for (std::size_t i = 0; i < ranks.size(); ++i)
        if (sign[i] > 0) w_plus += ranks[i];
    res.statistic = w_plus;

    const int n = res.n_effective;
    const double total = double(n) * double(n + 1) / 2.0;
    const double mu = total / 2.0;

    if (n <= exact_limit) {
        // Under H0 each rank carries an independent +/- sign, so W+ is a
        // subset sum of the ranks. Ranks are multiples of 1/2; double them
        // and count achievable sums exactly.
        std::vector<long long> r2(ranks.size());
        long long s2 = 0;
        for (std::size_t i = 0; i < ranks.size(); ++i) {
            r2[i] = llround(ranks[i] * 2.0);
            s2 += r2[i];
        }
        std::vector<double> count(std::size_t(s2) + 1, 0.0);
        count[0] = 1.0;
        long long reached = 0;
        for (long long r : r2) {
            for (long long s = reached; s >= 0; --s)
                if (count[std::size_t(s)] > 0.0)
                    count[std::size_t(s + r)] += count[std::size_t(s)];
            reached += r;
        }
        const double w2 = w_plus * 2.0;
        const double mu2 = double(s2) / 2.0;
        const double dev = std::fabs(w2 - mu2);
        double tail = 0.0;
        for (long long s = 0; s <= s2; ++s)
            if (std::fabs(double(s) - mu2) >= dev - 1e-9) tail += count[std::size_t(s)];
        res.p_value = std::min(1.0, tail / std::pow(2.0, double(n)));
        res.exact = true;
        return res;
    }

    // Normal approximation, tie-corrected variance, continuity correction.
    double tie_term = 0.0;
    {
        auto sorted = abs_d;
        std::sort(sorted.begin(), sorted.end());
        std::size_t i = 0;
        while (i < sorted.size()) {
            std::size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            double t = double(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    const double var =
        double(n) * double(n + 1) * double(2 * n + 1) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) {
        res.degenerate = true;
        res.p_value = 1.0;
        return res;
    }
    double num = w_plus - mu;
    if (num > 0.0) num -= 0.5;
    else if (num < 0.0) num += 0.5;
    const double z = num / std::sqrt(var);
    res.p_value = normal_two_sided_p(z);
    return res;
}

RankSumResult wilcoxon_rank_sum(const std::vector<double>& a,
                                const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw Error("wilcoxon_rank_sum: empty group");
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = average_ranks(pooled);
    const double n1 = double(a.size()), n2 = double(b.size());
    double r1 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) r1 += ranks[i];
    const double u1 = r1 - n1 * (n1 + 1.0) / 2.0;
    const double mu = n1 * n2 / 2.0;
    const double n = n1 + n2;

    double tie_term = 0.0;
    {
        auto sorted = pooled;
        std::sort(sorted.begin(), sorted.end());
        std::size_t i = 0;
        while (i < sorted.size()) {
            std::size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            double t = double(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    RankSumResult res;
    res.u_statistic = u1;
    if (var <= 0.0) {
        res.p_value = 1.0;
        return res;
    }
    double num = u1 - mu;
    if (num > 0.0) num -= 0.5;
    else if (num < 0.0) num += 0.5;
    res.p_value = normal_two_sided_p(num / std::sqrt(var));
    return res;
}

KruskalWallisResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw Error("kruskal_wallis: need at least 2 groups");
    for (const auto& gr : groups)
        if (gr.empty()) throw Error("kruskal_wallis: empty group");

    std::vector<double> pooled;
    for (const auto& gr : groups) pooled.insert(pooled.end(), gr.begin(), gr.end());
    const auto ranks = average_ranks(pooled);
    const double n = double(pooled.size());

    double h = 0.0;
    std::size_t offset = 0;
    for (const auto& gr : groups) {
        double rsum = 0.0;
        for (std::size_t i = 0; i < gr.size(); ++i) rsum += ranks[offset + i];
        h += rsum * rsum / double(gr.size());
        offset += gr.size();
    }
    h = 12.0 / (n * (n + 1.0)) * h - 3.0 * (n + 1.0);

    double tie_term = 0.0;
    {
        auto sorted = pooled;
        std::sort(sorted.begin(), sorted.end());
        std::size_t i = 0;
        while (i < sorted.size()) {
            std::size_t j = i;
            while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
            double t = double(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    const double correction = 1.0 - tie_term / (n * n * n - n);
    KruskalWallisResult res;
    if (correction <= 0.0) {
        // every pooled value identical
        res.h_statistic = 0.0;
        res.p_value = 1.0;
        return res;
    }
    res.h_statistic = h / correction;
    if (res.h_statistic <= 0.0) {
        res.h_statistic = std::max(0.0, res.h_statistic);
        res.p_value = 1.0;
        return res;
    }
    res.p_value = chi_square_upper_tail(res.h_statistic, int(groups.size()) - 1);
    return res;
}

}  // namespace gvbench
