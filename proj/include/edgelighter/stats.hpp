// Small statistics helpers shared by tests, estimators and experiment checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

namespace edgelighter {

inline double mean(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty sample");
    double s = 0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("sample_variance: need >= 2 points");
    double m = mean(xs), s = 0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

inline double standard_error(const std::vector<double>& xs) {
    return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

inline double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median: empty sample");
    std::sort(xs.begin(), xs.end());
    std::size_t m = xs.size() / 2;
    return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

// Empirical quantiles by linear interpolation of the order statistics.
inline std::map<double, double> quantiles(std::vector<double> xs,
                                          const std::vector<double>& probs) {
    if (xs.empty()) throw std::invalid_argument("quantiles: empty sample");
    std::sort(xs.begin(), xs.end());
    std::map<double, double> out;
    for (double p : probs) {
        double h = p * static_cast<double>(xs.size() - 1);
        std::size_t lo = static_cast<std::size_t>(std::floor(h));
        std::size_t hi = std::min(lo + 1, xs.size() - 1);
        out[p] = xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
    }
    return out;
}

// Chi-square upper critical value via the Wilson-Hilferty approximation.
inline double chi_square_critical(int df, double z_upper) {
    double d = static_cast<double>(df);
    double c = 1.0 - 2.0 / (9.0 * d) + z_upper * std::sqrt(2.0 / (9.0 * d));
    return d * c * c * c;
}

struct RankSumResult {
    double z = 0.0;        // normal-approximation statistic, tie-corrected
    double u = 0.0;        // Mann-Whitney U for the first sample
};

// Two-sample Mann-Whitney rank test (normal approximation with tie
// correction). |z| below the two-sided critical value means the samples are
// statistically indistinguishable at that level.
inline RankSumResult rank_sum_test(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n1 = a.size(), n2 = b.size();
    if (n1 < 8 || n2 < 8)
        throw std::invalid_argument("rank_sum_test: samples too small for normal approximation");
    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(n1 + n2);
    for (double x : a) pooled.push_back({x, 0});
    for (double x : b) pooled.push_back({x, 1});
    std::sort(pooled.begin(), pooled.end());
    const double total = static_cast<double>(n1 + n2);
    double rank_sum_a = 0.0, tie_term = 0.0;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
        double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        double ties = static_cast<double>(j - i);
        tie_term += ties * (ties * ties - 1.0);
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second == 0) rank_sum_a += avg_rank;
        i = j;
    }
    RankSumResult r;
    r.u = rank_sum_a - static_cast<double>(n1) * (n1 + 1) / 2.0;
    double mu = static_cast<double>(n1) * static_cast<double>(n2) / 2.0;
    double var = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                 (total + 1.0 - tie_term / (total * (total - 1.0)));
    if (var <= 0.0) throw std::domain_error("rank_sum_test: all observations tied");
    r.z = (r.u - mu) / std::sqrt(var);
    return r;
}

}  // namespace edgelighter
