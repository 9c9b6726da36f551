// Per-checkpoint time series of a matching-under-noise run, plus the
// anonymization-time estimator.
//
// The estimator is an artifact construction: the first checkpoint at which
// the matcher's output shuffles more than n^beta non-seed vertices and keeps
// doing so for `persistence` consecutive checkpoints. Matcher noise causes
// transient dips, which the persistence window rides out.
#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace edgelighter {

struct TraceRecord {
    long long step = 0;
    double correctness = 1.0;
    double cover_rate = 0.0;
    std::vector<double> per_community;  // optional, one entry per community
    long long objective = 0;            // not serialized in trace CSVs
};

struct AnonymizationEstimate {
    double beta = 0.5;
    std::optional<long long> t_hat;
    int persistence = 3;
};

// `community` < 0 reads the overall correctness; otherwise per_community[k].
// n_total and n_free are the vertex and non-seed counts of the chosen scope.
inline AnonymizationEstimate detect_anonymization(const std::vector<TraceRecord>& trace,
                                                  int n_total, int n_free, double beta,
                                                  int persistence, int community = -1) {
    if (trace.empty()) throw std::invalid_argument("detect_anonymization: empty trace");
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("detect_anonymization: beta must lie in (0,1)");
    if (persistence < 1) throw std::invalid_argument("detect_anonymization: persistence >= 1");
    if (n_total < 1) throw std::invalid_argument("detect_anonymization: n_total >= 1");

    AnonymizationEstimate est;
    est.beta = beta;
    est.persistence = persistence;
    if (n_free <= 0) return est;  // nothing can be shuffled

    const double threshold = std::pow(static_cast<double>(n_total), beta);
    int run = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        double c = (community < 0) ? trace[i].correctness : trace[i].per_community.at(community);
        // Correctness values are ratios k/n_free; recover the integer count.
        long long shuffled = std::llround((1.0 - c) * static_cast<double>(n_free));
        if (static_cast<double>(shuffled) > threshold) {
            ++run;
            if (run >= persistence) {
                est.t_hat = trace[i + 1 - run].step;
                return est;
            }
        } else {
            run = 0;
        }
    }
    return est;
}

}  // namespace edgelighter
