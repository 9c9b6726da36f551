// Community partitions and block-model parameters.
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace edgelighter {

class Partition {
public:
    // labels[v] in [0, K); K inferred as max label + 1 unless given.
    explicit Partition(std::vector<int> labels, int k = -1) : labels_(std::move(labels)) {
        if (labels_.empty()) throw std::invalid_argument("Partition: empty label vector");
        int max_label = 0;
        for (int l : labels_) {
            if (l < 0) throw std::invalid_argument("Partition: negative community label");
            if (l > max_label) max_label = l;
        }
        k_ = (k < 0) ? max_label + 1 : k;
        if (k_ <= max_label) throw std::invalid_argument("Partition: label exceeds community count");
        sizes_.assign(k_, 0);
        members_.assign(k_, {});
        for (int v = 0; v < static_cast<int>(labels_.size()); ++v) {
            ++sizes_[labels_[v]];
            members_[labels_[v]].push_back(v);
        }
    }

    // Contiguous blocks of the given sizes: vertices 0..s0-1 get label 0, etc.
    static Partition contiguous(const std::vector<int>& sizes) {
        std::vector<int> labels;
        for (int k = 0; k < static_cast<int>(sizes.size()); ++k) {
            if (sizes[k] <= 0) throw std::invalid_argument("Partition: nonpositive block size");
            labels.insert(labels.end(), sizes[k], k);
        }
        return Partition(std::move(labels), static_cast<int>(sizes.size()));
    }

    int n() const { return static_cast<int>(labels_.size()); }
    int communities() const { return k_; }
    int label(int v) const { return labels_[v]; }
    int size_of(int k) const { return sizes_[k]; }
    const std::vector<int>& sizes() const { return sizes_; }
    const std::vector<int>& members(int k) const { return members_[k]; }
    const std::vector<int>& labels() const { return labels_; }

private:
    std::vector<int> labels_;
    std::vector<int> sizes_;
    std::vector<std::vector<int>> members_;
    int k_;
};

struct SbmParams {
    std::vector<int> sizes;                   // community sizes, all positive
    std::vector<std::vector<double>> lambda;  // symmetric KxK, entries in [0,1]

    int n() const {
        int total = 0;
        for (int s : sizes) total += s;
        return total;
    }

    void validate() const {
        const std::size_t k = sizes.size();
        if (k == 0) throw std::invalid_argument("SbmParams: no communities");
        for (int s : sizes)
            if (s <= 0) throw std::invalid_argument("SbmParams: community sizes must be positive");
        if (lambda.size() != k) throw std::invalid_argument("SbmParams: lambda must be KxK");
        for (std::size_t i = 0; i < k; ++i) {
            if (lambda[i].size() != k) throw std::invalid_argument("SbmParams: lambda must be KxK");
            for (std::size_t j = 0; j < k; ++j) {
                if (!(lambda[i][j] >= 0.0 && lambda[i][j] <= 1.0))
                    throw std::invalid_argument("SbmParams: probabilities must lie in [0,1]");
                if (lambda[i][j] != lambda[j][i])
                    throw std::invalid_argument("SbmParams: lambda must be symmetric");
            }
        }
    }

    Partition partition() const { return Partition::contiguous(sizes); }
};

}  // namespace edgelighter
