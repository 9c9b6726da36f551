// Bijections on [n] with a cached inverse and shuffle-count (number of
// non-fixed points) queries.
#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

namespace edgelighter {

class PermutationMap {
public:
    explicit PermutationMap(std::vector<int> image) : image_(std::move(image)) {
        const int n = static_cast<int>(image_.size());
        inverse_.assign(n, -1);
        for (int i = 0; i < n; ++i) {
            int y = image_[i];
            if (y < 0 || y >= n || inverse_[y] != -1)
                throw std::invalid_argument("PermutationMap: image is not a bijection of [n]");
            inverse_[y] = i;
        }
    }

    static PermutationMap identity(int n) {
        std::vector<int> img(n);
        for (int i = 0; i < n; ++i) img[i] = i;
        return PermutationMap(std::move(img));
    }

    int n() const { return static_cast<int>(image_.size()); }
    int operator()(int v) const { return image_[v]; }
    int inverse_of(int v) const { return inverse_[v]; }
    const std::vector<int>& image() const { return image_; }

    PermutationMap inverse() const { return PermutationMap(inverse_); }

    // this ∘ other: (this*other)(v) = this(other(v)).
    PermutationMap compose(const PermutationMap& other) const {
        if (other.n() != n()) throw std::invalid_argument("PermutationMap::compose: size mismatch");
        std::vector<int> img(image_.size());
        for (int i = 0; i < n(); ++i) img[i] = image_[other.image_[i]];
        return PermutationMap(std::move(img));
    }

    int shuffle_count() const {
        int k = 0;
        for (int i = 0; i < n(); ++i)
            if (image_[i] != i) ++k;
        return k;
    }

    friend bool operator==(const PermutationMap& a, const PermutationMap& b) {
        return a.image_ == b.image_;
    }
    friend bool operator!=(const PermutationMap& a, const PermutationMap& b) { return !(a == b); }

private:
    std::vector<int> image_;
    std::vector<int> inverse_;
};

inline int shuffle_count(const PermutationMap& p) { return p.shuffle_count(); }

}  // namespace edgelighter
