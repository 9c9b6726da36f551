// Simple undirected graph on n labeled vertices, stored as a packed bitset
// over the n*(n-1)/2 unordered pairs.
//
// Pair indexing (row-major upper triangle), for 0 <= u < v < n:
//     idx(u, v) = u*(n-1) - u*(u-1)/2 + (v - u - 1)
// i.e. (0,1),(0,2),...,(0,n-1),(1,2),...,(n-2,n-1). Traces and serialized
// matrices depend on this order, so it must not change.
#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace edgelighter {

class Graph {
public:
    explicit Graph(int n) : n_(n), edge_count_(0) {
        if (n < 1) throw std::invalid_argument("Graph: vertex count must be >= 1");
        bits_.assign((pair_count(n) + 63) / 64, 0ull);
    }

    static std::size_t pair_count(int n) {
        return static_cast<std::size_t>(n) * (n - 1) / 2;
    }

    int n() const { return n_; }
    long long edge_count() const { return edge_count_; }
    std::size_t pair_count() const { return pair_count(n_); }

    std::size_t pair_index(int u, int v) const {
        if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
            throw std::invalid_argument("Graph::pair_index: invalid pair");
        if (u > v) std::swap(u, v);
        return static_cast<std::size_t>(u) * (n_ - 1) - static_cast<std::size_t>(u) * (u - 1) / 2 +
               (v - u - 1);
    }

    bool edge(int u, int v) const { return test(pair_index(u, v)); }
    bool test(std::size_t idx) const { return (bits_[idx >> 6] >> (idx & 63)) & 1ull; }

    void set_edge(int u, int v, bool on) { set(pair_index(u, v), on); }
    void set(std::size_t idx, bool on) {
        std::uint64_t mask = 1ull << (idx & 63);
        std::uint64_t& word = bits_[idx >> 6];
        if (on && !(word & mask)) {
            word |= mask;
            ++edge_count_;
        } else if (!on && (word & mask)) {
            word &= ~mask;
            --edge_count_;
        }
    }

    // Neighbor lists; rebuilt on demand (the walk mutates edges in place).
    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(n_);
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (edge(u, v)) {
                    adj[u].push_back(v);
                    adj[v].push_back(u);
                }
        return adj;
    }

    std::vector<std::pair<int, int>> edge_list() const {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(edge_count_));
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (edge(u, v)) out.emplace_back(u, v);
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.bits_ == b.bits_;
    }
    friend bool operator!=(const Graph& a, const Graph& b) { return !(a == b); }

private:
    int n_;
    long long edge_count_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace edgelighter
