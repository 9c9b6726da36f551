// Whitespace edge-list ingestion (SNAP style), induced subgraphs, connected
// components and label files.
#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgelighter/graph.hpp"
#include "edgelighter/partition.hpp"

namespace edgelighter {

struct EdgeListFile {
    std::string path;
    bool directed = false;     // symmetrize on read
    bool one_indexed = false;  // subtract 1 from every id
};

struct LoadedGraph {
    Graph graph{1};
    std::vector<long long> original_ids;  // dense id -> original id (ascending)
};

// Parses "u v" lines; '#' lines are comments. Duplicate edges collapse,
// self-loops drop, directed inputs are symmetrized. Vertex ids are relabeled
// densely in ascending original order.
inline LoadedGraph parse_edge_list(const EdgeListFile& file) {
    std::ifstream in(file.path);
    if (!in) throw std::runtime_error("parse_edge_list: cannot open " + file.path);
    std::vector<std::pair<long long, long long>> raw;
    std::vector<long long> ids;
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ss(line);
        long long u, v;
        if (!(ss >> u >> v))
            throw std::runtime_error("parse_edge_list: malformed line " + std::to_string(line_no) +
                                     " in " + file.path);
        if (file.one_indexed) {
            if (u < 1 || v < 1)
                throw std::runtime_error("parse_edge_list: id below 1 in one-indexed file, line " +
                                         std::to_string(line_no));
            --u;
            --v;
        }
        if (u == v) continue;
        raw.emplace_back(u, v);
        ids.push_back(u);
        ids.push_back(v);
    }
    if (raw.empty()) throw std::runtime_error("parse_edge_list: no edges in " + file.path);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    LoadedGraph out;
    out.original_ids = ids;
    out.graph = Graph(static_cast<int>(ids.size()));
    auto dense = [&](long long id) {
        return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    for (auto [u, v] : raw) out.graph.set_edge(dense(u), dense(v), true);
    return out;
}

inline void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_edge_list: cannot open " + path);
    out << "# undirected edge list, n=" << g.n() << "\n";
    for (auto [u, v] : g.edge_list()) out << u << " " << v << "\n";
    if (!out) throw std::runtime_error("write_edge_list: write failed for " + path);
}

// Relabeled dense graph on the selection (ascending vertex order).
inline Graph induced_subgraph(const Graph& g, std::vector<int> vertices) {
    if (vertices.empty()) throw std::invalid_argument("induced_subgraph: empty selection");
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    for (int v : vertices)
        if (v < 0 || v >= g.n()) throw std::invalid_argument("induced_subgraph: vertex out of range");
    Graph sub(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (g.edge(vertices[i], vertices[j]))
                sub.set_edge(static_cast<int>(i), static_cast<int>(j), true);
    return sub;
}

// Vertices of the largest connected component; ties broken toward the
// component containing the smallest vertex id.
inline std::vector<int> largest_component_vertices(const Graph& g) {
    std::vector<int> component(g.n(), -1);
    auto adj = g.adjacency();
    std::vector<std::vector<int>> components;
    for (int start = 0; start < g.n(); ++start) {
        if (component[start] != -1) continue;
        std::vector<int> stack{start}, members;
        component[start] = static_cast<int>(components.size());
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (int v : adj[u])
                if (component[v] == -1) {
                    component[v] = component[start];
                    stack.push_back(v);
                }
        }
        components.push_back(std::move(members));
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < components.size(); ++c)
        if (components[c].size() > components[best].size()) best = c;
    // BFS order is arbitrary; sort for the dense relabeling.
    std::vector<int> out = components[best];
    std::sort(out.begin(), out.end());
    return out;
}

inline Graph largest_connected_component(const Graph& g) {
    return induced_subgraph(g, largest_component_vertices(g));
}

// "vertex_id label" lines; '#' comments allowed.
inline std::map<long long, long long> parse_label_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_label_file: cannot open " + path);
    std::map<long long, long long> labels;
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ss(line);
        long long v, l;
        if (!(ss >> v >> l))
            throw std::runtime_error("parse_label_file: malformed line " + std::to_string(line_no));
        labels[v] = l;
    }
    if (labels.empty()) throw std::runtime_error("parse_label_file: no labels in " + path);
    return labels;
}

// Builds a partition over the retained vertices. Every retained vertex must
// carry a label; label values are compacted to 0..K-1 in ascending order.
inline Partition partition_from_labels(const std::vector<long long>& original_ids,
                                       const std::map<long long, long long>& labels) {
    std::vector<long long> values;
    for (long long id : original_ids) {
        auto it = labels.find(id);
        if (it == labels.end())
            throw std::runtime_error("partition_from_labels: vertex " + std::to_string(id) +
                                     " has no label");
        values.push_back(it->second);
    }
    std::vector<long long> uniq = values;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> dense(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        dense[i] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), values[i]) -
                                    uniq.begin());
    return Partition(std::move(dense), static_cast<int>(uniq.size()));
}

}  // namespace edgelighter
