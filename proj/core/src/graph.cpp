#include "dsem/graph.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dsem {

WeightedGraph::WeightedGraph(int num_vertices) {
    if (num_vertices < 0)
        throw std::invalid_argument("vertex count must be non-negative");
    n_ = num_vertices;
    degree_.assign(static_cast<std::size_t>(n_), 0.0);
}

void WeightedGraph::add_edge(int u, int v, double w) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(u) +
                                    ", " + std::to_string(v) + ")");
    if (!std::isfinite(w) || w < 0.0)
        throw std::invalid_argument("edge weight must be finite and non-negative");
    if (w == 0.0)
        return;
    const std::pair<int, int> key{std::min(u, v), std::max(u, v)};
    if (!edges_.emplace(key, w).second)
        throw std::invalid_argument("duplicate edge (" + std::to_string(key.first) + ", " +
                                    std::to_string(key.second) + ")");
    if (u == v) {
        degree_[static_cast<std::size_t>(u)] += w;
        total_volume_ += w;
    } else {
        degree_[static_cast<std::size_t>(u)] += w;
        degree_[static_cast<std::size_t>(v)] += w;
        total_volume_ += 2.0 * w;
    }
}

double WeightedGraph::edge_weight(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    const auto it = edges_.find({std::min(u, v), std::max(u, v)});
    return it == edges_.end() ? 0.0 : it->second;
}

double WeightedGraph::degree(int v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("unknown vertex " + std::to_string(v));
    return degree_[static_cast<std::size_t>(v)];
}

std::vector<char> WeightedGraph::membership_mask(std::span<const int> vertices) const {
    std::vector<char> mask(static_cast<std::size_t>(n_), 0);
    for (int v : vertices) {
        if (v < 0 || v >= n_)
            throw std::invalid_argument("unknown vertex " + std::to_string(v));
        if (mask[static_cast<std::size_t>(v)])
            throw std::invalid_argument("duplicate vertex " + std::to_string(v) +
                                        " in vertex set");
        mask[static_cast<std::size_t>(v)] = 1;
    }
    return mask;
}

double WeightedGraph::volume(std::span<const int> vertices) const {
    membership_mask(vertices);
    double vol = 0.0;
    for (int v : vertices)
        vol += degree_[static_cast<std::size_t>(v)];
    return vol;
}

double WeightedGraph::cut(std::span<const int> vertices) const {
    const std::vector<char> mask = membership_mask(vertices);
    double total = 0.0;
    for (const auto& [key, w] : edges_) {
        if (key.first == key.second)
            continue;
        if (mask[static_cast<std::size_t>(key.first)] !=
            mask[static_cast<std::size_t>(key.second)])
            total += w;
    }
    return total;
}

}  // namespace dsem
