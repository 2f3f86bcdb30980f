#pragma once

#include <map>
#include <span>
#include <utility>
#include <vector>

namespace dsem {

// Undirected weighted graph with optional self-loops.
//
// Conventions used throughout the project:
//   - a self-loop of weight w adds w (not 2w) to its vertex's degree
//   - self-loops never contribute to any cut
//   - edges with weight 0 are not stored
//
// Hence degree(v) == cut({v}) + self_loop(v) for every vertex.
// Construction is single-threaded; a fully built graph is safe to share
// read-only across threads.
class WeightedGraph {
public:
    explicit WeightedGraph(int num_vertices);

    int num_vertices() const { return n_; }

    // Adds the undirected edge {u, v} with weight w. u == v adds a self-loop.
    // Throws std::invalid_argument on out-of-range endpoints, negative weight
    // or a duplicate of an already present edge. A weight of exactly 0 is a
    // no-op and leaves the graph bit-identical.
    void add_edge(int u, int v, double w);

    // Weight of edge {u, v}, or 0 if absent.
    double edge_weight(int u, int v) const;

    double self_loop(int v) const { return edge_weight(v, v); }

    // Sum of incident edge weights, self-loop counted once.
    double degree(int v) const;

    // Sum of all vertex degrees (the volume of the whole vertex set).
    double total_volume() const { return total_volume_; }

    // Sum of degrees over the given vertex set. Duplicates are rejected.
    double volume(std::span<const int> vertices) const;

    // Total weight of edges with exactly one endpoint in the given set.
    double cut(std::span<const int> vertices) const;

    // Stored edges keyed by (min(u,v), max(u,v)); deterministic order.
    const std::map<std::pair<int, int>, double>& edges() const { return edges_; }

private:
    std::vector<char> membership_mask(std::span<const int> vertices) const;

    int n_ = 0;
    std::map<std::pair<int, int>, double> edges_;
    std::vector<double> degree_;
    double total_volume_ = 0.0;
};

}  // namespace dsem
