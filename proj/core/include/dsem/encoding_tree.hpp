#pragma once

#include <cstddef>
#include <vector>

#include "dsem/graph.hpp"

namespace dsem {

// A two-level encoding tree: a root whose children are vertex clusters, with
// the clustered vertices as leaves below them. A singleton cluster is a
// degenerate case, its single vertex sits directly under the root; the
// all-singletons partition is therefore the height-1 (one-dimensional) tree.
//
// Clusters must be non-empty, pairwise disjoint, and jointly cover all
// vertices of the graph they are paired with.
struct TwoLevelTree {
    std::vector<std::vector<int>> clusters;
};

// The all-singletons tree over n vertices.
TwoLevelTree make_singletons(int n);

// Throws std::invalid_argument if t is not a valid partition of g's vertices
// (empty cluster, out-of-range vertex, duplicate, or missing vertex).
void validate_partition(const WeightedGraph& g, const TwoLevelTree& t);

// Contribution of one cluster's subtree to the structural entropy, computed
// from aggregate quantities:
//   total_vol      volume of the whole graph
//   vol            volume of the cluster
//   out_weight     cut of the cluster (weight leaving it)
//   degree_log_sum sum over members of degree(v) * log2(degree(v))
//   size           number of member vertices
//
// For size >= 2 this is the cluster term -(cut/V) * log2(vol/V) plus the
// member leaf terms -(deg/V) * log2(deg/vol). A singleton contributes the
// single height-1 term -(deg/V) * log2(deg/V). Zero-degree members and
// zero-volume clusters contribute 0.
double cluster_entropy_term(double total_vol, double vol, double out_weight,
                            double degree_log_sum, std::size_t size);

// Structural entropy of g under the two-level tree t, in bits.
// An all-zero-volume graph yields 0. Throws on an invalid partition.
double structural_entropy(const WeightedGraph& g, const TwoLevelTree& t);

// Structural entropy of the height-1 tree (every vertex directly under the
// root): -sum_v (deg(v)/V) * log2(deg(v)/V). Empty or zero-volume graphs
// yield 0. Equals structural_entropy with the all-singletons tree.
double one_dim_entropy(const WeightedGraph& g);

// Identifies a non-root node of a two-level tree: either the cluster with
// the given index, or the leaf for the given vertex. For a singleton cluster
// the cluster node and its leaf are the same node, and both designations
// return that node's (identical) contribution.
struct TreeNode {
    enum class Kind { cluster, leaf };
    Kind kind;
    int index;

    static TreeNode cluster_node(int i) { return {Kind::cluster, i}; }
    static TreeNode leaf(int v) { return {Kind::leaf, v}; }
};

// The single structural-entropy term owned by one tree node. Summing the
// contributions of every cluster node plus the leaves of clusters of size
// >= 2 reproduces structural_entropy exactly. Throws on invalid node ids.
double node_contribution(const WeightedGraph& g, const TwoLevelTree& t, TreeNode node);

}  // namespace dsem
