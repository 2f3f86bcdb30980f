#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dsem/baselines.hpp"
#include "dsem/dialogue.hpp"
#include "dsem/encoding_tree.hpp"
#include "dsem/graph.hpp"

namespace dsem {

// Exhaustive enumeration is limited to this many vertices (Bell(12) is
// about 4.2 million partitions).
inline constexpr int max_exhaustive_vertices = 12;

// Streams every set partition of {0..n-1} exactly once, in the canonical
// lexicographic order of restricted growth strings (the single-cluster
// partition first, all-singletons last). Throws size_bound_error unless
// 1 <= n <= max_exhaustive_vertices.
class SetPartitionEnumerator {
public:
    explicit SetPartitionEnumerator(int n);

    // Writes the next partition into out and returns true, or returns false
    // once the enumeration is exhausted.
    bool next(TwoLevelTree& out);

private:
    int n_ = 0;
    bool first_ = true;
    bool done_ = false;
    std::vector<int> rgs_;
    std::vector<int> prefix_max_;
};

void for_each_partition(int n, const std::function<void(const TwoLevelTree&)>& fn);

struct OracleResult {
    TwoLevelTree partition;
    double se = 0.0;
};

// Minimum structural entropy over every set partition of the graph's
// vertices; ties keep the first minimum in enumeration order. A zero-volume
// graph yields all singletons with entropy 0. Throws size_bound_error when
// the graph exceeds max_exhaustive_vertices.
OracleResult brute_force_min_se(const WeightedGraph& g);

enum class ReplyLayout {
    aligned,     // one depth-1 reply chain per planted cluster
    misaligned,  // a single reply chain interleaving the clusters round-robin
};

struct SynthConfig {
    std::vector<int> cluster_sizes;  // one entry per planted cluster, each >= 1
    int dim = 16;                    // embedding dimension, >= 2
    double intra_noise = 0.1;        // gaussian noise scale inside a cluster
    std::uint64_t seed = 0;
    ReplyLayout layout = ReplyLayout::aligned;
};

// A synthetic dialogue with known ground truth. planted[0] is "shared" (the
// root belongs to every sub-dialogue); planted[v] is "c<k>" for members of
// cluster k.
struct PlantedDialogue {
    Dialogue dialogue;
    EmbeddingMatrix embeddings;
    std::vector<std::string> planted;
};

// Generates a planted-partition dialogue: a random unit root embedding, one
// random unit centroid per cluster, and members drawn as
// normalize(centroid + intra_noise * gaussian). The reply tree follows
// cfg.layout. Deterministic for an identical config.
PlantedDialogue synth_dialogue(const SynthConfig& cfg);

// Integer cluster labels of the non-root vertices, in vertex order.
Partition planted_non_root_labels(const PlantedDialogue& pd);

}  // namespace dsem
