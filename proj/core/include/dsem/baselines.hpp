#pragma once

#include <cstdint>
#include <vector>

#include "dsem/dialogue.hpp"

namespace dsem {

// Flat cluster assignment: label per vertex. Label values are opaque; only
// the grouping matters.
using Partition = std::vector<int>;

// Reply-structure baseline: one sub-dialogue per depth-1 subtree of the
// reply tree (every utterance grouped under the direct reply to the root it
// descends from). A root-only dialogue yields [[0]].
SubDialogueSet reply_partition(const Dialogue& d);

// Seeded k-means++ with Lloyd iterations (cap 100, centroid-shift tolerance
// 1e-6) on the L2-normalized embedding rows. Deterministic for identical
// inputs and seed. Throws std::invalid_argument when k is outside [1, rows]
// or a row has zero norm.
Partition kmeans_partition(const EmbeddingMatrix& e, int k, std::uint64_t seed);

// Adjusted Rand index between two equally sized partitions, 1 for identical
// groupings (up to relabeling), ~0 for independent ones. Degenerate
// agreement (both all-singletons or both one cluster) yields 1.
double adjusted_rand_index(const Partition& a, const Partition& b);

// Mutual information normalized by the arithmetic mean of the two label
// entropies, in [0, 1]. Returns 0 when either partition is a single cluster.
double normalized_mutual_info(const Partition& a, const Partition& b);

// Labels of the non-root vertices 1..n-1 of a sub-dialogue set, for metric
// comparisons that exclude the duplicated root. Throws if a non-root vertex
// is missing or appears in more than one sub-dialogue.
Partition non_root_labels(const SubDialogueSet& subs, int n);

// Membership labels (cluster index per vertex) of a two-level tree over n
// vertices.
Partition tree_labels(const TwoLevelTree& t, int n);

}  // namespace dsem
