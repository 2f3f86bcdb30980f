#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "dsem/encoding_tree.hpp"
#include "dsem/graph.hpp"

namespace dsem {

// Settings of the greedy parallel-merge minimizer.
//
//   sigma          fraction of possible merges applied per round, in (0, 1]
//   gain_tolerance merges are applied only while some gain exceeds this
//   max_rounds     safety cap on the number of rounds, >= 1
struct DsemConfig {
    double sigma = 0.15;
    double gain_tolerance = 1e-12;
    int max_rounds = 100000;
};

// Incrementally maintained partition of a graph's vertices.
//
// A cluster is identified by the minimum vertex index among its members, so
// ids stay stable and deterministic across merges. The state caches per
// cluster the volume, the outgoing cut weight, and the degree-log sum needed
// by the entropy terms, plus the pairwise inter-cluster weights; merging two
// clusters is O(smaller neighbourhood) instead of a full recomputation.
class ClusterState {
public:
    // Starts with every vertex in its own cluster.
    explicit ClusterState(const WeightedGraph& g);

    int num_vertices() const { return n_; }
    double total_volume() const { return total_volume_; }
    std::size_t cluster_count() const { return live_.size(); }

    bool is_live(int c) const;
    int cluster_of(int vertex) const;
    const std::vector<int>& members(int c) const;
    std::size_t size(int c) const;
    double volume(int c) const;

    // Total edge weight leaving cluster c (self-loops excluded).
    double out_weight(int c) const;

    // Sum over members of degree(v) * log2(degree(v)).
    double degree_log_sum(int c) const;

    // Weight of edges between two distinct live clusters, 0 if unconnected.
    double inter_weight(int a, int b) const;

    // Live cluster ids in ascending order.
    std::vector<int> live_clusters() const;

    // All unordered pairs of live clusters joined by positive weight, as
    // (smaller id, larger id), in ascending lexicographic order.
    std::vector<std::pair<int, int>> candidate_pairs() const;

    // Structural-entropy decrease obtained by merging clusters a and b:
    // positive when the merge lowers the entropy. Uses
    // vol(a+b) = vol(a) + vol(b) and cut(a+b) = cut(a) + cut(b) - 2 w(a,b),
    // so the evaluation is O(1). Throws on unknown ids or a == b.
    double merge_gain(int a, int b) const;

    // Merges b's cluster into a's (or vice versa); the surviving id is
    // min(a, b), which is again the minimum member index.
    void merge(int a, int b);

    // Current partition: clusters ascending by id, members ascending.
    TwoLevelTree to_partition() const;

private:
    void check_live(int c) const;

    int n_ = 0;
    double total_volume_ = 0.0;
    std::vector<int> cluster_of_;
    std::vector<std::vector<int>> members_;
    std::vector<double> volume_;
    std::vector<double> out_weight_;
    std::vector<double> degree_log_sum_;
    std::set<int> live_;
    std::vector<std::map<int, double>> neighbours_;
};

// One merge the minimizer considered or applied: clusters (a, b) with a < b
// and the entropy decrease the merge yields.
struct MergeCandidate {
    int a = 0;
    int b = 0;
    double gain = 0.0;
};

// Picks the merges applied within one round: candidates are ordered by gain
// descending (ties by ascending (a, b) pair), then accepted greedily while
// skipping any candidate touching an already used cluster, up to max_operate
// accepted merges. Throws if max_operate is 0 or a candidate has a == b.
std::vector<MergeCandidate> select_merges(std::vector<MergeCandidate> candidates,
                                          std::size_t max_operate);

// Record of one minimizer round. A terminal round that found no gain above
// tolerance has an empty merge list and se_after == se_before.
struct RoundRecord {
    std::vector<MergeCandidate> merges;
    double se_before = 0.0;
    double se_after = 0.0;
};

struct MergeTrace {
    double se_initial = 0.0;
    double se_final = 0.0;
    bool truncated = false;  // true if max_rounds stopped the descent
    std::vector<RoundRecord> rounds;
};

struct DsemResult {
    TwoLevelTree partition;
    MergeTrace trace;
};

// Called once per round with the round-start state and the evaluated gains
// of every live inter-cluster pair (including non-positive ones).
using RoundObserver =
    std::function<void(const ClusterState&, const std::vector<MergeCandidate>&)>;

// Greedy parallel-merge structural entropy minimization.
//
// Starts from all singletons and repeatedly merges the best-gaining cluster
// pairs: each round evaluates every connected cluster pair, keeps those with
// gain above cfg.gain_tolerance, and applies up to
// max(1, floor((#clusters - 1) * sigma)) non-conflicting merges in gain
// order. Terminates when no gain exceeds the tolerance (recorded as a final
// empty round) or when max_rounds is hit (trace.truncated). A zero-volume
// graph returns all singletons immediately with no rounds.
//
// Runs single-threaded; results are deterministic for identical inputs.
DsemResult run_dsem(const WeightedGraph& g, const DsemConfig& cfg,
                    const RoundObserver& observer = {});

}  // namespace dsem
