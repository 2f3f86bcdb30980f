#include "dsem/encoding_tree.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dsem {

namespace {

struct ClusterStats {
    double vol = 0.0;
    double out = 0.0;
    double dlogd = 0.0;
};

ClusterStats gather(const WeightedGraph& g, const std::vector<int>& cluster) {
    ClusterStats s;
    s.vol = g.volume(cluster);
    s.out = g.cut(cluster);
    for (int v : cluster) {
        const double d = g.degree(v);
        if (d > 0.0)
            s.dlogd += d * std::log2(d);
    }
    return s;
}

}  // namespace

TwoLevelTree make_singletons(int n) {
    if (n < 0)
        throw std::invalid_argument("vertex count must be non-negative");
    TwoLevelTree t;
    t.clusters.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        t.clusters.push_back({v});
    return t;
}

void validate_partition(const WeightedGraph& g, const TwoLevelTree& t) {
    const int n = g.num_vertices();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::size_t covered = 0;
    for (const auto& cluster : t.clusters) {
        if (cluster.empty())
            throw std::invalid_argument("partition contains an empty cluster");
        for (int v : cluster) {
            if (v < 0 || v >= n)
                throw std::invalid_argument("partition vertex out of range: " +
                                            std::to_string(v));
            if (seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("vertex " + std::to_string(v) +
                                            " appears in more than one cluster");
            seen[static_cast<std::size_t>(v)] = 1;
            ++covered;
        }
    }
    if (covered != static_cast<std::size_t>(n))
        throw std::invalid_argument("partition does not cover every vertex");
}

double cluster_entropy_term(double total_vol, double vol, double out_weight,
                            double degree_log_sum, std::size_t size) {
    if (total_vol <= 0.0 || vol <= 0.0)
        return 0.0;
    // A singleton sits directly under the root, so its whole subtree term is
    // -(deg/V) * log2(deg/V); algebraically that is the general expression
    // with the cut replaced by the volume.
    const double g_eff = (size == 1) ? vol : out_weight;
    return ((vol - g_eff) * std::log2(vol) + g_eff * std::log2(total_vol) - degree_log_sum) /
           total_vol;
}

double structural_entropy(const WeightedGraph& g, const TwoLevelTree& t) {
    validate_partition(g, t);
    const double total = g.total_volume();
    if (total <= 0.0)
        return 0.0;
    double h = 0.0;
    for (const auto& cluster : t.clusters) {
        const ClusterStats s = gather(g, cluster);
        h += cluster_entropy_term(total, s.vol, s.out, s.dlogd, cluster.size());
    }
    return h;
}

double one_dim_entropy(const WeightedGraph& g) {
    const double total = g.total_volume();
    if (total <= 0.0)
        return 0.0;
    double h = 0.0;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const double d = g.degree(v);
        if (d > 0.0)
            h += cluster_entropy_term(total, d, d, d * std::log2(d), 1);
    }
    return h;
}

double node_contribution(const WeightedGraph& g, const TwoLevelTree& t, TreeNode node) {
    validate_partition(g, t);
    const double total = g.total_volume();

    const auto singleton_term = [&](const std::vector<int>& cluster) {
        const ClusterStats s = gather(g, cluster);
        return cluster_entropy_term(total, s.vol, s.out, s.dlogd, 1);
    };

    if (node.kind == TreeNode::Kind::cluster) {
        if (node.index < 0 || node.index >= static_cast<int>(t.clusters.size()))
            throw std::invalid_argument("cluster index out of range: " +
                                        std::to_string(node.index));
        const auto& cluster = t.clusters[static_cast<std::size_t>(node.index)];
        if (cluster.size() == 1)
            return singleton_term(cluster);
        if (total <= 0.0)
            return 0.0;
        const double vol = g.volume(cluster);
        const double out = g.cut(cluster);
        if (out <= 0.0 || vol <= 0.0)
            return 0.0;
        return -(out / total) * std::log2(vol / total);
    }

    const int v = node.index;
    if (v < 0 || v >= g.num_vertices())
        throw std::invalid_argument("leaf vertex out of range: " + std::to_string(v));
    for (const auto& cluster : t.clusters) {
        bool found = false;
        for (int u : cluster)
            found = found || u == v;
        if (!found)
            continue;
        if (cluster.size() == 1)
            return singleton_term(cluster);  // the leaf is the cluster node
        if (total <= 0.0)
            return 0.0;
        const double d = g.degree(v);
        if (d <= 0.0)
            return 0.0;
        return -(d / total) * std::log2(d / g.volume(cluster));
    }
    throw std::invalid_argument("leaf vertex not present in the partition");
}

}  // namespace dsem
