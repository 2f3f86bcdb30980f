#include "dsem/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "dsem/error.hpp"

namespace dsem {

SetPartitionEnumerator::SetPartitionEnumerator(int n) : n_(n) {
    if (n < 1 || n > max_exhaustive_vertices)
        throw size_bound_error("set-partition enumeration supports 1 to " +
                               std::to_string(max_exhaustive_vertices) + " vertices, got " +
                               std::to_string(n));
    rgs_.assign(static_cast<std::size_t>(n_), 0);
    prefix_max_.assign(static_cast<std::size_t>(n_), 0);
}

bool SetPartitionEnumerator::next(TwoLevelTree& out) {
    if (done_)
        return false;
    if (!first_) {
        // Advance to the successor restricted growth string: bump the
        // rightmost digit that may still grow, zero everything after it.
        int bump = -1;
        for (int i = n_ - 1; i >= 1; --i) {
            if (rgs_[static_cast<std::size_t>(i)] <= prefix_max_[static_cast<std::size_t>(i)]) {
                bump = i;
                break;
            }
        }
        if (bump == -1) {
            done_ = true;
            return false;
        }
        ++rgs_[static_cast<std::size_t>(bump)];
        for (int j = bump + 1; j < n_; ++j)
            rgs_[static_cast<std::size_t>(j)] = 0;
        for (int j = bump; j + 1 < n_; ++j)
            prefix_max_[static_cast<std::size_t>(j + 1)] =
                std::max(prefix_max_[static_cast<std::size_t>(j)],
                         rgs_[static_cast<std::size_t>(j)]);
    }
    first_ = false;

    int num_clusters = 0;
    for (int v = 0; v < n_; ++v)
        num_clusters = std::max(num_clusters, rgs_[static_cast<std::size_t>(v)] + 1);
    out.clusters.assign(static_cast<std::size_t>(num_clusters), {});
    for (int v = 0; v < n_; ++v)
        out.clusters[static_cast<std::size_t>(rgs_[static_cast<std::size_t>(v)])].push_back(v);
    return true;
}

void for_each_partition(int n, const std::function<void(const TwoLevelTree&)>& fn) {
    SetPartitionEnumerator en(n);
    TwoLevelTree t;
    while (en.next(t))
        fn(t);
}

OracleResult brute_force_min_se(const WeightedGraph& g) {
    const int n = g.num_vertices();
    if (n < 1 || n > max_exhaustive_vertices)
        throw size_bound_error("exhaustive search supports 1 to " +
                               std::to_string(max_exhaustive_vertices) + " vertices, got " +
                               std::to_string(n));
    if (g.total_volume() <= 0.0)
        return {make_singletons(n), 0.0};

    OracleResult best;
    bool have_best = false;
    SetPartitionEnumerator en(n);
    TwoLevelTree t;
    while (en.next(t)) {
        const double se = structural_entropy(g, t);
        if (!have_best || se < best.se) {
            best.partition = t;
            best.se = se;
            have_best = true;
        }
    }
    return best;
}

namespace {

void validate_synth_config(const SynthConfig& cfg) {
    if (cfg.cluster_sizes.empty())
        throw std::invalid_argument("at least one cluster size is required");
    for (int s : cfg.cluster_sizes) {
        if (s < 1)
            throw std::invalid_argument("cluster sizes must be at least 1");
    }
    if (cfg.dim < 2)
        throw std::invalid_argument("embedding dimension must be at least 2");
    if (!std::isfinite(cfg.intra_noise) || cfg.intra_noise < 0.0)
        throw std::invalid_argument("intra_noise must be finite and non-negative");
}

std::vector<double> random_unit_vector(std::mt19937_64& rng,
                                       std::normal_distribution<double>& gauss, int dim) {
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (;;) {
        double sq = 0.0;
        for (auto& x : v) {
            x = gauss(rng);
            sq += x * x;
        }
        if (sq > 1e-18) {
            const double inv = 1.0 / std::sqrt(sq);
            for (auto& x : v)
                x *= inv;
            return v;
        }
    }
}

}  // namespace

PlantedDialogue synth_dialogue(const SynthConfig& cfg) {
    validate_synth_config(cfg);
    const int k = static_cast<int>(cfg.cluster_sizes.size());
    int member_count = 0;
    for (int s : cfg.cluster_sizes)
        member_count += s;
    const int n = member_count + 1;

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const std::vector<double> root = random_unit_vector(rng, gauss, cfg.dim);
    std::vector<std::vector<double>> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
        centroids.push_back(random_unit_vector(rng, gauss, cfg.dim));

    // Cluster label of each non-root vertex, in vertex order.
    std::vector<int> labels;
    labels.reserve(static_cast<std::size_t>(member_count));
    std::vector<int> replies(static_cast<std::size_t>(n), -1);
    if (cfg.layout == ReplyLayout::aligned) {
        int v = 1;
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < cfg.cluster_sizes[static_cast<std::size_t>(j)]; ++i) {
                labels.push_back(j);
                replies[static_cast<std::size_t>(v)] = i == 0 ? 0 : v - 1;
                ++v;
            }
        }
    } else {
        std::vector<int> remaining = cfg.cluster_sizes;
        while (static_cast<int>(labels.size()) < member_count) {
            for (int j = 0; j < k; ++j) {
                if (remaining[static_cast<std::size_t>(j)] > 0) {
                    --remaining[static_cast<std::size_t>(j)];
                    labels.push_back(j);
                }
            }
        }
        for (int v = 1; v < n; ++v)
            replies[static_cast<std::size_t>(v)] = v - 1;
    }

    EmbeddingMatrix emb;
    emb.rows = n;
    emb.cols = cfg.dim;
    emb.values.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(cfg.dim));
    std::copy(root.begin(), root.end(), emb.values.begin());
    std::vector<double> point(static_cast<std::size_t>(cfg.dim));
    for (int v = 1; v < n; ++v) {
        const auto& centroid =
            centroids[static_cast<std::size_t>(labels[static_cast<std::size_t>(v - 1)])];
        for (;;) {
            double sq = 0.0;
            for (std::size_t c = 0; c < point.size(); ++c) {
                point[c] = centroid[c] + cfg.intra_noise * gauss(rng);
                sq += point[c] * point[c];
            }
            if (sq > 1e-18) {
                const double inv = 1.0 / std::sqrt(sq);
                auto* dst = emb.values.data() +
                            static_cast<std::size_t>(v) * static_cast<std::size_t>(cfg.dim);
                for (std::size_t c = 0; c < point.size(); ++c)
                    dst[c] = point[c] * inv;
                break;
            }
        }
    }

    PlantedDialogue pd;
    pd.dialogue.doc_id =
        "synth-" + std::to_string(cfg.seed) + "-" +
        (cfg.layout == ReplyLayout::aligned ? "aligned" : "misaligned");
    pd.dialogue.replies = std::move(replies);
    pd.dialogue.utterances.reserve(static_cast<std::size_t>(n));
    pd.dialogue.speakers.reserve(static_cast<std::size_t>(n));
    pd.planted.reserve(static_cast<std::size_t>(n));
    pd.planted.push_back("shared");
    for (int v = 0; v < n; ++v) {
        pd.dialogue.utterances.push_back("utterance " + std::to_string(v));
        pd.dialogue.speakers.push_back("s" + std::to_string(v % 3));
        if (v >= 1)
            pd.planted.push_back(
                "c" + std::to_string(labels[static_cast<std::size_t>(v - 1)]));
    }
    pd.embeddings = std::move(emb);
    return pd;
}

Partition planted_non_root_labels(const PlantedDialogue& pd) {
    Partition labels;
    labels.reserve(pd.planted.size() - 1);
    for (std::size_t v = 1; v < pd.planted.size(); ++v) {
        const std::string& tag = pd.planted[v];
        if (tag.size() < 2 || tag[0] != 'c')
            throw std::invalid_argument("unexpected planted label: " + tag);
        labels.push_back(std::stoi(tag.substr(1)));
    }
    return labels;
}

}  // namespace dsem
