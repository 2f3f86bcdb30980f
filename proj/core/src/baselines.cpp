#include "dsem/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace dsem {

SubDialogueSet reply_partition(const Dialogue& d) {
    validate_dialogue(d);
    const int n = d.size();
    if (n == 1)
        return {{0}};
    // top[v]: the depth-1 ancestor of v, i.e. the direct reply to the root
    // that v's thread descends from.
    std::vector<int> top(static_cast<std::size_t>(n), 0);
    std::map<int, std::vector<int>> groups;
    for (int v = 1; v < n; ++v) {
        const int parent = d.replies[static_cast<std::size_t>(v)];
        top[static_cast<std::size_t>(v)] =
            parent == 0 ? v : top[static_cast<std::size_t>(parent)];
        groups[top[static_cast<std::size_t>(v)]].push_back(v);
    }
    SubDialogueSet out;
    out.reserve(groups.size());
    for (auto& [root_reply, members] : groups) {
        (void)root_reply;
        std::vector<int> sub;
        sub.reserve(members.size() + 1);
        sub.push_back(0);
        sub.insert(sub.end(), members.begin(), members.end());
        out.push_back(std::move(sub));
    }
    return out;
}

namespace {

double sq_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

}  // namespace

Partition kmeans_partition(const EmbeddingMatrix& e, int k, std::uint64_t seed) {
    const int n = e.rows;
    if (n < 1)
        throw std::invalid_argument("embedding matrix is empty");
    if (k < 1 || k > n)
        throw std::invalid_argument("k must lie in [1, " + std::to_string(n) + "]");

    std::vector<std::vector<double>> points(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto row = e.row(i);
        double sq = 0.0;
        for (double x : row)
            sq += x * x;
        if (!(sq > 0.0))
            throw std::invalid_argument("zero-norm embedding row " + std::to_string(i));
        const double inv = 1.0 / std::sqrt(sq);
        auto& p = points[static_cast<std::size_t>(i)];
        p.resize(row.size());
        for (std::size_t j = 0; j < row.size(); ++j)
            p[j] = row[j] * inv;
    }

    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> centroids;
    centroids.reserve(static_cast<std::size_t>(k));
    std::vector<char> chosen(static_cast<std::size_t>(n), 0);
    {
        std::uniform_int_distribution<int> pick_first(0, n - 1);
        const int first = pick_first(rng);
        centroids.push_back(points[static_cast<std::size_t>(first)]);
        chosen[static_cast<std::size_t>(first)] = 1;
    }
    std::vector<double> dist2(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i)
        dist2[static_cast<std::size_t>(i)] =
            sq_distance(points[static_cast<std::size_t>(i)], centroids[0]);

    while (centroids.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            if (!chosen[static_cast<std::size_t>(i)])
                total += dist2[static_cast<std::size_t>(i)];
        }
        int pick = -1;
        if (total > 0.0) {
            std::uniform_real_distribution<double> draw(0.0, total);
            const double r = draw(rng);
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                if (chosen[static_cast<std::size_t>(i)] ||
                    dist2[static_cast<std::size_t>(i)] <= 0.0)
                    continue;
                acc += dist2[static_cast<std::size_t>(i)];
                if (acc > r) {
                    pick = i;
                    break;
                }
            }
        }
        if (pick == -1) {
            // All remaining points coincide with a centroid; take the first
            // free index so seeding always completes.
            for (int i = 0; i < n && pick == -1; ++i) {
                if (!chosen[static_cast<std::size_t>(i)])
                    pick = i;
            }
        }
        chosen[static_cast<std::size_t>(pick)] = 1;
        centroids.push_back(points[static_cast<std::size_t>(pick)]);
        for (int i = 0; i < n; ++i) {
            const double d = sq_distance(points[static_cast<std::size_t>(i)],
                                         centroids.back());
            dist2[static_cast<std::size_t>(i)] =
                std::min(dist2[static_cast<std::size_t>(i)], d);
        }
    }

    Partition labels(static_cast<std::size_t>(n), 0);
    std::vector<double> assigned_d2(static_cast<std::size_t>(n), 0.0);
    for (int iter = 0; iter < 100; ++iter) {
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d2 = sq_distance(points[static_cast<std::size_t>(i)], centroids[0]);
            for (int j = 1; j < k; ++j) {
                const double d2 = sq_distance(points[static_cast<std::size_t>(i)],
                                              centroids[static_cast<std::size_t>(j)]);
                if (d2 < best_d2) {
                    best_d2 = d2;
                    best = j;
                }
            }
            labels[static_cast<std::size_t>(i)] = best;
            assigned_d2[static_cast<std::size_t>(i)] = best_d2;
        }

        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < n; ++i)
            ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
        for (int j = 0; j < k; ++j) {
            if (counts[static_cast<std::size_t>(j)] > 0)
                continue;
            // Re-seed an empty cluster with the worst-fitting point of any
            // cluster that can spare one.
            int worst = -1;
            for (int i = 0; i < n; ++i) {
                const auto li = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
                if (counts[li] < 2)
                    continue;
                if (worst == -1 ||
                    assigned_d2[static_cast<std::size_t>(i)] >
                        assigned_d2[static_cast<std::size_t>(worst)])
                    worst = i;
            }
            const auto lw = static_cast<std::size_t>(labels[static_cast<std::size_t>(worst)]);
            --counts[lw];
            labels[static_cast<std::size_t>(worst)] = j;
            assigned_d2[static_cast<std::size_t>(worst)] = 0.0;
            ++counts[static_cast<std::size_t>(j)];
        }

        const std::size_t dim = points[0].size();
        std::vector<std::vector<double>> means(
            static_cast<std::size_t>(k), std::vector<double>(dim, 0.0));
        for (int i = 0; i < n; ++i) {
            const auto li = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
            const auto& p = points[static_cast<std::size_t>(i)];
            for (std::size_t c = 0; c < dim; ++c)
                means[li][c] += p[c];
        }
        double max_shift = 0.0;
        for (int j = 0; j < k; ++j) {
            const auto ji = static_cast<std::size_t>(j);
            for (std::size_t c = 0; c < dim; ++c)
                means[ji][c] /= static_cast<double>(counts[ji]);
            max_shift = std::max(max_shift, std::sqrt(sq_distance(means[ji], centroids[ji])));
        }
        centroids = std::move(means);
        if (max_shift <= 1e-6)
            break;
    }
    return labels;
}

namespace {

void check_comparable(const Partition& a, const Partition& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("partitions must be non-empty");
    if (a.size() != b.size())
        throw std::invalid_argument("partitions must have equal length");
}

double comb2(double x) { return 0.5 * x * (x - 1.0); }

}  // namespace

double adjusted_rand_index(const Partition& a, const Partition& b) {
    check_comparable(a, b);
    const std::size_t n = a.size();
    if (n == 1)
        return 1.0;
    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> rows, cols;
    for (std::size_t i = 0; i < n; ++i) {
        joint[{a[i], b[i]}] += 1.0;
        rows[a[i]] += 1.0;
        cols[b[i]] += 1.0;
    }
    double index = 0.0, sum_a = 0.0, sum_b = 0.0;
    for (const auto& [key, c] : joint) {
        (void)key;
        index += comb2(c);
    }
    for (const auto& [label, c] : rows) {
        (void)label;
        sum_a += comb2(c);
    }
    for (const auto& [label, c] : cols) {
        (void)label;
        sum_b += comb2(c);
    }
    const double expected = sum_a * sum_b / comb2(static_cast<double>(n));
    const double denom = 0.5 * (sum_a + sum_b) - expected;
    if (denom == 0.0)
        return 1.0;  // both all-singletons or both a single cluster
    return (index - expected) / denom;
}

double normalized_mutual_info(const Partition& a, const Partition& b) {
    check_comparable(a, b);
    const double n = static_cast<double>(a.size());
    std::map<std::pair<int, int>, double> joint;
    std::map<int, double> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint[{a[i], b[i]}] += 1.0;
        rows[a[i]] += 1.0;
        cols[b[i]] += 1.0;
    }
    const auto entropy = [n](const std::map<int, double>& counts) {
        double h = 0.0;
        for (const auto& [label, c] : counts) {
            (void)label;
            h -= (c / n) * std::log2(c / n);
        }
        return h;
    };
    const double ha = entropy(rows);
    const double hb = entropy(cols);
    if (ha == 0.0 || hb == 0.0)
        return 0.0;
    double mi = 0.0;
    for (const auto& [key, c] : joint)
        mi += (c / n) * std::log2(c * n / (rows[key.first] * cols[key.second]));
    mi = std::max(mi, 0.0);
    return mi / (0.5 * (ha + hb));
}

Partition non_root_labels(const SubDialogueSet& subs, int n) {
    if (n < 1)
        throw std::invalid_argument("vertex count must be at least 1");
    Partition labels(static_cast<std::size_t>(n - 1), -1);
    for (std::size_t idx = 0; idx < subs.size(); ++idx) {
        for (int v : subs[idx]) {
            if (v == 0)
                continue;
            if (v < 1 || v >= n)
                throw std::invalid_argument("sub-dialogue vertex out of range: " +
                                            std::to_string(v));
            auto& slot = labels[static_cast<std::size_t>(v - 1)];
            if (slot != -1)
                throw std::invalid_argument("vertex " + std::to_string(v) +
                                            " appears in more than one sub-dialogue");
            slot = static_cast<int>(idx);
        }
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == -1)
            throw std::invalid_argument("vertex " + std::to_string(i + 1) +
                                        " missing from the sub-dialogues");
    }
    return labels;
}

Partition tree_labels(const TwoLevelTree& t, int n) {
    if (n < 0)
        throw std::invalid_argument("vertex count must be non-negative");
    Partition labels(static_cast<std::size_t>(n), -1);
    for (std::size_t idx = 0; idx < t.clusters.size(); ++idx) {
        for (int v : t.clusters[idx]) {
            if (v < 0 || v >= n)
                throw std::invalid_argument("cluster vertex out of range: " +
                                            std::to_string(v));
            auto& slot = labels[static_cast<std::size_t>(v)];
            if (slot != -1)
                throw std::invalid_argument("vertex " + std::to_string(v) +
                                            " appears in more than one cluster");
            slot = static_cast<int>(idx);
        }
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == -1)
            throw std::invalid_argument("vertex " + std::to_string(i) +
                                        " missing from the partition");
    }
    return labels;
}

}  // namespace dsem
