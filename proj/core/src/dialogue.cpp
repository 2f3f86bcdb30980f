#include "dsem/dialogue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dsem/error.hpp"

namespace dsem {

void validate_replies(const std::vector<int>& replies) {
    if (replies.empty())
        throw std::invalid_argument("dialogue must contain at least the root utterance");
    if (replies[0] != -1)
        throw std::invalid_argument("root utterance must carry reply index -1");
    for (std::size_t i = 1; i < replies.size(); ++i) {
        if (replies[i] < 0 || replies[i] >= static_cast<int>(i))
            throw std::invalid_argument("utterance " + std::to_string(i) +
                                        " must reply to an earlier utterance");
    }
}

void validate_dialogue(const Dialogue& d) {
    validate_replies(d.replies);
    if (d.utterances.size() != d.replies.size() || d.speakers.size() != d.replies.size())
        throw std::invalid_argument(
            "utterances, speakers and replies must have equal length");
}

std::span<const double> EmbeddingMatrix::row(int i) const {
    if (i < 0 || i >= rows)
        throw std::invalid_argument("embedding row out of range: " + std::to_string(i));
    return {values.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(cols),
            static_cast<std::size_t>(cols)};
}

double cosine(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("cosine requires vectors of equal length");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (!(na > 0.0) || !(nb > 0.0))
        throw std::invalid_argument("cosine of a zero-norm vector");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<std::pair<int, int>> thread_closure(const std::vector<int>& replies) {
    validate_replies(replies);
    std::vector<std::pair<int, int>> pairs;
    for (int v = 1; v < static_cast<int>(replies.size()); ++v) {
        for (int a = replies[static_cast<std::size_t>(v)]; a != -1;
             a = replies[static_cast<std::size_t>(a)])
            pairs.emplace_back(a, v);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

WeightedGraph build_dialogue_graph(const Dialogue& d, const EmbeddingMatrix& e) {
    validate_dialogue(d);
    const int n = d.size();
    if (e.rows != n)
        throw mismatch_error("embedding rows (" + std::to_string(e.rows) +
                             ") do not match dialogue length (" + std::to_string(n) + ")");
    if (e.cols < 1)
        throw std::invalid_argument("embedding dimension must be at least 1");

    std::vector<double> norm(static_cast<std::size_t>(n), 0.0);
    for (int v = 0; v < n; ++v) {
        double sq = 0.0;
        for (double x : e.row(v))
            sq += x * x;
        if (!(sq > 0.0))
            throw std::invalid_argument("zero-norm embedding row " + std::to_string(v));
        norm[static_cast<std::size_t>(v)] = std::sqrt(sq);
    }

    WeightedGraph g(n);
    for (int v = 0; v < n; ++v)
        g.add_edge(v, v, 1.0);
    for (const auto& [u, v] : thread_closure(d.replies)) {
        const auto ru = e.row(u);
        const auto rv = e.row(v);
        double dot = 0.0;
        for (std::size_t i = 0; i < ru.size(); ++i)
            dot += ru[i] * rv[i];
        const double w = std::max(
            dot / (norm[static_cast<std::size_t>(u)] * norm[static_cast<std::size_t>(v)]),
            0.0);
        if (w > 0.0)
            g.add_edge(u, v, w);
    }
    return g;
}

SubDialogueSet attach_root(const TwoLevelTree& t) {
    SubDialogueSet out;
    const bool multiple = t.clusters.size() > 1;
    for (const auto& cluster : t.clusters) {
        if (multiple && cluster.size() == 1 && cluster[0] == 0)
            continue;  // the root alone duplicates into every other cluster
        std::vector<int> sub = cluster;
        if (std::find(sub.begin(), sub.end(), 0) == sub.end())
            sub.push_back(0);
        std::sort(sub.begin(), sub.end());
        out.push_back(std::move(sub));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dsem
