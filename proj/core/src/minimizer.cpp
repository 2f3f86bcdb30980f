#include "dsem/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dsem {

ClusterState::ClusterState(const WeightedGraph& g) {
    n_ = g.num_vertices();
    total_volume_ = g.total_volume();
    const auto count = static_cast<std::size_t>(n_);
    cluster_of_.resize(count);
    members_.resize(count);
    volume_.assign(count, 0.0);
    out_weight_.assign(count, 0.0);
    degree_log_sum_.assign(count, 0.0);
    neighbours_.resize(count);
    for (int v = 0; v < n_; ++v) {
        const auto i = static_cast<std::size_t>(v);
        cluster_of_[i] = v;
        members_[i] = {v};
        const double d = g.degree(v);
        volume_[i] = d;
        out_weight_[i] = d - g.self_loop(v);
        degree_log_sum_[i] = d > 0.0 ? d * std::log2(d) : 0.0;
        live_.insert(v);
    }
    for (const auto& [key, w] : g.edges()) {
        if (key.first == key.second)
            continue;
        neighbours_[static_cast<std::size_t>(key.first)][key.second] = w;
        neighbours_[static_cast<std::size_t>(key.second)][key.first] = w;
    }
}

void ClusterState::check_live(int c) const {
    if (c < 0 || c >= n_ || !live_.contains(c))
        throw std::invalid_argument("unknown cluster id " + std::to_string(c));
}

bool ClusterState::is_live(int c) const {
    return c >= 0 && c < n_ && live_.contains(c);
}

int ClusterState::cluster_of(int vertex) const {
    if (vertex < 0 || vertex >= n_)
        throw std::invalid_argument("unknown vertex " + std::to_string(vertex));
    return cluster_of_[static_cast<std::size_t>(vertex)];
}

const std::vector<int>& ClusterState::members(int c) const {
    check_live(c);
    return members_[static_cast<std::size_t>(c)];
}

std::size_t ClusterState::size(int c) const {
    check_live(c);
    return members_[static_cast<std::size_t>(c)].size();
}

double ClusterState::volume(int c) const {
    check_live(c);
    return volume_[static_cast<std::size_t>(c)];
}

double ClusterState::out_weight(int c) const {
    check_live(c);
    return out_weight_[static_cast<std::size_t>(c)];
}

double ClusterState::degree_log_sum(int c) const {
    check_live(c);
    return degree_log_sum_[static_cast<std::size_t>(c)];
}

double ClusterState::inter_weight(int a, int b) const {
    check_live(a);
    check_live(b);
    if (a == b)
        throw std::invalid_argument("inter_weight requires two distinct clusters");
    const auto& nbrs = neighbours_[static_cast<std::size_t>(a)];
    const auto it = nbrs.find(b);
    return it == nbrs.end() ? 0.0 : it->second;
}

std::vector<int> ClusterState::live_clusters() const {
    return {live_.begin(), live_.end()};
}

std::vector<std::pair<int, int>> ClusterState::candidate_pairs() const {
    std::vector<std::pair<int, int>> pairs;
    for (int c : live_) {
        for (const auto& [nb, w] : neighbours_[static_cast<std::size_t>(c)]) {
            (void)w;
            if (nb > c)
                pairs.emplace_back(c, nb);
        }
    }
    return pairs;
}

double ClusterState::merge_gain(int a, int b) const {
    check_live(a);
    check_live(b);
    if (a == b)
        throw std::invalid_argument("cannot merge a cluster with itself");
    const auto ia = static_cast<std::size_t>(a);
    const auto ib = static_cast<std::size_t>(b);
    const double w = inter_weight(a, b);
    const double before =
        cluster_entropy_term(total_volume_, volume_[ia], out_weight_[ia],
                             degree_log_sum_[ia], members_[ia].size()) +
        cluster_entropy_term(total_volume_, volume_[ib], out_weight_[ib],
                             degree_log_sum_[ib], members_[ib].size());
    const double after = cluster_entropy_term(
        total_volume_, volume_[ia] + volume_[ib],
        out_weight_[ia] + out_weight_[ib] - 2.0 * w,
        degree_log_sum_[ia] + degree_log_sum_[ib],
        members_[ia].size() + members_[ib].size());
    return before - after;
}

void ClusterState::merge(int a, int b) {
    check_live(a);
    check_live(b);
    if (a == b)
        throw std::invalid_argument("cannot merge a cluster with itself");
    const int keep = std::min(a, b);
    const int drop = std::max(a, b);
    const auto ik = static_cast<std::size_t>(keep);
    const auto id = static_cast<std::size_t>(drop);
    const double w = inter_weight(keep, drop);

    volume_[ik] += volume_[id];
    out_weight_[ik] = out_weight_[ik] + out_weight_[id] - 2.0 * w;
    degree_log_sum_[ik] += degree_log_sum_[id];

    auto& kept = members_[ik];
    auto& dropped = members_[id];
    for (int v : dropped)
        cluster_of_[static_cast<std::size_t>(v)] = keep;
    const auto middle = static_cast<std::ptrdiff_t>(kept.size());
    kept.insert(kept.end(), dropped.begin(), dropped.end());
    std::inplace_merge(kept.begin(), kept.begin() + middle, kept.end());
    dropped.clear();
    dropped.shrink_to_fit();

    for (const auto& [nb, wt] : neighbours_[id]) {
        if (nb == keep)
            continue;
        auto& merged = neighbours_[ik][nb];
        merged += wt;
        auto& other = neighbours_[static_cast<std::size_t>(nb)];
        other.erase(drop);
        other[keep] = merged;
    }
    neighbours_[ik].erase(drop);
    neighbours_[id].clear();
    live_.erase(drop);
}

TwoLevelTree ClusterState::to_partition() const {
    TwoLevelTree t;
    t.clusters.reserve(live_.size());
    for (int c : live_)
        t.clusters.push_back(members_[static_cast<std::size_t>(c)]);
    return t;
}

std::vector<MergeCandidate> select_merges(std::vector<MergeCandidate> candidates,
                                          std::size_t max_operate) {
    if (max_operate == 0)
        throw std::invalid_argument("max_operate must be at least 1");
    for (auto& c : candidates) {
        if (c.a == c.b)
            throw std::invalid_argument("merge candidate with identical endpoints");
        if (c.a > c.b)
            std::swap(c.a, c.b);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const MergeCandidate& x, const MergeCandidate& y) {
                  if (x.gain != y.gain)
                      return x.gain > y.gain;
                  if (x.a != y.a)
                      return x.a < y.a;
                  return x.b < y.b;
              });
    std::vector<MergeCandidate> accepted;
    std::set<int> used;
    for (const auto& c : candidates) {
        if (accepted.size() >= max_operate)
            break;
        if (used.contains(c.a) || used.contains(c.b))
            continue;
        used.insert(c.a);
        used.insert(c.b);
        accepted.push_back(c);
    }
    return accepted;
}

namespace {

void validate_config(const DsemConfig& cfg) {
    if (!std::isfinite(cfg.sigma) || cfg.sigma <= 0.0 || cfg.sigma > 1.0)
        throw std::invalid_argument("sigma must lie in (0, 1]");
    if (!std::isfinite(cfg.gain_tolerance) || cfg.gain_tolerance < 0.0)
        throw std::invalid_argument("gain_tolerance must be non-negative");
    if (cfg.max_rounds < 1)
        throw std::invalid_argument("max_rounds must be at least 1");
}

}  // namespace

DsemResult run_dsem(const WeightedGraph& g, const DsemConfig& cfg,
                    const RoundObserver& observer) {
    validate_config(cfg);
    ClusterState state(g);
    MergeTrace trace;
    trace.se_initial = one_dim_entropy(g);
    double se = trace.se_initial;
    bool reached_fixpoint = g.total_volume() <= 0.0;

    if (!reached_fixpoint) {
        for (int round = 0; round < cfg.max_rounds; ++round) {
            const auto pairs = state.candidate_pairs();
            std::vector<MergeCandidate> evaluated;
            evaluated.reserve(pairs.size());
            for (const auto& [a, b] : pairs)
                evaluated.push_back({a, b, state.merge_gain(a, b)});
            if (observer)
                observer(state, evaluated);

            std::vector<MergeCandidate> positive;
            for (const auto& c : evaluated) {
                if (c.gain > cfg.gain_tolerance)
                    positive.push_back(c);
            }
            const double se_before = se;
            if (positive.empty()) {
                trace.rounds.push_back({{}, se_before, se_before});
                reached_fixpoint = true;
                break;
            }
            const auto max_operate = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::floor(
                       static_cast<double>(state.cluster_count() - 1) * cfg.sigma)));
            auto accepted = select_merges(std::move(positive), max_operate);
            for (const auto& m : accepted) {
                state.merge(m.a, m.b);
                se -= m.gain;
            }
            trace.rounds.push_back({std::move(accepted), se_before, se});
        }
    }

    trace.truncated = !reached_fixpoint;
    DsemResult result;
    result.partition = state.to_partition();
    trace.se_final = structural_entropy(g, result.partition);
    result.trace = std::move(trace);
    return result;
}

}  // namespace dsem
