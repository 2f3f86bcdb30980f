#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "dsem/dialogue.hpp"
#include "dsem/encoding_tree.hpp"
#include "dsem/graph.hpp"
#include "dsem/minimizer.hpp"
#include "dsem/verification.hpp"

namespace {

// Worst-case synthetic input: a single reply chain interleaving the clusters,
// whose thread closure is the complete graph over the utterances.
dsem::PlantedDialogue make_planted(int utterances) {
    dsem::SynthConfig cfg;
    const int per = utterances / 3;
    cfg.cluster_sizes = {per, per, utterances - 1 - 2 * per};
    cfg.seed = 17;
    cfg.layout = dsem::ReplyLayout::misaligned;
    return dsem::synth_dialogue(cfg);
}

std::vector<int> chain_replies(int n) {
    std::vector<int> replies(static_cast<std::size_t>(n));
    replies[0] = -1;
    for (int i = 1; i < n; ++i)
        replies[static_cast<std::size_t>(i)] = i - 1;
    return replies;
}

dsem::WeightedGraph random_graph(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    dsem::WeightedGraph g(n);
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (unit(rng) < 0.6)
                g.add_edge(u, v, 1.0 - unit(rng));
        }
    }
    return g;
}

void bm_thread_closure(benchmark::State& state) {
    const std::vector<int> replies = chain_replies(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(dsem::thread_closure(replies));
}

void bm_build_dialogue_graph(benchmark::State& state) {
    const dsem::PlantedDialogue pd = make_planted(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(dsem::build_dialogue_graph(pd.dialogue, pd.embeddings));
}

void bm_structural_entropy(benchmark::State& state) {
    const dsem::PlantedDialogue pd = make_planted(static_cast<int>(state.range(0)));
    const dsem::WeightedGraph g = dsem::build_dialogue_graph(pd.dialogue, pd.embeddings);
    const dsem::TwoLevelTree partition = dsem::run_dsem(g, dsem::DsemConfig{}).partition;
    for (auto _ : state)
        benchmark::DoNotOptimize(dsem::structural_entropy(g, partition));
}

void bm_run_dsem(benchmark::State& state) {
    const dsem::PlantedDialogue pd = make_planted(static_cast<int>(state.range(0)));
    const dsem::WeightedGraph g = dsem::build_dialogue_graph(pd.dialogue, pd.embeddings);
    for (auto _ : state)
        benchmark::DoNotOptimize(dsem::run_dsem(g, dsem::DsemConfig{}));
}

void bm_brute_force(benchmark::State& state) {
    const dsem::WeightedGraph g =
        random_graph(static_cast<int>(state.range(0)), 23);
    for (auto _ : state)
        benchmark::DoNotOptimize(dsem::brute_force_min_se(g));
}

}  // namespace

BENCHMARK(bm_thread_closure)->Arg(25)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(bm_build_dialogue_graph)->Arg(25)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(bm_structural_entropy)->Arg(25)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(bm_run_dsem)->Arg(25)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_brute_force)->Arg(6)->Arg(7)->Arg(8)->Arg(9)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
