#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsem/baselines.hpp"
#include "dsem/dialogue.hpp"
#include "dsem/encoding_tree.hpp"
#include "dsem/error.hpp"
#include "dsem/graph.hpp"
#include "dsem/io.hpp"
#include "dsem/minimizer.hpp"
#include "dsem/verification.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_malformed = 2;
constexpr int exit_mismatch = 3;
constexpr int exit_size_bound = 4;

std::string fixed9(double x) {
    if (x == 0.0)
        x = 0.0;  // never print a negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    return buf;
}

std::string escape_json(const std::string& s) {
    std::string out;
    for (unsigned char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += static_cast<char>(c);
            }
        }
    }
    return out;
}

std::string format_int_list(const std::vector<int>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ", ";
        out += std::to_string(values[i]);
    }
    out += ']';
    return out;
}

std::string format_clusters(const std::vector<std::vector<int>>& clusters) {
    std::string out = "[";
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        if (i)
            out += ", ";
        out += format_int_list(clusters[i]);
    }
    out += ']';
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw dsem::parse_error("cannot open " + out_path + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw dsem::parse_error("failed writing " + out_path);
}

// Inline partition notation: clusters split by ';', members by ','
// (for example "0,1;2,3").
dsem::TwoLevelTree parse_partition_spec(const std::string& spec) {
    dsem::TwoLevelTree t;
    std::istringstream clusters(spec);
    std::string cluster;
    while (std::getline(clusters, cluster, ';')) {
        std::vector<int> members;
        std::istringstream items(cluster);
        std::string item;
        while (std::getline(items, item, ',')) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(item, &used);
            } catch (const std::exception&) {
                throw dsem::parse_error("invalid vertex index '" + item +
                                        "' in partition spec");
            }
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size())
                throw dsem::parse_error("invalid vertex index '" + item +
                                        "' in partition spec");
            members.push_back(v);
        }
        if (members.empty())
            throw dsem::parse_error("empty cluster in partition spec");
        t.clusters.push_back(std::move(members));
    }
    if (t.clusters.empty())
        throw dsem::parse_error("empty partition spec");
    return t;
}

dsem::ReplyLayout parse_layout(const std::string& name) {
    return name == "misaligned" ? dsem::ReplyLayout::misaligned
                                : dsem::ReplyLayout::aligned;
}

struct PartitionArgs {
    std::string dialogue_path;
    std::string embeddings_path;
    std::string out_path;
    double sigma = 0.15;
    int max_rounds = 100000;
    bool trace = false;
};

int run_partition(const PartitionArgs& args) {
    const dsem::Dialogue dialogue = dsem::read_dialogue_file(args.dialogue_path);
    const dsem::EmbeddingMatrix embeddings =
        dsem::read_embeddings_file(args.embeddings_path);
    const dsem::WeightedGraph graph = dsem::build_dialogue_graph(dialogue, embeddings);

    dsem::DsemConfig cfg;
    cfg.sigma = args.sigma;
    cfg.max_rounds = args.max_rounds;
    const dsem::DsemResult result = dsem::run_dsem(graph, cfg);

    dsem::PartitionReport report;
    report.doc_id = dialogue.doc_id;
    report.sigma = cfg.sigma;
    report.entropy_1d = result.trace.se_initial;
    report.entropy_final = result.trace.se_final;
    report.rounds = static_cast<int>(result.trace.rounds.size());
    report.sub_dialogues = dsem::attach_root(result.partition);
    if (args.trace)
        report.trace = result.trace;
    emit(dsem::render_partition_report(report), args.out_path);
    return exit_ok;
}

struct EntropyArgs {
    std::string graph_path;
    std::string partition_spec;
};

int run_entropy(const EntropyArgs& args) {
    const dsem::WeightedGraph graph = dsem::read_graph_file(args.graph_path);
    double se = 0.0;
    if (args.partition_spec.empty()) {
        se = dsem::one_dim_entropy(graph);
    } else {
        const dsem::TwoLevelTree t = parse_partition_spec(args.partition_spec);
        se = dsem::structural_entropy(graph, t);
    }
    std::fputs((fixed9(se) + "\n").c_str(), stdout);
    return exit_ok;
}

struct OracleArgs {
    std::string graph_path;
};

int run_oracle(const OracleArgs& args) {
    const dsem::WeightedGraph graph = dsem::read_graph_file(args.graph_path);
    const dsem::OracleResult result = dsem::brute_force_min_se(graph);
    std::fputs(("partition: " + format_clusters(result.partition.clusters) + "\n")
                   .c_str(),
               stdout);
    std::fputs(("se_bits: " + fixed9(result.se) + "\n").c_str(), stdout);
    return exit_ok;
}

struct SynthArgs {
    std::vector<int> sizes;
    int dim = 16;
    double noise = 0.1;
    std::uint64_t seed = 0;
    std::string layout = "aligned";
    std::string out_prefix;
};

int run_synth(const SynthArgs& args) {
    dsem::SynthConfig cfg;
    cfg.cluster_sizes = args.sizes;
    cfg.dim = args.dim;
    cfg.intra_noise = args.noise;
    cfg.seed = args.seed;
    cfg.layout = parse_layout(args.layout);
    const dsem::PlantedDialogue pd = dsem::synth_dialogue(cfg);

    const std::filesystem::path dialogue_path = args.out_prefix + ".dialogue.json";
    const std::filesystem::path embeddings_path = args.out_prefix + ".embeddings.semd";
    dsem::write_dialogue_file(dialogue_path, pd.dialogue, &pd.planted);
    dsem::write_embeddings_file(embeddings_path, pd.embeddings);
    std::fputs(("wrote " + dialogue_path.string() + "\n").c_str(), stdout);
    std::fputs(("wrote " + embeddings_path.string() + "\n").c_str(), stdout);
    return exit_ok;
}

struct BaselineArgs {
    std::string method;
    std::string dialogue_path;
    std::string embeddings_path;
    std::string out_path;
    int k = 3;
    std::uint64_t seed = 0;
};

int run_baseline(const BaselineArgs& args) {
    std::string out;
    if (args.method == "reply") {
        if (args.dialogue_path.empty())
            throw dsem::parse_error("--method reply requires --dialogue");
        const dsem::Dialogue dialogue = dsem::read_dialogue_file(args.dialogue_path);
        const dsem::SubDialogueSet subs = dsem::reply_partition(dialogue);
        out += "{\n  \"method\": \"reply\",\n  \"doc_id\": \"";
        out += escape_json(dialogue.doc_id);
        out += "\",\n  \"sub_dialogues\": ";
        out += format_clusters(subs);
        out += "\n}\n";
    } else {
        if (args.embeddings_path.empty())
            throw dsem::parse_error("--method kmeans requires --embeddings");
        const dsem::EmbeddingMatrix embeddings =
            dsem::read_embeddings_file(args.embeddings_path);
        const dsem::Partition labels =
            dsem::kmeans_partition(embeddings, args.k, args.seed);
        out += "{\n  \"method\": \"kmeans\",\n  \"k\": ";
        out += std::to_string(args.k);
        out += ",\n  \"seed\": ";
        out += std::to_string(args.seed);
        out += ",\n  \"labels\": ";
        out += format_int_list(labels);
        out += "\n}\n";
    }
    emit(out, args.out_path);
    return exit_ok;
}

struct BenchArgs {
    std::vector<int> sizes;
    std::vector<double> sigmas{0.15};
    int seeds = 50;
    int dim = 16;
    double noise = 0.1;
    std::string layout = "both";
    std::string out_path;
};

struct BenchRow {
    std::string layout;
    double sigma = 0.0;
    double dsem_ari = 0.0;
    double reply_ari = 0.0;
    double kmeans_ari = 0.0;
    double mean_se_final = 0.0;
    double mean_rounds = 0.0;
    double wall_ms = 0.0;
};

BenchRow bench_cell(const BenchArgs& args, const std::string& layout, double sigma) {
    BenchRow row;
    row.layout = layout;
    row.sigma = sigma;
    const auto start = std::chrono::steady_clock::now();
    for (int seed = 0; seed < args.seeds; ++seed) {
        dsem::SynthConfig cfg;
        cfg.cluster_sizes = args.sizes;
        cfg.dim = args.dim;
        cfg.intra_noise = args.noise;
        cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.layout = parse_layout(layout);
        const dsem::PlantedDialogue pd = dsem::synth_dialogue(cfg);
        const dsem::Partition truth = dsem::planted_non_root_labels(pd);
        const int n = pd.dialogue.size();

        const dsem::WeightedGraph graph =
            dsem::build_dialogue_graph(pd.dialogue, pd.embeddings);
        dsem::DsemConfig dsem_cfg;
        dsem_cfg.sigma = sigma;
        const dsem::DsemResult result = dsem::run_dsem(graph, dsem_cfg);
        const dsem::Partition dsem_labels =
            dsem::non_root_labels(dsem::attach_root(result.partition), n);
        row.dsem_ari += dsem::adjusted_rand_index(dsem_labels, truth);
        row.mean_se_final += result.trace.se_final;
        row.mean_rounds += static_cast<double>(result.trace.rounds.size());

        const dsem::Partition reply_labels =
            dsem::non_root_labels(dsem::reply_partition(pd.dialogue), n);
        row.reply_ari += dsem::adjusted_rand_index(reply_labels, truth);

        // K-means sees the planted cluster count; its root-row label is
        // dropped so the comparison covers the same non-root vertices.
        const dsem::Partition kmeans_all = dsem::kmeans_partition(
            pd.embeddings, static_cast<int>(args.sizes.size()),
            static_cast<std::uint64_t>(seed));
        const dsem::Partition kmeans_labels(kmeans_all.begin() + 1, kmeans_all.end());
        row.kmeans_ari += dsem::adjusted_rand_index(kmeans_labels, truth);
    }
    const auto stop = std::chrono::steady_clock::now();
    const double count = static_cast<double>(args.seeds);
    row.dsem_ari /= count;
    row.reply_ari /= count;
    row.kmeans_ari /= count;
    row.mean_se_final /= count;
    row.mean_rounds /= count;
    row.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    return row;
}

int run_bench(const BenchArgs& args) {
    std::vector<std::string> layouts;
    if (args.layout == "both")
        layouts = {"aligned", "misaligned"};
    else
        layouts = {args.layout};

    std::vector<BenchRow> rows;
    for (const auto& layout : layouts) {
        for (double sigma : args.sigmas)
            rows.push_back(bench_cell(args, layout, sigma));
    }

    std::printf("%-11s %7s %12s %12s %12s %14s %12s %10s\n", "layout", "sigma",
                "dsem_ari", "reply_ari", "kmeans_ari", "mean_se_final",
                "mean_rounds", "wall_ms");
    for (const auto& row : rows) {
        std::printf("%-11s %7.3f %12.9f %12.9f %12.9f %14.9f %12.3f %10.1f\n",
                    row.layout.c_str(), row.sigma, row.dsem_ari, row.reply_ari,
                    row.kmeans_ari, row.mean_se_final, row.mean_rounds, row.wall_ms);
    }

    if (!args.out_path.empty()) {
        // The report file omits wall time so identical runs stay
        // byte-identical.
        std::string out = "{\n  \"sizes\": ";
        out += format_int_list(args.sizes);
        out += ",\n  \"dim\": ";
        out += std::to_string(args.dim);
        out += ",\n  \"noise\": ";
        out += fixed9(args.noise);
        out += ",\n  \"seeds\": ";
        out += std::to_string(args.seeds);
        out += ",\n  \"rows\": [";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const BenchRow& row = rows[i];
            out += i ? ",\n    " : "\n    ";
            out += "{\"layout\": \"" + row.layout + "\", \"sigma\": " + fixed9(row.sigma);
            out += ", \"dsem_ari\": " + fixed9(row.dsem_ari);
            out += ", \"reply_ari\": " + fixed9(row.reply_ari);
            out += ", \"kmeans_ari\": " + fixed9(row.kmeans_ari);
            out += ", \"mean_se_final\": " + fixed9(row.mean_se_final);
            out += ", \"mean_rounds\": " + fixed9(row.mean_rounds);
            out += '}';
        }
        out += "\n  ]\n}\n";
        emit(out, args.out_path);
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural-entropy dialogue partitioner"};
    app.require_subcommand(1);

    PartitionArgs partition_args;
    CLI::App* partition_cmd = app.add_subcommand(
        "partition", "Partition a dialogue into sub-dialogues");
    partition_cmd->add_option("--dialogue", partition_args.dialogue_path,
                              "Dialogue JSON file")->required();
    partition_cmd->add_option("--embeddings", partition_args.embeddings_path,
                              "Embedding file (SEMD binary or JSON)")->required();
    partition_cmd->add_option("--sigma", partition_args.sigma,
                              "Parallel merge ratio in (0, 1]")
        ->capture_default_str();
    partition_cmd->add_option("--max-rounds", partition_args.max_rounds,
                              "Safety cap on merge rounds")
        ->capture_default_str();
    partition_cmd->add_flag("--trace", partition_args.trace,
                            "Include per-round merges in the report");
    partition_cmd->add_option("--out", partition_args.out_path,
                              "Report file (stdout when omitted)");

    EntropyArgs entropy_args;
    CLI::App* entropy_cmd =
        app.add_subcommand("entropy", "Structural entropy of a graph file");
    entropy_cmd->add_option("--graph", entropy_args.graph_path, "Graph JSON file")
        ->required();
    entropy_cmd->add_option(
        "--partition", entropy_args.partition_spec,
        "Clusters as index lists, e.g. \"0,1;2,3\" (one-dimensional tree when "
        "omitted)");

    OracleArgs oracle_args;
    CLI::App* oracle_cmd = app.add_subcommand(
        "oracle", "Exhaustive minimum structural entropy (n <= 12)");
    oracle_cmd->add_option("--graph", oracle_args.graph_path, "Graph JSON file")
        ->required();

    SynthArgs synth_args;
    CLI::App* synth_cmd = app.add_subcommand(
        "synth", "Generate a planted-partition dialogue and embeddings");
    synth_cmd->add_option("--sizes", synth_args.sizes,
                          "Planted cluster sizes, e.g. 3,3")
        ->required()
        ->delimiter(',');
    synth_cmd->add_option("--dim", synth_args.dim, "Embedding dimension")
        ->capture_default_str();
    synth_cmd->add_option("--noise", synth_args.noise, "Intra-cluster noise scale")
        ->capture_default_str();
    synth_cmd->add_option("--seed", synth_args.seed, "Generator seed")
        ->capture_default_str();
    synth_cmd->add_option("--layout", synth_args.layout, "Reply tree layout")
        ->check(CLI::IsMember({"aligned", "misaligned"}))
        ->capture_default_str();
    synth_cmd->add_option("--out", synth_args.out_prefix,
                          "Output path prefix")->required();

    BaselineArgs baseline_args;
    CLI::App* baseline_cmd =
        app.add_subcommand("baseline", "Reply-tree or k-means partitioner");
    baseline_cmd->add_option("--method", baseline_args.method, "reply or kmeans")
        ->required()
        ->check(CLI::IsMember({"reply", "kmeans"}));
    baseline_cmd->add_option("--dialogue", baseline_args.dialogue_path,
                             "Dialogue JSON file (reply method)");
    baseline_cmd->add_option("--embeddings", baseline_args.embeddings_path,
                             "Embedding file (kmeans method)");
    baseline_cmd->add_option("--k", baseline_args.k, "Number of k-means clusters")
        ->capture_default_str();
    baseline_cmd->add_option("--seed", baseline_args.seed, "k-means seed")
        ->capture_default_str();
    baseline_cmd->add_option("--out", baseline_args.out_path,
                             "Output file (stdout when omitted)");

    BenchArgs bench_args;
    CLI::App* bench_cmd = app.add_subcommand(
        "bench", "Planted-partition benchmark over layouts, sigmas and seeds");
    bench_cmd->add_option("--sizes", bench_args.sizes,
                          "Planted cluster sizes, e.g. 3,3")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--sigmas", bench_args.sigmas,
                          "Comma-separated sigma values")
        ->delimiter(',')
        ->capture_default_str();
    bench_cmd->add_option("--seeds", bench_args.seeds,
                          "Number of seeds per table cell")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--dim", bench_args.dim, "Embedding dimension")
        ->capture_default_str();
    bench_cmd->add_option("--noise", bench_args.noise, "Intra-cluster noise scale")
        ->capture_default_str();
    bench_cmd->add_option("--layout", bench_args.layout, "Reply tree layout")
        ->check(CLI::IsMember({"aligned", "misaligned", "both"}))
        ->capture_default_str();
    bench_cmd->add_option("--out", bench_args.out_path,
                          "Deterministic report file (wall time excluded)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_malformed;
    }

    try {
        if (partition_cmd->parsed())
            return run_partition(partition_args);
        if (entropy_cmd->parsed())
            return run_entropy(entropy_args);
        if (oracle_cmd->parsed())
            return run_oracle(oracle_args);
        if (synth_cmd->parsed())
            return run_synth(synth_args);
        if (baseline_cmd->parsed())
            return run_baseline(baseline_args);
        if (bench_cmd->parsed())
            return run_bench(bench_args);
    } catch (const dsem::mismatch_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_mismatch;
    } catch (const dsem::size_bound_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_size_bound;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_malformed;
    }
    return exit_malformed;
}
