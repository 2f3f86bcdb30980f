#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dsem/dialogue.hpp"
#include "dsem/graph.hpp"
#include "dsem/minimizer.hpp"

namespace dsem {

// File formats. All structured-text files are JSON; read errors surface as
// parse_error. Writers emit a fixed field order and fixed number formatting,
// so identical data produces byte-identical files.
//
//   dialogue    object with doc_id, sentences, speakers, replies and an
//               optional planted label array; unknown fields are ignored
//   embeddings  binary: magic "SEMD", u32 LE row count, u32 LE dimension,
//               then rows * dim little-endian f32 values row-major; or JSON
//               with fields dim and vectors
//   graph       object with n and edges, each edge a [u, v, w] triple
//               (u == v adds a self-loop)

Dialogue read_dialogue_file(const std::filesystem::path& path);

void write_dialogue_file(const std::filesystem::path& path, const Dialogue& d,
                         const std::vector<std::string>* planted = nullptr);

EmbeddingMatrix read_embeddings_file(const std::filesystem::path& path);

void write_embeddings_file(const std::filesystem::path& path, const EmbeddingMatrix& e);

WeightedGraph read_graph_file(const std::filesystem::path& path);

void write_graph_file(const std::filesystem::path& path, const WeightedGraph& g);

// Result of one partitioning run, as written by the command line tool.
struct PartitionReport {
    std::string doc_id;
    double sigma = 0.15;
    double entropy_1d = 0.0;
    double entropy_final = 0.0;
    int rounds = 0;
    SubDialogueSet sub_dialogues;
    std::optional<MergeTrace> trace;
};

// Deterministic JSON text of a report; reals carry 9 decimal digits.
std::string render_partition_report(const PartitionReport& report);

void write_partition_report(const std::filesystem::path& path, const PartitionReport& report);

}  // namespace dsem
