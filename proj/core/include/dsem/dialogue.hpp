#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dsem/encoding_tree.hpp"
#include "dsem/graph.hpp"

namespace dsem {

// A multi-turn dialogue. Utterance 0 is the root (the thread opener);
// replies[i] is the index of the utterance i replies to, with replies[0]
// fixed at -1 and replies[i] < i for every later utterance.
struct Dialogue {
    std::string doc_id;
    std::vector<std::string> utterances;
    std::vector<std::string> speakers;
    std::vector<int> replies;

    int size() const { return static_cast<int>(replies.size()); }
};

// Throws std::invalid_argument on an empty reply list, replies[0] != -1, or
// a reply index outside [0, i).
void validate_replies(const std::vector<int>& replies);

// validate_replies plus equal lengths of utterances, speakers and replies.
void validate_dialogue(const Dialogue& d);

// Row-major matrix of utterance embeddings; row i belongs to utterance i.
struct EmbeddingMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    std::span<const double> row(int i) const;
};

// Cosine similarity. Throws std::invalid_argument on mismatched lengths or a
// zero-norm vector.
double cosine(std::span<const double> a, std::span<const double> b);

// All ancestor-descendant pairs (u, v) with u < v of the reply tree, sorted
// ascending. Sibling utterances never form a pair.
std::vector<std::pair<int, int>> thread_closure(const std::vector<int>& replies);

// Builds the utterance graph the minimizer runs on: one vertex per
// utterance, an edge for every thread-closure pair weighted by
// max(cosine of the two embedding rows, 0) and stored only when positive,
// plus a self-loop of weight 1 on every vertex.
//
// Throws mismatch_error if the embedding row count differs from the dialogue
// length and std::invalid_argument on a zero-norm embedding row.
WeightedGraph build_dialogue_graph(const Dialogue& d, const EmbeddingMatrix& e);

// A set of sub-dialogues: sorted vertex lists, each containing the root.
using SubDialogueSet = std::vector<std::vector<int>>;

// Converts a partition of the utterances into sub-dialogues by adding the
// root utterance 0 to every cluster. A cluster holding only the root is
// dropped when other clusters exist. Output lists are sorted ascending and
// ordered lexicographically.
SubDialogueSet attach_root(const TwoLevelTree& t);

}  // namespace dsem
