#include "dsem/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dsem/error.hpp"

namespace dsem {

namespace {

using nlohmann::json;

constexpr char kEmbeddingMagic[4] = {'S', 'E', 'M', 'D'};

std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw parse_error("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void write_file_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw parse_error("cannot open " + path.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw parse_error("failed writing " + path.string());
}

json parse_json(const std::string& text, const std::filesystem::path& path) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw parse_error("invalid JSON in " + path.string());
    return j;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (unsigned char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\b': out += "\\b"; break;
        case '\f': out += "\\f"; break;
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

// Fixed 9-decimal rendering keeps report files byte-identical across runs.
void append_real(std::string& out, double x) {
    if (x == 0.0)
        x = 0.0;  // never print a negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", x);
    out += buf;
}

void append_int_list(std::string& out, const std::vector<int>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ", ";
        out += std::to_string(values[i]);
    }
    out += ']';
}

void append_string_list(std::string& out, const std::vector<std::string>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out += ", ";
        out += '"';
        out += json_escape(values[i]);
        out += '"';
    }
    out += ']';
}

std::uint32_t read_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

void append_u32_le(std::string& out, std::uint32_t v) {
    out += static_cast<char>(v & 0xff);
    out += static_cast<char>((v >> 8) & 0xff);
    out += static_cast<char>((v >> 16) & 0xff);
    out += static_cast<char>((v >> 24) & 0xff);
}

EmbeddingMatrix parse_binary_embeddings(const std::string& bytes,
                                        const std::filesystem::path& path) {
    if (bytes.size() < 12)
        throw parse_error("truncated embedding file " + path.string());
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::uint64_t rows = read_u32_le(p + 4);
    const std::uint64_t cols = read_u32_le(p + 8);
    if (rows < 1 || cols < 1)
        throw parse_error("embedding file " + path.string() +
                          " declares an empty matrix");
    const std::uint64_t expected = 12 + 4 * rows * cols;
    if (bytes.size() != expected)
        throw parse_error("embedding file " + path.string() + " has " +
                          std::to_string(bytes.size()) + " bytes, expected " +
                          std::to_string(expected));
    EmbeddingMatrix e;
    e.rows = static_cast<int>(rows);
    e.cols = static_cast<int>(cols);
    e.values.resize(rows * cols);
    for (std::uint64_t i = 0; i < rows * cols; ++i) {
        const float f = std::bit_cast<float>(read_u32_le(p + 12 + 4 * i));
        if (!std::isfinite(f))
            throw parse_error("non-finite embedding value in " + path.string());
        e.values[i] = static_cast<double>(f);
    }
    return e;
}

EmbeddingMatrix parse_json_embeddings(const std::string& text,
                                      const std::filesystem::path& path) {
    const json j = parse_json(text, path);
    if (!j.is_object() || !j.contains("dim") || !j.contains("vectors"))
        throw parse_error("embedding file " + path.string() +
                          " must carry fields dim and vectors");
    if (!j["dim"].is_number_integer() || j["dim"].get<int>() < 1)
        throw parse_error("invalid dim in " + path.string());
    const int dim = j["dim"].get<int>();
    const json& vectors = j["vectors"];
    if (!vectors.is_array() || vectors.empty())
        throw parse_error("vectors must be a non-empty array in " + path.string());
    EmbeddingMatrix e;
    e.rows = static_cast<int>(vectors.size());
    e.cols = dim;
    e.values.reserve(vectors.size() * static_cast<std::size_t>(dim));
    for (const json& row : vectors) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw parse_error("every vector must have length dim in " + path.string());
        for (const json& x : row) {
            if (!x.is_number())
                throw parse_error("non-numeric embedding value in " + path.string());
            const double value = x.get<double>();
            if (!std::isfinite(value))
                throw parse_error("non-finite embedding value in " + path.string());
            e.values.push_back(value);
        }
    }
    return e;
}

}  // namespace

Dialogue read_dialogue_file(const std::filesystem::path& path) {
    const json j = parse_json(read_file_bytes(path), path);
    if (!j.is_object())
        throw parse_error("dialogue file " + path.string() + " must hold a JSON object");
    for (const char* field : {"doc_id", "sentences", "speakers", "replies"}) {
        if (!j.contains(field))
            throw parse_error("dialogue file " + path.string() + " lacks field " + field);
    }
    Dialogue d;
    if (!j["doc_id"].is_string())
        throw parse_error("doc_id must be a string in " + path.string());
    d.doc_id = j["doc_id"].get<std::string>();
    for (const auto& [field, target] :
         {std::pair<const char*, std::vector<std::string>*>{"sentences", &d.utterances},
          {"speakers", &d.speakers}}) {
        const json& arr = j[field];
        if (!arr.is_array())
            throw parse_error(std::string(field) + " must be an array in " + path.string());
        for (const json& x : arr) {
            if (!x.is_string())
                throw parse_error(std::string(field) + " must hold strings in " +
                                  path.string());
            target->push_back(x.get<std::string>());
        }
    }
    if (!j["replies"].is_array())
        throw parse_error("replies must be an array in " + path.string());
    for (const json& x : j["replies"]) {
        if (!x.is_number_integer())
            throw parse_error("replies must hold integers in " + path.string());
        d.replies.push_back(x.get<int>());
    }
    try {
        validate_dialogue(d);
    } catch (const std::invalid_argument& e) {
        throw parse_error("invalid dialogue in " + path.string() + ": " + e.what());
    }
    return d;
}

void write_dialogue_file(const std::filesystem::path& path, const Dialogue& d,
                         const std::vector<std::string>* planted) {
    validate_dialogue(d);
    if (planted && planted->size() != d.replies.size())
        throw std::invalid_argument("planted labels must match the dialogue length");
    std::string out;
    out += "{\n  \"doc_id\": \"";
    out += json_escape(d.doc_id);
    out += "\",\n  \"sentences\": ";
    append_string_list(out, d.utterances);
    out += ",\n  \"speakers\": ";
    append_string_list(out, d.speakers);
    out += ",\n  \"replies\": ";
    append_int_list(out, d.replies);
    if (planted) {
        out += ",\n  \"planted\": ";
        append_string_list(out, *planted);
    }
    out += "\n}\n";
    write_file_bytes(path, out);
}

EmbeddingMatrix read_embeddings_file(const std::filesystem::path& path) {
    const std::string bytes = read_file_bytes(path);
    if (bytes.size() >= 4 && std::equal(kEmbeddingMagic, kEmbeddingMagic + 4, bytes.data()))
        return parse_binary_embeddings(bytes, path);
    return parse_json_embeddings(bytes, path);
}

void write_embeddings_file(const std::filesystem::path& path, const EmbeddingMatrix& e) {
    if (e.rows < 1 || e.cols < 1)
        throw std::invalid_argument("embedding matrix must be non-empty");
    if (e.values.size() !=
        static_cast<std::size_t>(e.rows) * static_cast<std::size_t>(e.cols))
        throw std::invalid_argument("embedding value count does not match rows * cols");
    std::string out;
    out.reserve(12 + 4 * e.values.size());
    out.append(kEmbeddingMagic, 4);
    append_u32_le(out, static_cast<std::uint32_t>(e.rows));
    append_u32_le(out, static_cast<std::uint32_t>(e.cols));
    for (double v : e.values)
        append_u32_le(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
    write_file_bytes(path, out);
}

WeightedGraph read_graph_file(const std::filesystem::path& path) {
    const json j = parse_json(read_file_bytes(path), path);
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw parse_error("graph file " + path.string() + " must carry fields n and edges");
    if (!j["n"].is_number_integer() || j["n"].get<int>() < 1)
        throw parse_error("graph file " + path.string() + " needs n >= 1");
    if (!j["edges"].is_array())
        throw parse_error("edges must be an array in " + path.string());
    WeightedGraph g(j["n"].get<int>());
    for (const json& e : j["edges"]) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() ||
            !e[1].is_number_integer() || !e[2].is_number())
            throw parse_error("every edge must be a [u, v, w] triple in " + path.string());
        try {
            g.add_edge(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
        } catch (const std::invalid_argument& err) {
            throw parse_error("invalid edge in " + path.string() + ": " + err.what());
        }
    }
    return g;
}

void write_graph_file(const std::filesystem::path& path, const WeightedGraph& g) {
    std::string out;
    out += "{\n  \"n\": ";
    out += std::to_string(g.num_vertices());
    out += ",\n  \"edges\": [";
    bool first = true;
    for (const auto& [key, w] : g.edges()) {
        if (!first)
            out += ", ";
        first = false;
        char buf[64];
        std::snprintf(buf, sizeof buf, "[%d, %d, %.17g]", key.first, key.second, w);
        out += buf;
    }
    out += "]\n}\n";
    write_file_bytes(path, out);
}

std::string render_partition_report(const PartitionReport& report) {
    std::string out;
    out += "{\n  \"doc_id\": \"";
    out += json_escape(report.doc_id);
    out += "\",\n  \"sigma\": ";
    append_real(out, report.sigma);
    out += ",\n  \"entropy_1d\": ";
    append_real(out, report.entropy_1d);
    out += ",\n  \"entropy_final\": ";
    append_real(out, report.entropy_final);
    out += ",\n  \"rounds\": ";
    out += std::to_string(report.rounds);
    out += ",\n  \"sub_dialogues\": [";
    for (std::size_t i = 0; i < report.sub_dialogues.size(); ++i) {
        if (i)
            out += ", ";
        append_int_list(out, report.sub_dialogues[i]);
    }
    out += ']';
    if (report.trace) {
        const MergeTrace& trace = *report.trace;
        out += ",\n  \"trace\": {\n    \"se_initial\": ";
        append_real(out, trace.se_initial);
        out += ",\n    \"se_final\": ";
        append_real(out, trace.se_final);
        out += ",\n    \"truncated\": ";
        out += trace.truncated ? "true" : "false";
        out += ",\n    \"rounds\": [";
        for (std::size_t r = 0; r < trace.rounds.size(); ++r) {
            const RoundRecord& round = trace.rounds[r];
            out += r ? ",\n      " : "\n      ";
            out += "{\"round\": ";
            out += std::to_string(r + 1);
            out += ", \"se_before\": ";
            append_real(out, round.se_before);
            out += ", \"se_after\": ";
            append_real(out, round.se_after);
            out += ", \"merges\": [";
            for (std::size_t m = 0; m < round.merges.size(); ++m) {
                const MergeCandidate& merge = round.merges[m];
                if (m)
                    out += ", ";
                out += "{\"a\": ";
                out += std::to_string(merge.a);
                out += ", \"b\": ";
                out += std::to_string(merge.b);
                out += ", \"gain\": ";
                append_real(out, merge.gain);
                out += '}';
            }
            out += "]}";
        }
        out += trace.rounds.empty() ? "]" : "\n    ]";
        out += "\n  }";
    }
    out += "\n}\n";
    return out;
}

void write_partition_report(const std::filesystem::path& path,
                            const PartitionReport& report) {
    write_file_bytes(path, render_partition_report(report));
}

}  // namespace dsem
