#ifndef FORGE_CORPUS_HPP
#define FORGE_CORPUS_HPP

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/subword.hpp"
#include "forge/tree.hpp"

namespace forge {

// One linguistically annotated monolingual sentence; the unit of all
// processing. Immutable after construction and safe to share across workers.
struct AnnotatedSentence {
    std::string id;
    std::string lang;
    std::vector<std::string> tokens;
    std::optional<std::vector<Span>> bunsetsu;  // sorted half-open spans tiling the tokens
    std::shared_ptr<const ParseTree> tree;

    int length() const { return static_cast<int>(tokens.size()); }
};

// One source/target pre-training pair; the unit of all output.
struct PretrainPair {
    std::string id;
    std::string task;  // tag string, e.g. "[MASS]"
    std::string lang;
    std::vector<std::string> src;
    std::vector<std::string> tgt;
    std::string variant;  // "P"/"S" for phrase masking, else empty

    bool operator==(const PretrainPair&) const = default;
};

struct CorpusReport {
    long total = 0;
    long kept = 0;
    long dropped_too_long = 0;
    long dropped_invalid = 0;
    std::map<std::string, long> invalid_reasons;

    std::string to_json() const;
};

enum class Schema { Plain, Bunsetsu, Tree };
enum class ErrorPolicy { FailFast, Skip };

Schema schema_from_string(const std::string& name);
const char* schema_name(Schema s);

struct CorpusError : std::runtime_error {
    long line_no;
    CorpusError(long line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_no(line) {}
};

// Checks every AnnotatedSentence invariant; returns an error message or
// empty string when valid.
std::string check_sentence(const AnnotatedSentence& s);

// Keep iff the sentence has at most max_tokens tokens ("more than" drops).
inline bool keep_length(const AnnotatedSentence& s, int max_tokens) {
    return s.length() <= max_tokens;
}
inline constexpr int kDefaultMaxTokens = 175;

// One JSONL record -> sentence, validated. Throws std::runtime_error with
// the parse/validation reason (no line prefix; the reader adds it).
AnnotatedSentence parse_sentence_line(const std::string& line, Schema schema);
std::string sentence_to_json_line(const AnnotatedSentence& s, Schema schema);

PretrainPair parse_pair_line(const std::string& line);
std::string pair_to_json_line(const PretrainPair& p);

// Streaming JSONL reader with per-line diagnostics. Invalid lines either
// abort (FailFast) or are counted and skipped. An optional length cap drops
// over-long sentences into the report's dropped_too_long bucket.
class CorpusReader {
public:
    CorpusReader(const std::string& path, Schema schema, ErrorPolicy policy = ErrorPolicy::Skip,
                 std::optional<int> max_tokens = std::nullopt);

    // Next kept sentence, or nullopt at end of file.
    std::optional<AnnotatedSentence> next();

    const CorpusReport& report() const { return report_; }
    long line_no() const { return line_no_; }

private:
    std::ifstream in_;
    Schema schema_;
    ErrorPolicy policy_;
    std::optional<int> max_tokens_;
    CorpusReport report_;
    long line_no_ = 0;
};

// Order-preserving JSONL pair writer; output is bit-identical across runs
// for an identical pair stream.
class PairWriter {
public:
    explicit PairWriter(const std::string& path);
    void write(const PretrainPair& p);
    void write_line(const std::string& line);  // pre-serialized record
    long count() const { return count_; }
    void close();

private:
    std::ofstream out_;
    std::string path_;
    long count_ = 0;
};

std::vector<AnnotatedSentence> read_all_sentences(const std::string& path, Schema schema,
                                                  ErrorPolicy policy = ErrorPolicy::FailFast);
std::vector<PretrainPair> read_all_pairs(const std::string& path);

}  // namespace forge

#endif
