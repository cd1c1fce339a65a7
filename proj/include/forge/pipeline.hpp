#ifndef FORGE_PIPELINE_HPP
#define FORGE_PIPELINE_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/mixer.hpp"
#include "forge/tasks.hpp"

namespace forge {

// Deterministic shuffle for pair streams of any size: records are emitted
// in (key, seq) order. Small runs sort in memory; past the line limit the
// records spill into key-partitioned shard files so memory stays bounded.
class ExternalShuffler {
public:
    explicit ExternalShuffler(size_t max_lines_in_memory = 1u << 21);
    ~ExternalShuffler();

    void add(uint64_t key, uint64_t seq, std::string line);
    void drain(const std::function<void(const std::string&)>& emit);

private:
    struct Entry {
        uint64_t key;
        uint64_t seq;
        std::string line;
    };
    static constexpr int kShards = 64;

    size_t max_lines_;
    std::vector<Entry> buffer_;
    bool spilled_ = false;
    std::filesystem::path spill_dir_;
    std::vector<std::ofstream> shards_;

    void spill();
    void flush_to_shards();
};

struct GenerateOptions {
    TaskSpec task;
    Schema schema = Schema::Plain;
    int max_tokens = kDefaultMaxTokens;
    uint64_t seed = 0;
    int threads = 1;
    ErrorPolicy policy = ErrorPolicy::Skip;
};

// Streams sentences from input, builds one pair per kept sentence, writes
// pairs in input order. Output bytes are a pure function of (input bytes,
// options minus threads).
CorpusReport generate_file(const std::string& input, const std::string& output,
                           const GenerateOptions& opts);

// Routes every sentence of every recipe language to a weighted task, tags
// the pairs, and writes them in seeded-shuffle order.
CorpusReport mix_files(const MixRecipe& recipe, const std::string& output, int threads = 1,
                       size_t shuffle_memory_lines = 1u << 21);

// Validation pass: reads everything, returns the report (throws CorpusError
// under fail-fast).
CorpusReport validate_file(const std::string& input, Schema schema, ErrorPolicy policy,
                           std::optional<int> max_tokens = std::nullopt);

}  // namespace forge

#endif
