#include "forge/pipeline.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include "forge/rng.hpp"

namespace forge {

namespace fs = std::filesystem;

ExternalShuffler::ExternalShuffler(size_t max_lines_in_memory) : max_lines_(max_lines_in_memory) {}

ExternalShuffler::~ExternalShuffler() {
    std::error_code ec;
    if (!spill_dir_.empty()) fs::remove_all(spill_dir_, ec);
}

void ExternalShuffler::add(uint64_t key, uint64_t seq, std::string line) {
    buffer_.push_back({key, seq, std::move(line)});
    if (!spilled_ && buffer_.size() >= max_lines_) spill();
    if (spilled_ && buffer_.size() >= (max_lines_ / kShards) + 1) flush_to_shards();
}

void ExternalShuffler::spill() {
    static std::atomic<unsigned> counter{0};
    spill_dir_ = fs::temp_directory_path() /
                 ("forge-shuffle-" + std::to_string(::getpid()) + "-" +
                  std::to_string(counter.fetch_add(1)));
    fs::create_directories(spill_dir_);
    shards_.resize(kShards);
    for (int i = 0; i < kShards; ++i) {
        shards_[i].open(spill_dir_ / ("shard" + std::to_string(i)), std::ios::binary);
        if (!shards_[i]) throw std::runtime_error("cannot open shuffle spill file");
    }
    spilled_ = true;
    flush_to_shards();
}

void ExternalShuffler::flush_to_shards() {
    char head[34];
    for (const auto& e : buffer_) {
        int shard = static_cast<int>(e.key >> 58);  // top 6 bits
        std::snprintf(head, sizeof head, "%016llx%016llx",
                      static_cast<unsigned long long>(e.key),
                      static_cast<unsigned long long>(e.seq));
        shards_[shard] << head << e.line << '\n';
    }
    buffer_.clear();
}

void ExternalShuffler::drain(const std::function<void(const std::string&)>& emit) {
    auto order = [](const Entry& a, const Entry& b) {
        return a.key != b.key ? a.key < b.key : a.seq < b.seq;
    };
    if (!spilled_) {
        std::sort(buffer_.begin(), buffer_.end(), order);
        for (const auto& e : buffer_) emit(e.line);
        buffer_.clear();
        return;
    }
    flush_to_shards();
    for (auto& s : shards_) s.close();
    for (int i = 0; i < kShards; ++i) {
        std::ifstream in(spill_dir_ / ("shard" + std::to_string(i)), std::ios::binary);
        std::vector<Entry> entries;
        std::string line;
        while (std::getline(in, line)) {
            if (line.size() < 32) continue;
            Entry e;
            e.key = std::stoull(line.substr(0, 16), nullptr, 16);
            e.seq = std::stoull(line.substr(16, 16), nullptr, 16);
            e.line = line.substr(32);
            entries.push_back(std::move(e));
        }
        std::sort(entries.begin(), entries.end(), order);
        for (const auto& e : entries) emit(e.line);
    }
}

namespace {

struct RawLine {
    long line_no;
    std::string text;
};

struct Outcome {
    enum Kind { Pair, Invalid, TooLong } kind = Pair;
    std::string text;  // serialized pair line, or the error reason
    uint64_t key = 0;  // shuffle key (mix path)
};

constexpr size_t kChunkLines = 2048;

// Reads up to kChunkLines non-empty lines.
bool read_chunk(std::ifstream& in, long& line_no, std::vector<RawLine>& chunk) {
    chunk.clear();
    std::string line;
    while (chunk.size() < kChunkLines && std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        chunk.push_back({line_no, std::move(line)});
    }
    return !chunk.empty();
}

// Applies fn to every chunk index on `threads` workers; fn must only touch
// its own index's outcome slot.
void parallel_over(size_t count, int threads, const std::function<void(size_t)>& fn) {
    int t = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (t == 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (int w = 0; w < t; ++w) {
        pool.emplace_back([&, w] {
            for (size_t i = w; i < count; i += t) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

CorpusReport generate_file(const std::string& input, const std::string& output,
                           const GenerateOptions& opts) {
    if (!schema_provides(opts.schema, task_needs(opts.task.kind)))
        throw std::invalid_argument(
            std::string(task_name(opts.task.kind)) + ": " +
            (task_needs(opts.task.kind) == Needs::Bunsetsu ? "bunsetsu annotation required"
                                                           : "parse tree required") +
            " (declare --schema accordingly)");

    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open corpus file: " + input);
    PairWriter writer(output);
    CorpusReport report;

    long line_no = 0;
    std::vector<RawLine> chunk;
    std::vector<Outcome> outcomes;
    while (read_chunk(in, line_no, chunk)) {
        outcomes.assign(chunk.size(), {});
        parallel_over(chunk.size(), opts.threads, [&](size_t i) {
            Outcome& out = outcomes[i];
            try {
                AnnotatedSentence s = parse_sentence_line(chunk[i].text, opts.schema);
                if (!keep_length(s, opts.max_tokens)) {
                    out.kind = Outcome::TooLong;
                    return;
                }
                uint64_t seed = derive_seed(stable_hash(opts.seed, s.id), kStreamGenerate);
                out.text = pair_to_json_line(make_task_pair(s, opts.task, seed));
            } catch (const std::exception& e) {
                out.kind = Outcome::Invalid;
                out.text = e.what();
            }
        });
        for (size_t i = 0; i < chunk.size(); ++i) {
            ++report.total;
            switch (outcomes[i].kind) {
                case Outcome::Pair:
                    ++report.kept;
                    writer.write_line(outcomes[i].text);
                    break;
                case Outcome::TooLong: ++report.dropped_too_long; break;
                case Outcome::Invalid:
                    if (opts.policy == ErrorPolicy::FailFast)
                        throw CorpusError(chunk[i].line_no, outcomes[i].text);
                    ++report.dropped_invalid;
                    ++report.invalid_reasons[outcomes[i].text];
                    break;
            }
        }
    }
    writer.close();
    return report;
}

CorpusReport mix_files(const MixRecipe& recipe, const std::string& output, int threads,
                       size_t shuffle_memory_lines) {
    for (const auto& plan : recipe.languages) {
        for (const auto& t : plan.tasks)
            if (!schema_provides(plan.schema, task_needs(t.spec.kind)))
                throw std::invalid_argument("language '" + plan.lang + "': task " +
                                            task_name(t.spec.kind) +
                                            " needs annotations the declared schema '" +
                                            schema_name(plan.schema) + "' does not provide");
        if (plan.input.empty())
            throw std::invalid_argument("language '" + plan.lang + "' has no input path");
    }

    ExternalShuffler shuffler(shuffle_memory_lines);
    CorpusReport report;
    uint64_t seq = 0;

    for (const auto& plan : recipe.languages) {
        std::ifstream in(plan.input);
        if (!in) throw std::runtime_error("cannot open corpus file: " + plan.input);
        long line_no = 0;
        std::vector<RawLine> chunk;
        std::vector<Outcome> outcomes;
        while (read_chunk(in, line_no, chunk)) {
            outcomes.assign(chunk.size(), {});
            parallel_over(chunk.size(), threads, [&](size_t i) {
                Outcome& out = outcomes[i];
                try {
                    AnnotatedSentence s = parse_sentence_line(chunk[i].text, plan.schema);
                    if (!keep_length(s, recipe.max_tokens)) {
                        out.kind = Outcome::TooLong;
                        return;
                    }
                    std::string err;
                    auto routed = route_sentence(s, plan, recipe, &err);
                    if (!routed) {
                        out.kind = Outcome::Invalid;
                        out.text = err;
                        return;
                    }
                    out.text = pair_to_json_line(routed->pair);
                    out.key = routed->shuffle_key;
                } catch (const std::exception& e) {
                    out.kind = Outcome::Invalid;
                    out.text = e.what();
                }
            });
            for (size_t i = 0; i < chunk.size(); ++i) {
                ++report.total;
                switch (outcomes[i].kind) {
                    case Outcome::Pair:
                        ++report.kept;
                        shuffler.add(outcomes[i].key, seq++, std::move(outcomes[i].text));
                        break;
                    case Outcome::TooLong: ++report.dropped_too_long; break;
                    case Outcome::Invalid:
                        if (recipe.policy == ErrorPolicy::FailFast)
                            throw CorpusError(chunk[i].line_no,
                                              plan.input + ": " + outcomes[i].text);
                        ++report.dropped_invalid;
                        ++report.invalid_reasons[outcomes[i].text];
                        break;
                }
            }
        }
    }

    PairWriter writer(output);
    shuffler.drain([&](const std::string& line) { writer.write_line(line); });
    writer.close();
    return report;
}

CorpusReport validate_file(const std::string& input, Schema schema, ErrorPolicy policy,
                           std::optional<int> max_tokens) {
    CorpusReader reader(input, schema, policy, max_tokens);
    while (reader.next()) {
    }
    return reader.report();
}

}  // namespace forge
