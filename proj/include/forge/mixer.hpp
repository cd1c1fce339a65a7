#ifndef FORGE_MIXER_HPP
#define FORGE_MIXER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/tasks.hpp"

namespace forge {

// One weighted task entry in a language's task list.
struct TaskChoice {
    TaskSpec spec;
    double weight = 1.0;
};

struct LangPlan {
    std::string lang;
    std::string input;  // sentence JSONL path (may be empty for in-memory use)
    Schema schema = Schema::Plain;
    std::vector<TaskChoice> tasks;
};

// Declarative description of a multi-task dataset. Presets expand to the
// task combinations used in joint pre-training; languages a preset does not
// name fall back to plain single-span masking.
struct MixRecipe {
    uint64_t seed = 0;
    TagPolicy tag_policy = TagPolicy::Distinct;
    TagPlacement placement = TagPlacement::Split;
    ErrorPolicy policy = ErrorPolicy::Skip;
    int max_tokens = kDefaultMaxTokens;
    std::vector<LangPlan> languages;
};

// Known presets: jass (ja: bmass+brss), enss (en: mass+hfss), jass+enss,
// mass+jass (ja: mass+bmass+brss), mass+deshuffle (every language).
std::vector<TaskChoice> preset_tasks(const std::string& preset, const std::string& lang);

MixRecipe load_recipe(const std::string& path);
MixRecipe parse_recipe_json(const std::string& text);

// Deterministic per-sentence machinery. Every derived quantity depends only
// on (recipe seed, language, sentence id), so worker scheduling and shard
// boundaries cannot change the output.
uint64_t sentence_base_seed(uint64_t recipe_seed, const std::string& lang, const std::string& id);
inline constexpr uint64_t kStreamGenerate = 0;
inline constexpr uint64_t kStreamRoute = 1;
inline constexpr uint64_t kStreamShuffle = 2;

// Picks a task index by weight with one uniform draw.
size_t route_task(const std::vector<TaskChoice>& tasks, uint64_t route_seed);

// Routes one sentence, builds the pair, applies tags. Returns the tagged
// pair plus its shuffle key, or nullopt when the sentence lacks the routed
// task's annotation (caller counts/skips per policy).
struct RoutedPair {
    PretrainPair pair;
    uint64_t shuffle_key = 0;
};
std::optional<RoutedPair> route_sentence(const AnnotatedSentence& s, const LangPlan& plan,
                                         const MixRecipe& recipe, std::string* error);

// In-memory expansion: routes every sentence, then orders by shuffle key so
// contiguous windows mix objectives and languages. The streaming CLI path
// produces the same order via the external shuffler.
std::vector<PretrainPair> expand_recipe(
    const MixRecipe& recipe,
    const std::map<std::string, std::vector<AnnotatedSentence>>& corpora,
    CorpusReport* report = nullptr);

}  // namespace forge

#endif
