#include "forge/mixer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "forge/rng.hpp"

namespace forge {

using json = nlohmann::json;

namespace {

std::string normalize_preset(std::string name) {
    std::string out;
    for (char c : name) {
        if (c == '_' || c == '-') c = '+';
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

TaskChoice choice(TaskKind kind, double weight = 1.0) {
    TaskChoice c;
    c.spec.kind = kind;
    c.weight = weight;
    return c;
}

}  // namespace

std::vector<TaskChoice> preset_tasks(const std::string& preset, const std::string& lang) {
    std::string p = normalize_preset(preset);
    if (p == "jass") {
        if (lang == "ja") return {choice(TaskKind::Bmass), choice(TaskKind::Brss)};
        return {choice(TaskKind::Mass)};
    }
    if (p == "enss") {
        if (lang == "en") return {choice(TaskKind::Mass), choice(TaskKind::Hfss)};
        return {choice(TaskKind::Mass)};
    }
    if (p == "jass+enss") {
        if (lang == "ja") return {choice(TaskKind::Bmass), choice(TaskKind::Brss)};
        if (lang == "en") return {choice(TaskKind::Mass), choice(TaskKind::Hfss)};
        return {choice(TaskKind::Mass)};
    }
    if (p == "mass+jass" || p == "mass+plus+jass") {
        if (lang == "ja")
            return {choice(TaskKind::Mass), choice(TaskKind::Bmass), choice(TaskKind::Brss)};
        return {choice(TaskKind::Mass)};
    }
    if (p == "mass+deshuffle" || p == "mass+deshuffle+baseline")
        return {choice(TaskKind::Mass), choice(TaskKind::Deshuffle)};
    throw std::invalid_argument("unknown preset '" + preset + "'");
}

MixRecipe parse_recipe_json(const std::string& text) {
    json j = json::parse(text);
    MixRecipe r;
    if (j.contains("seed")) r.seed = j["seed"].get<uint64_t>();
    if (j.contains("tag_policy")) r.tag_policy = tag_policy_from_string(j["tag_policy"]);
    if (j.contains("tag_placement")) r.placement = tag_placement_from_string(j["tag_placement"]);
    if (j.contains("max_tokens")) r.max_tokens = j["max_tokens"].get<int>();
    if (j.contains("policy"))
        r.policy = j["policy"] == "fail-fast" ? ErrorPolicy::FailFast : ErrorPolicy::Skip;

    std::string preset = j.value("preset", "");
    if (!j.contains("languages") || !j["languages"].is_array() || j["languages"].empty())
        throw std::invalid_argument("recipe needs a non-empty \"languages\" array");

    for (const auto& lj : j["languages"]) {
        LangPlan plan;
        plan.lang = lj.at("lang").get<std::string>();
        plan.input = lj.value("input", "");
        plan.schema = schema_from_string(lj.value("schema", "plain"));
        if (lj.contains("tasks")) {
            for (const auto& tj : lj["tasks"]) {
                TaskChoice c;
                c.spec.kind = task_from_string(tj.at("task").get<std::string>());
                c.weight = tj.value("weight", 1.0);
                if (c.weight <= 0) throw std::invalid_argument("task weights must be positive");
                if (tj.contains("ratio")) c.spec.ratio = tj["ratio"].get<double>();
                if (tj.contains("lambda")) c.spec.infill_lambda = tj["lambda"].get<double>();
                if (tj.contains("infill_ratio"))
                    c.spec.infill_ratio = tj["infill_ratio"].get<double>();
                if (tj.contains("direction"))
                    c.spec.direction = direction_from_string(tj["direction"].get<std::string>());
                plan.tasks.push_back(std::move(c));
            }
        } else if (!preset.empty()) {
            plan.tasks = preset_tasks(preset, plan.lang);
        } else {
            throw std::invalid_argument("language '" + plan.lang +
                                        "' has no tasks and the recipe names no preset");
        }
        r.languages.push_back(std::move(plan));
    }
    return r;
}

MixRecipe load_recipe(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open recipe file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_recipe_json(ss.str());
}

uint64_t sentence_base_seed(uint64_t recipe_seed, const std::string& lang, const std::string& id) {
    return stable_hash(stable_hash(recipe_seed, lang), id);
}

size_t route_task(const std::vector<TaskChoice>& tasks, uint64_t route_seed) {
    if (tasks.empty()) throw std::invalid_argument("empty task list");
    if (tasks.size() == 1) return 0;
    double total = 0;
    for (const auto& t : tasks) total += t.weight;
    Rng rng(route_seed);
    double r = rng.next_double() * total;
    double acc = 0;
    for (size_t i = 0; i < tasks.size(); ++i) {
        acc += tasks[i].weight;
        if (r < acc) return i;
    }
    return tasks.size() - 1;
}

std::optional<RoutedPair> route_sentence(const AnnotatedSentence& s, const LangPlan& plan,
                                         const MixRecipe& recipe, std::string* error) {
    uint64_t base = sentence_base_seed(recipe.seed, plan.lang, s.id);
    size_t ti = route_task(plan.tasks, derive_seed(base, kStreamRoute));
    const TaskSpec& spec = plan.tasks[ti].spec;
    try {
        PretrainPair pair = make_task_pair(s, spec, derive_seed(base, kStreamGenerate));
        RoutedPair out;
        out.pair = apply_tags(std::move(pair), spec.kind, recipe.tag_policy, recipe.placement);
        out.shuffle_key = derive_seed(base, kStreamShuffle);
        return out;
    } catch (const MissingAnnotation& e) {
        if (error) *error = e.what();
        return std::nullopt;
    }
}

std::vector<PretrainPair> expand_recipe(
    const MixRecipe& recipe, const std::map<std::string, std::vector<AnnotatedSentence>>& corpora,
    CorpusReport* report) {
    struct Keyed {
        uint64_t key;
        uint64_t seq;
        PretrainPair pair;
    };
    std::vector<Keyed> keyed;
    uint64_t seq = 0;
    CorpusReport rep;
    for (const auto& plan : recipe.languages) {
        auto it = corpora.find(plan.lang);
        if (it == corpora.end()) throw std::runtime_error("no corpus for language " + plan.lang);
        for (const auto& s : it->second) {
            ++rep.total;
            if (!keep_length(s, recipe.max_tokens)) {
                ++rep.dropped_too_long;
                continue;
            }
            std::string err;
            auto routed = route_sentence(s, plan, recipe, &err);
            if (!routed) {
                if (recipe.policy == ErrorPolicy::FailFast)
                    throw std::runtime_error("sentence " + s.id + ": " + err);
                ++rep.dropped_invalid;
                ++rep.invalid_reasons[err];
                continue;
            }
            ++rep.kept;
            keyed.push_back({routed->shuffle_key, seq++, std::move(routed->pair)});
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return a.key != b.key ? a.key < b.key : a.seq < b.seq;
    });
    std::vector<PretrainPair> out;
    out.reserve(keyed.size());
    for (auto& k : keyed) out.push_back(std::move(k.pair));
    if (report) *report = rep;
    return out;
}

}  // namespace forge
