#include "forge/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "forge/manifest.hpp"
#include "forge/pipeline.hpp"
#include "forge/stats.hpp"

namespace forge::cli {

namespace {

uint64_t resolve_seed(const std::optional<uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("PRETRAIN_FORGE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("PRETRAIN_FORGE_SEED", "not an unsigned integer");
        }
    }
    return 0;
}

void emit_report(const CorpusReport& report, const std::string& report_path) {
    std::string body = report.to_json();
    if (report_path.empty()) {
        std::cout << body << '\n';
    } else {
        std::ofstream out(report_path, std::ios::binary);
        out << body << '\n';
    }
}

int cmd_validate(const std::string& input, const std::string& schema_name,
                 const std::string& policy_name, std::optional<int> max_len,
                 const std::string& report_path) {
    Schema schema = schema_from_string(schema_name);
    ErrorPolicy policy = policy_name == "skip" ? ErrorPolicy::Skip : ErrorPolicy::FailFast;
    try {
        CorpusReport report = validate_file(input, schema, policy, max_len);
        emit_report(report, report_path);
        return 0;
    } catch (const CorpusError& e) {
        std::cerr << "validation failed: " << e.what() << '\n';
        return 1;
    }
}

int cmd_generate(const std::string& input, const std::string& output, const GenerateOptions& opts,
                 const std::map<std::string, std::string>& flags, const std::string& report_path) {
    CorpusReport report = generate_file(input, output, opts);
    RunManifest manifest;
    manifest.command = "generate";
    manifest.flags = flags;
    manifest.seed = opts.seed;
    manifest.inputs.emplace_back(input, hash_file(input));
    manifest.output_path = output;
    manifest.output_hash = hash_file(output);
    manifest.write_alongside();
    emit_report(report, report_path);
    return 0;
}

int cmd_mix(const std::string& recipe_path, const std::string& output,
            std::optional<uint64_t> seed_flag, const std::optional<std::string>& tag_policy,
            const std::optional<std::string>& tag_placement, int threads,
            const std::map<std::string, std::string>& flags, const std::string& report_path) {
    MixRecipe recipe = load_recipe(recipe_path);
    if (seed_flag) recipe.seed = *seed_flag;  // flags override the recipe
    if (tag_policy) recipe.tag_policy = tag_policy_from_string(*tag_policy);
    if (tag_placement) recipe.placement = tag_placement_from_string(*tag_placement);
    CorpusReport report = mix_files(recipe, output, threads);
    RunManifest manifest;
    manifest.command = "mix";
    manifest.flags = flags;
    manifest.seed = recipe.seed;
    manifest.inputs.emplace_back(recipe_path, hash_file(recipe_path));
    for (const auto& plan : recipe.languages)
        manifest.inputs.emplace_back(plan.input, hash_file(plan.input));
    manifest.output_path = output;
    manifest.output_hash = hash_file(output);
    manifest.write_alongside();
    emit_report(report, report_path);
    return 0;
}

int cmd_stats(const std::string& input, const std::string& annotations,
              const std::string& annotations_schema, bool macro, const std::string& report_path) {
    std::vector<PretrainPair> pairs = read_all_pairs(input);
    std::map<std::string, AnnotatedSentence> sidecar;
    if (!annotations.empty()) {
        for (auto& s :
             read_all_sentences(annotations, schema_from_string(annotations_schema)))
            sidecar.emplace(s.id, std::move(s));
    }
    CorpusStats stats = compute_stats(pairs, annotations.empty() ? nullptr : &sidecar);
    std::string body = stats.to_json(macro);
    if (report_path.empty()) {
        std::cout << body << '\n';
    } else {
        std::ofstream out(report_path, std::ios::binary);
        out << body << '\n';
    }
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"pretrain-forge: build sequence-to-sequence pre-training pairs from annotated "
                 "monolingual corpora"};
    app.require_subcommand(1);

    std::string input, output, recipe_path, report_path;
    std::string schema_name = "plain";
    std::string policy_name = "skip";
    std::string task_name_s = "mass";
    std::string direction_name = "F";
    std::string punct_extra_path;
    std::string annotations_path, annotations_schema = "bunsetsu";
    std::optional<std::string> tag_policy_name, tag_placement_name;
    std::optional<uint64_t> seed_flag;
    std::optional<int> validate_max_len;
    int max_len = kDefaultMaxTokens;
    int threads = 1;
    double ratio = kDefaultMaskRatio;
    double infill_lambda = kDefaultInfillLambda;
    double infill_ratio = kDefaultInfillRatio;
    bool macro = false;

    auto* validate = app.add_subcommand("validate", "check a sentence corpus against its schema");
    validate->add_option("--input", input, "sentence JSONL file")->required();
    validate->add_option("--schema", schema_name, "plain|bunsetsu|tree");
    validate->add_option("--policy", policy_name, "fail-fast|skip")
        ->check(CLI::IsMember({"fail-fast", "skip"}));
    validate->add_option("--max-len", validate_max_len, "also count over-long sentences");
    validate->add_option("--report", report_path, "write the JSON report here instead of stdout");

    auto* generate = app.add_subcommand("generate", "build pre-training pairs for one task");
    generate->add_option("--input", input, "sentence JSONL file")->required();
    generate->add_option("--output", output, "pair JSONL file")->required();
    generate
        ->add_option("--task", task_name_s,
                     "mass|bmass|multimass|pmass-s|pmass-p|hfss|brss|deshuffle|bart-infill")
        ->required();
    generate->add_option("--schema", schema_name, "plain|bunsetsu|tree");
    generate->add_option("--seed", seed_flag, "RNG seed (falls back to $PRETRAIN_FORGE_SEED)");
    generate->add_option("--ratio", ratio, "masked-token fraction for mass/multimass");
    generate->add_option("--lambda", infill_lambda, "Poisson mean for bart-infill span lengths");
    generate->add_option("--infill-ratio", infill_ratio, "masked fraction for bart-infill");
    generate->add_option("--direction", direction_name, "F|R (brss)")
        ->check(CLI::IsMember({"F", "R", "f", "r"}));
    generate->add_option("--punct-extra", punct_extra_path,
                         "file of extra boundary punctuation tokens, one per line");
    generate->add_option("--max-len", max_len, "drop sentences with more tokens than this");
    generate->add_option("--policy", policy_name, "fail-fast|skip")
        ->check(CLI::IsMember({"fail-fast", "skip"}));
    generate->add_option("--threads", threads, "worker threads (output is thread-invariant)");
    generate->add_option("--report", report_path, "write the JSON report here instead of stdout");

    auto* mix = app.add_subcommand("mix", "compose a tagged multi-task dataset from a recipe");
    mix->add_option("--recipe", recipe_path, "recipe JSON file")->required();
    mix->add_option("--output", output, "pair JSONL file")->required();
    mix->add_option("--seed", seed_flag, "override the recipe seed");
    mix->add_option("--tag-policy", tag_policy_name, "distinct|unified-groups (overrides recipe)")
        ->check(CLI::IsMember({"distinct", "unified-groups", "unified"}));
    mix->add_option("--tag-placement", tag_placement_name,
                    "split|src-only|both (overrides recipe)")
        ->check(CLI::IsMember({"split", "src-only", "both"}));
    mix->add_option("--threads", threads, "worker threads (output is thread-invariant)");
    mix->add_option("--report", report_path, "write the JSON report here instead of stdout");

    auto* stats = app.add_subcommand("stats", "diagnostics over a generated pair file");
    stats->add_option("--input", input, "pair JSONL file")->required();
    stats->add_option("--annotations", annotations_path,
                      "sentence JSONL sidecar for bunsetsu alignment checks");
    stats->add_option("--annotations-schema", annotations_schema, "sidecar schema");
    stats->add_flag("--macro", macro, "macro-average moved-word percentage");
    stats->add_option("--report", report_path, "write the JSON report here instead of stdout");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(validate))
            return cmd_validate(input, schema_name, policy_name, validate_max_len, report_path);

        if (app.got_subcommand(generate)) {
            GenerateOptions opts;
            opts.task.kind = task_from_string(task_name_s);
            opts.task.ratio = ratio;
            opts.task.infill_lambda = infill_lambda;
            opts.task.infill_ratio = infill_ratio;
            opts.task.direction = direction_from_string(direction_name);
            if (!punct_extra_path.empty()) opts.task.extra_punct = load_extra_punct(punct_extra_path);
            opts.schema = schema_from_string(schema_name);
            opts.max_tokens = max_len;
            opts.seed = resolve_seed(seed_flag);
            opts.threads = threads;
            opts.policy = policy_name == "skip" ? ErrorPolicy::Skip : ErrorPolicy::FailFast;
            std::map<std::string, std::string> flags = {
                {"input", input},           {"output", output},
                {"task", task_name_s},      {"schema", schema_name},
                {"ratio", std::to_string(ratio)},
                {"lambda", std::to_string(infill_lambda)},
                {"infill-ratio", std::to_string(infill_ratio)},
                {"direction", direction_name},
                {"max-len", std::to_string(max_len)},
                {"policy", policy_name},
            };
            return cmd_generate(input, output, opts, flags, report_path);
        }

        if (app.got_subcommand(mix)) {
            std::optional<uint64_t> seed = seed_flag;
            if (!seed && std::getenv("PRETRAIN_FORGE_SEED")) seed = resolve_seed(seed_flag);
            std::map<std::string, std::string> flags = {{"recipe", recipe_path},
                                                        {"output", output}};
            if (tag_policy_name) flags["tag-policy"] = *tag_policy_name;
            if (tag_placement_name) flags["tag-placement"] = *tag_placement_name;
            return cmd_mix(recipe_path, output, seed, tag_policy_name, tag_placement_name,
                           threads, flags, report_path);
        }

        if (app.got_subcommand(stats))
            return cmd_stats(input, annotations_path, annotations_schema, macro, report_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CorpusError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace forge::cli
