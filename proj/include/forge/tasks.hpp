#ifndef FORGE_TASKS_HPP
#define FORGE_TASKS_HPP

#include <cstdint>
#include <set>
#include <string>

#include "forge/corpus.hpp"
#include "forge/mask.hpp"
#include "forge/reorder.hpp"

namespace forge {

enum class TaskKind { Mass, Bmass, MultiMass, PmassS, PmassP, Hfss, Brss, Deshuffle, BartInfill };

TaskKind task_from_string(const std::string& name);  // "mass", "pmass-s", ...
const char* task_name(TaskKind k);
std::string task_tag(TaskKind k);  // "[MASS]", ... (both phrase variants share "[PMASS]")

// Annotation layer a task needs from its input schema.
enum class Needs { Tokens, Bunsetsu, Tree };
Needs task_needs(TaskKind k);
bool schema_provides(Schema schema, Needs needs);

// Everything one generator invocation needs besides the sentence and seed.
struct TaskSpec {
    TaskKind kind = TaskKind::Mass;
    double ratio = kDefaultMaskRatio;         // mass / multimass
    double infill_ratio = kDefaultInfillRatio;
    double infill_lambda = kDefaultInfillLambda;
    Direction direction = Direction::Forward;  // brss
    std::set<std::string> extra_punct;          // brss boundary extension
};

// Builds the untagged pair for one sentence. Throws MissingAnnotation when
// the sentence lacks what the task needs.
struct MissingAnnotation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
PretrainPair make_task_pair(const AnnotatedSentence& s, const TaskSpec& spec, uint64_t seed);

enum class TagPolicy { Distinct, UnifiedGroups };
enum class TagPlacement { Split, SrcOnly, Both };
TagPolicy tag_policy_from_string(const std::string& name);
TagPlacement tag_placement_from_string(const std::string& name);

// Tag actually prepended for a task under a policy: unified-groups folds the
// reordering family (BRSS, HFSS, deshuffling) into one tag.
std::string policy_tag(TaskKind k, TagPolicy policy);

// Prepends the task and language tokens. Split puts [TASK] [LANG] on the
// source and [LANG] on the target; throws on double tagging.
PretrainPair apply_tags(PretrainPair p, TaskKind kind, TagPolicy policy,
                        TagPlacement placement = TagPlacement::Split);

// Removes leading reserved tags from src/tgt (inverse of apply_tags).
PretrainPair strip_tags(PretrainPair p);

}  // namespace forge

#endif
