#include "forge/tasks.hpp"

#include "forge/tags.hpp"

namespace forge {

TaskKind task_from_string(const std::string& name) {
    if (name == "mass") return TaskKind::Mass;
    if (name == "bmass") return TaskKind::Bmass;
    if (name == "multimass") return TaskKind::MultiMass;
    if (name == "pmass-s") return TaskKind::PmassS;
    if (name == "pmass-p") return TaskKind::PmassP;
    if (name == "hfss") return TaskKind::Hfss;
    if (name == "brss") return TaskKind::Brss;
    if (name == "deshuffle") return TaskKind::Deshuffle;
    if (name == "bart-infill") return TaskKind::BartInfill;
    throw std::invalid_argument("unknown task '" + name + "'");
}

const char* task_name(TaskKind k) {
    switch (k) {
        case TaskKind::Mass: return "mass";
        case TaskKind::Bmass: return "bmass";
        case TaskKind::MultiMass: return "multimass";
        case TaskKind::PmassS: return "pmass-s";
        case TaskKind::PmassP: return "pmass-p";
        case TaskKind::Hfss: return "hfss";
        case TaskKind::Brss: return "brss";
        case TaskKind::Deshuffle: return "deshuffle";
        case TaskKind::BartInfill: return "bart-infill";
    }
    return "?";
}

std::string task_tag(TaskKind k) {
    switch (k) {
        case TaskKind::Mass: return std::string(kTagMass);
        case TaskKind::Bmass: return std::string(kTagBmass);
        case TaskKind::MultiMass: return std::string(kTagMultiMass);
        case TaskKind::PmassS:
        case TaskKind::PmassP: return std::string(kTagPmass);
        case TaskKind::Hfss: return std::string(kTagHfss);
        case TaskKind::Brss: return std::string(kTagBrss);
        case TaskKind::Deshuffle: return std::string(kTagDeshuffle);
        case TaskKind::BartInfill: return std::string(kTagBartInfill);
    }
    return "?";
}

Needs task_needs(TaskKind k) {
    switch (k) {
        case TaskKind::Bmass:
        case TaskKind::Brss: return Needs::Bunsetsu;
        case TaskKind::PmassS:
        case TaskKind::PmassP:
        case TaskKind::Hfss: return Needs::Tree;
        default: return Needs::Tokens;
    }
}

bool schema_provides(Schema schema, Needs needs) {
    switch (needs) {
        case Needs::Tokens: return true;
        case Needs::Bunsetsu: return schema == Schema::Bunsetsu;
        case Needs::Tree: return schema == Schema::Tree;
    }
    return false;
}

PretrainPair make_task_pair(const AnnotatedSentence& s, const TaskSpec& spec, uint64_t seed) {
    switch (spec.kind) {
        case TaskKind::Mass:
            return plan_to_pair(s.tokens, mass_plan(s.length(), spec.ratio, seed),
                                task_tag(spec.kind), s.lang, s.id);
        case TaskKind::Bmass: {
            if (!s.bunsetsu) throw MissingAnnotation("bunsetsu annotation required");
            return plan_to_pair(s.tokens, bmass_plan(*s.bunsetsu, seed), task_tag(spec.kind),
                                s.lang, s.id);
        }
        case TaskKind::MultiMass:
            return plan_to_pair(s.tokens, multimass_plan(s.length(), spec.ratio, seed),
                                task_tag(spec.kind), s.lang, s.id);
        case TaskKind::PmassS: {
            if (!s.tree) throw MissingAnnotation("parse tree required");
            PretrainPair p = plan_to_pair(s.tokens, pmass_s_plan(*s.tree), task_tag(spec.kind),
                                          s.lang, s.id);
            p.variant = "S";
            return p;
        }
        case TaskKind::PmassP: {
            if (!s.tree) throw MissingAnnotation("parse tree required");
            PretrainPair p = plan_to_pair(s.tokens, pmass_p_plan(*s.tree, seed),
                                          task_tag(spec.kind), s.lang, s.id);
            p.variant = "P";
            return p;
        }
        case TaskKind::Hfss:
            if (!s.tree) throw MissingAnnotation("parse tree required");
            return hfss_pair(s);
        case TaskKind::Brss:
            if (!s.bunsetsu) throw MissingAnnotation("bunsetsu annotation required");
            return brss_pair(s, spec.direction, spec.extra_punct);
        case TaskKind::Deshuffle: return deshuffle_pair(s.tokens, seed, s.lang, s.id);
        case TaskKind::BartInfill:
            return bart_infill_pair(s.tokens, spec.infill_lambda, spec.infill_ratio, seed, s.lang,
                                    s.id);
    }
    throw std::logic_error("unreachable");
}

TagPolicy tag_policy_from_string(const std::string& name) {
    if (name == "distinct") return TagPolicy::Distinct;
    if (name == "unified-groups" || name == "unified") return TagPolicy::UnifiedGroups;
    throw std::invalid_argument("tag policy must be distinct or unified-groups");
}

TagPlacement tag_placement_from_string(const std::string& name) {
    if (name == "split") return TagPlacement::Split;
    if (name == "src-only") return TagPlacement::SrcOnly;
    if (name == "both") return TagPlacement::Both;
    throw std::invalid_argument("tag placement must be split, src-only or both");
}

std::string policy_tag(TaskKind k, TagPolicy policy) {
    if (policy == TagPolicy::UnifiedGroups) {
        switch (k) {
            case TaskKind::Brss:
            case TaskKind::Hfss:
            case TaskKind::Deshuffle: return std::string(kTagBrss);  // the reorder-group tag
            default: break;
        }
    }
    return task_tag(k);
}

PretrainPair apply_tags(PretrainPair p, TaskKind kind, TagPolicy policy, TagPlacement placement) {
    const auto tagged = [](const std::vector<std::string>& v) {
        return !v.empty() && v.front() != kMaskToken && is_reserved_tag(v.front());
    };
    if (tagged(p.src) || tagged(p.tgt)) throw std::runtime_error("pair is already tagged");
    std::string tag = policy_tag(kind, policy);
    std::string lang = language_tag(p.lang);

    const auto prepend = [](std::vector<std::string>& v, std::vector<std::string> head) {
        head.insert(head.end(), std::make_move_iterator(v.begin()),
                    std::make_move_iterator(v.end()));
        v = std::move(head);
    };
    switch (placement) {
        case TagPlacement::Split:
            prepend(p.src, {tag, lang});
            prepend(p.tgt, {lang});
            break;
        case TagPlacement::SrcOnly:
            prepend(p.src, {tag, lang});
            break;
        case TagPlacement::Both:
            prepend(p.src, {tag, lang});
            prepend(p.tgt, {tag, lang});
            break;
    }
    return p;
}

PretrainPair strip_tags(PretrainPair p) {
    const auto strip = [](std::vector<std::string>& v) {
        size_t k = 0;
        while (k < v.size() && is_reserved_tag(v[k]) && v[k] != kMaskToken) ++k;
        v.erase(v.begin(), v.begin() + k);
    };
    strip(p.src);
    strip(p.tgt);
    return p;
}

}  // namespace forge
