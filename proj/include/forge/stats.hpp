#ifndef FORGE_STATS_HPP
#define FORGE_STATS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "forge/corpus.hpp"

namespace forge {

// Aggregate diagnostics over a generated dataset. Accumulators fold one
// pair at a time and combine associatively, so shards can be merged.
struct MaskTaskStats {
    long pairs = 0;
    long tokens = 0;        // original tokens (tag-stripped target length)
    long masked = 0;        // masked original tokens
    long runs = 0;          // maximal masked runs (spans for infill)
    std::map<int, long> run_histogram;
    long bunsetsu_checked = 0;     // pairs cross-checked against annotations
    long bunsetsu_violations = 0;  // runs not aligned to bunsetsu boundaries

    double mask_ratio() const { return tokens ? static_cast<double>(masked) / tokens : 0.0; }
    void merge(const MaskTaskStats& o);
};

struct ReorderTaskStats {
    long pairs = 0;
    long tokens = 0;
    long moved = 0;          // positions where src differs from tgt
    double macro_sum = 0.0;  // per-sentence moved fractions, for macro mean

    double moved_word_pct() const { return tokens ? static_cast<double>(moved) / tokens : 0.0; }
    double moved_word_pct_macro() const { return pairs ? macro_sum / pairs : 0.0; }
    void merge(const ReorderTaskStats& o);
};

struct CorpusStats {
    long total_pairs = 0;
    std::map<std::string, MaskTaskStats> mask_tasks;        // keyed by task tag
    std::map<std::string, ReorderTaskStats> reorder_tasks;  // keyed by task tag

    void merge(const CorpusStats& o);
    std::string to_json(bool macro = false) const;
};

// Fraction of token positions whose content changed between src and tgt
// (duplicate tokens therefore compare positionally). Throws when src is not
// a permutation of tgt after tag stripping.
double pair_moved_fraction(const PretrainPair& stripped);

// Folds one pair into the stats. Positional mask pairs contribute mask
// ratio and run histograms; infill pairs contribute span counts with the
// masked total recovered from the length identity; reorder pairs contribute
// moved-word counts. Sidecar sentences (id -> sentence) enable the
// bunsetsu-alignment cross-check for whole-bunsetsu masking.
void accumulate_pair(CorpusStats& stats, const PretrainPair& pair,
                     const std::map<std::string, AnnotatedSentence>* sidecar = nullptr);

CorpusStats compute_stats(const std::vector<PretrainPair>& pairs,
                          const std::map<std::string, AnnotatedSentence>* sidecar = nullptr);

// Micro-averaged moved-word percentage over a stream of reorder pairs.
double moved_word_pct(const std::vector<PretrainPair>& pairs);

}  // namespace forge

#endif
