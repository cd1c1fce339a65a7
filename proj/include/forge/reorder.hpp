#ifndef FORGE_REORDER_HPP
#define FORGE_REORDER_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/tree.hpp"

namespace forge {

// A token-level permutation of one sentence. permutation[i] is the original
// index of the token that now sits at position i.
struct ReorderResult {
    std::vector<int> permutation;
    std::vector<std::string> reordered_tokens;
};

enum class Direction { Forward, Reverse };
Direction direction_from_string(const std::string& name);

// A bunsetsu is a boundary iff its final token is a punctuation mark or the
// topic marker. Boundaries split the bunsetsu list into maximal runs; the
// new bunsetsu order reverses each run and keeps boundaries in place.
// Token order inside every bunsetsu is preserved. Involutive.
std::vector<int> brss_bunsetsu_order(const AnnotatedSentence& s,
                                     const std::set<std::string>& extra_punct = {});
ReorderResult brss_reorder(const AnnotatedSentence& s,
                           const std::set<std::string>& extra_punct = {});

// Forward: src = reordered, tgt = original. Reverse: the other way round.
PretrainPair brss_pair(const AnnotatedSentence& s, Direction dir,
                       const std::set<std::string>& extra_punct = {});

// Swaps the children of every constituent whose head is the left child, so
// each head subtree yield comes last. Idempotent; yields stay contiguous.
ReorderResult head_finalize(const ParseTree& tree);
ParseTree head_finalize_tree(const ParseTree& tree);

// src = head-finalized tokens, tgt = original sentence.
PretrainPair hfss_pair(const AnnotatedSentence& s);

// src = seeded uniform permutation of the tokens, tgt = original sentence.
PretrainPair deshuffle_pair(const std::vector<std::string>& tokens, uint64_t seed,
                            std::string lang, std::string id);

// Loads one extra punctuation token per line (for --punct-extra).
std::set<std::string> load_extra_punct(const std::string& path);

}  // namespace forge

#endif
