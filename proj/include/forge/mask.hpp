#ifndef FORGE_MASK_HPP
#define FORGE_MASK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "forge/corpus.hpp"
#include "forge/rng.hpp"
#include "forge/tree.hpp"

namespace forge {

enum class MaskStyle { Positional, Infill };

// Which token indices get masked, and how the pair is rendered from them.
// Positional plans keep source and target the same length as the sentence;
// infill collapses each masked span to a single mask token in the source.
struct MaskPlan {
    MaskStyle style = MaskStyle::Positional;
    std::vector<int> positions;  // sorted, unique, within [0, n)
};

inline constexpr double kDefaultMaskRatio = 0.5;

// One consecutive span of k = max(1, round(ratio*n)) tokens with a uniform
// start. The classic single-span corruption.
MaskPlan mass_plan(int n, double ratio, uint64_t seed);

// Masks m = max(1, floor(B/2)) whole bunsetsus chosen uniformly without
// replacement; every masked maximal run is an exact union of bunsetsus.
MaskPlan bmass_plan(const std::vector<Span>& bunsetsu, uint64_t seed);

// k = max(1, round(ratio*n)) scattered positions, uniform without
// replacement.
MaskPlan multimass_plan(int n, double ratio, uint64_t seed);

// Single phrase span: walk down from the root, always into the child with
// more tokens (ties go right), until the constituent fits within int(L/2)
// tokens; a leaf stops the walk. The result is one contiguous constituent
// yield. Deterministic.
MaskPlan pmass_s_plan(const ParseTree& tree);

// Plural phrase spans: recursive descent that greedily masks whole child
// constituents while they fit the int(L/2) budget, flipping a coin wherever
// the recursion has a choice. An empty outcome is upgraded to one
// coin-chosen token so every sentence trains something.
MaskPlan pmass_p_plan(const ParseTree& tree, const CoinSource& coin);
MaskPlan pmass_p_plan(const ParseTree& tree, uint64_t seed);

// Renders a positional plan: src masks the chosen positions, tgt holds the
// chosen positions and masks everything else (the inverted mask).
PretrainPair plan_to_pair(const std::vector<std::string>& tokens, const MaskPlan& plan,
                          std::string task, std::string lang, std::string id);

inline constexpr double kDefaultInfillLambda = 3.0;
inline constexpr double kDefaultInfillRatio = 0.3;

// Text infilling: Poisson(lambda)-length spans are replaced by one mask
// token each (length-0 draws insert a bare mask token) until at least
// round(ratio*n) tokens are masked; the target is the full original
// sentence.
PretrainPair bart_infill_pair(const std::vector<std::string>& tokens, double lambda, double ratio,
                              uint64_t seed, std::string lang, std::string id);

}  // namespace forge

#endif
