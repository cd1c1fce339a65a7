#ifndef FORGE_SUBWORD_HPP
#define FORGE_SUBWORD_HPP

#include <utility>
#include <vector>

namespace forge {

using Span = std::pair<int, int>;  // half-open [start, end)

// Word-to-subword fan-out: pieces_per_token[i] is the number of subword
// pieces the i-th original token expands into (>= 1). Bridges word-level
// bunsetsu spans onto subword token streams after BPE.
struct SubwordAlignment {
    std::vector<int> pieces_per_token;
};

// Remaps word-index spans to subword-index spans through the alignment.
// The input spans must tile [0, len(pieces_per_token)); the result tiles
// [0, sum(pieces_per_token)) and span k covers exactly the pieces of the
// words it covered. Throws std::invalid_argument on mismatch.
std::vector<Span> remap_spans(const std::vector<Span>& spans, const SubwordAlignment& alignment);

// True when spans are sorted, contiguous, non-overlapping and exactly tile
// [0, n_tokens).
bool spans_tile(const std::vector<Span>& spans, int n_tokens);

}  // namespace forge

#endif
