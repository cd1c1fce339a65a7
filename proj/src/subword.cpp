#include "forge/subword.hpp"

#include <numeric>
#include <stdexcept>

namespace forge {

bool spans_tile(const std::vector<Span>& spans, int n_tokens) {
    int expect = 0;
    for (const auto& [start, end] : spans) {
        if (start != expect || end <= start) return false;
        expect = end;
    }
    return expect == n_tokens;
}

std::vector<Span> remap_spans(const std::vector<Span>& spans, const SubwordAlignment& alignment) {
    const auto& pieces = alignment.pieces_per_token;
    for (int p : pieces)
        if (p < 1) throw std::invalid_argument("subword alignment entries must be >= 1");
    if (!spans_tile(spans, static_cast<int>(pieces.size())))
        throw std::invalid_argument("spans do not tile the aligned token range");

    std::vector<int> prefix(pieces.size() + 1, 0);
    std::partial_sum(pieces.begin(), pieces.end(), prefix.begin() + 1);

    std::vector<Span> out;
    out.reserve(spans.size());
    for (const auto& [start, end] : spans) out.emplace_back(prefix[start], prefix[end]);
    return out;
}

}  // namespace forge
