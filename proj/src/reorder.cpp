#include "forge/reorder.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "forge/rng.hpp"
#include "forge/tags.hpp"
#include "forge/text.hpp"

namespace forge {

Direction direction_from_string(const std::string& name) {
    if (name == "F" || name == "f") return Direction::Forward;
    if (name == "R" || name == "r") return Direction::Reverse;
    throw std::invalid_argument("direction must be F or R");
}

std::vector<int> brss_bunsetsu_order(const AnnotatedSentence& s,
                                     const std::set<std::string>& extra_punct) {
    if (!s.bunsetsu) throw std::runtime_error("bunsetsu annotation required");
    const auto& spans = *s.bunsetsu;
    int b = static_cast<int>(spans.size());

    std::vector<bool> boundary(b);
    for (int i = 0; i < b; ++i) {
        const std::string& last = s.tokens[spans[i].second - 1];
        boundary[i] = last == kTopicMarkerWa || is_punct_token(last, extra_punct);
    }

    std::vector<int> order(b);
    std::iota(order.begin(), order.end(), 0);
    int i = 0;
    while (i < b) {
        if (boundary[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j < b && !boundary[j]) ++j;
        std::reverse(order.begin() + i, order.begin() + j);
        i = j;
    }
    return order;
}

ReorderResult brss_reorder(const AnnotatedSentence& s, const std::set<std::string>& extra_punct) {
    std::vector<int> order = brss_bunsetsu_order(s, extra_punct);
    const auto& spans = *s.bunsetsu;
    ReorderResult out;
    out.permutation.reserve(s.tokens.size());
    for (int bi : order)
        for (int p = spans[bi].first; p < spans[bi].second; ++p) out.permutation.push_back(p);
    out.reordered_tokens.reserve(s.tokens.size());
    for (int p : out.permutation) out.reordered_tokens.push_back(s.tokens[p]);
    return out;
}

PretrainPair brss_pair(const AnnotatedSentence& s, Direction dir,
                       const std::set<std::string>& extra_punct) {
    ReorderResult r = brss_reorder(s, extra_punct);
    PretrainPair pair;
    pair.id = s.id;
    pair.task = std::string(kTagBrss);
    pair.lang = s.lang;
    if (dir == Direction::Forward) {
        pair.src = std::move(r.reordered_tokens);
        pair.tgt = s.tokens;
    } else {
        pair.src = s.tokens;
        pair.tgt = std::move(r.reordered_tokens);
    }
    return pair;
}

namespace {

void head_final_leaves(const ParseTree& tree, int node, std::vector<int>& out) {
    const TreeNode& n = tree.node(node);
    switch (n.kind) {
        case NodeKind::Tok:
            out.push_back(n.yield_start);
            break;
        case NodeKind::Sentence:
            head_final_leaves(tree, n.left, out);
            break;
        case NodeKind::Cons:
            // non-head subtree first, head subtree last
            if (n.head == HeadSide::Left) {
                head_final_leaves(tree, n.right, out);
                head_final_leaves(tree, n.left, out);
            } else {
                head_final_leaves(tree, n.left, out);
                head_final_leaves(tree, n.right, out);
            }
            break;
    }
}

int head_final_copy(const ParseTree& tree, int node, ParseTree& out) {
    const TreeNode& n = tree.node(node);
    switch (n.kind) {
        case NodeKind::Tok:
            return out.add_tok(n.token);
        case NodeKind::Sentence:
            return out.add_sentence(head_final_copy(tree, n.left, out));
        case NodeKind::Cons:
        default: {
            int a = head_final_copy(tree, n.left, out);
            int b = head_final_copy(tree, n.right, out);
            if (n.head == HeadSide::Left) return out.add_cons(HeadSide::Right, b, a);
            return out.add_cons(HeadSide::Right, a, b);
        }
    }
}

}  // namespace

ReorderResult head_finalize(const ParseTree& tree) {
    ReorderResult out;
    out.permutation.reserve(tree.token_count());
    head_final_leaves(tree, tree.root(), out.permutation);
    std::vector<std::string> tokens = tree.yield_tokens();
    out.reordered_tokens.reserve(tokens.size());
    for (int p : out.permutation) out.reordered_tokens.push_back(tokens[p]);
    return out;
}

ParseTree head_finalize_tree(const ParseTree& tree) {
    ParseTree out;
    out.finish(head_final_copy(tree, tree.root(), out));
    return out;
}

PretrainPair hfss_pair(const AnnotatedSentence& s) {
    if (!s.tree) throw std::runtime_error("parse tree required");
    ReorderResult r = head_finalize(*s.tree);
    PretrainPair pair;
    pair.id = s.id;
    pair.task = std::string(kTagHfss);
    pair.lang = s.lang;
    pair.src = std::move(r.reordered_tokens);
    pair.tgt = s.tokens;
    return pair;
}

PretrainPair deshuffle_pair(const std::vector<std::string>& tokens, uint64_t seed,
                            std::string lang, std::string id) {
    int n = static_cast<int>(tokens.size());
    if (n < 1) throw std::invalid_argument("sentence length must be >= 1");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(seed);
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.below(static_cast<uint64_t>(i + 1)));
        std::swap(perm[i], perm[j]);
    }
    PretrainPair pair;
    pair.id = std::move(id);
    pair.task = std::string(kTagDeshuffle);
    pair.lang = std::move(lang);
    pair.src.reserve(n);
    for (int p : perm) pair.src.push_back(tokens[p]);
    pair.tgt = tokens;
    return pair;
}

std::set<std::string> load_extra_punct(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open punctuation list: " + path);
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (!line.empty()) out.insert(line);
    }
    return out;
}

}  // namespace forge
