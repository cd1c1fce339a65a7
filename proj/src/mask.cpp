#include "forge/mask.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "forge/tags.hpp"

namespace forge {

namespace {

int mask_count(int n, double ratio) {
    long k = std::llround(ratio * n);
    return static_cast<int>(std::clamp<long>(k, 1, n));
}

// First m entries of a seeded partial Fisher-Yates over [0, n).
std::vector<int> sample_without_replacement(int n, int m, Rng& rng) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < m; ++i) {
        int j = i + static_cast<int>(rng.below(static_cast<uint64_t>(n - i)));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(m);
    return idx;
}

}  // namespace

int Rng::poisson(double mean) {
    double limit = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= next_double();
    } while (p > limit);
    return k - 1;
}

MaskPlan mass_plan(int n, double ratio, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sentence length must be >= 1");
    int k = mask_count(n, ratio);
    Rng rng(seed);
    int start = static_cast<int>(rng.below(static_cast<uint64_t>(n - k + 1)));
    MaskPlan plan;
    plan.positions.resize(k);
    std::iota(plan.positions.begin(), plan.positions.end(), start);
    return plan;
}

MaskPlan bmass_plan(const std::vector<Span>& bunsetsu, uint64_t seed) {
    int b = static_cast<int>(bunsetsu.size());
    if (b < 1) throw std::invalid_argument("bunsetsu annotation required");
    int m = std::max(1, b / 2);
    Rng rng(seed);
    std::vector<int> chosen = sample_without_replacement(b, m, rng);
    std::sort(chosen.begin(), chosen.end());
    MaskPlan plan;
    for (int c : chosen)
        for (int p = bunsetsu[c].first; p < bunsetsu[c].second; ++p) plan.positions.push_back(p);
    return plan;
}

MaskPlan multimass_plan(int n, double ratio, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sentence length must be >= 1");
    int k = mask_count(n, ratio);
    Rng rng(seed);
    MaskPlan plan;
    plan.positions = sample_without_replacement(n, k, rng);
    std::sort(plan.positions.begin(), plan.positions.end());
    return plan;
}

MaskPlan pmass_s_plan(const ParseTree& tree) {
    int total = tree.token_count();
    int budget = total / 2;
    int cur = tree.root();
    while (tree.node(cur).token_count > budget) {
        const TreeNode& n = tree.node(cur);
        if (n.kind == NodeKind::Tok) break;  // cannot descend below a leaf
        if (n.kind == NodeKind::Sentence) {
            cur = n.left;
            continue;
        }
        cur = tree.node(n.left).token_count > tree.node(n.right).token_count ? n.left : n.right;
    }
    const TreeNode& n = tree.node(cur);
    MaskPlan plan;
    plan.positions.resize(n.token_count);
    std::iota(plan.positions.begin(), plan.positions.end(), n.yield_start);
    return plan;
}

namespace {

// Budget-bounded recursion over the tree. Appends whole constituent yields
// to `out`; `masked` is the running masked-token count.
void pmass_p_rec(const ParseTree& tree, int node, int budget_total, int& masked,
                 std::vector<int>& out, const CoinSource& coin) {
    const TreeNode& n = tree.node(node);
    const auto append_yield = [&](int id) {
        const TreeNode& c = tree.node(id);
        for (int p = c.yield_start; p < c.yield_start + c.token_count; ++p) out.push_back(p);
        masked += c.token_count;
    };

    if (n.kind == NodeKind::Sentence) {
        pmass_p_rec(tree, n.left, budget_total, masked, out, coin);
        return;
    }
    if (n.kind == NodeKind::Tok) {
        if (budget_total - masked > 0) append_yield(node);
        return;
    }

    int ll = tree.node(n.left).token_count;
    int lr = tree.node(n.right).token_count;
    if (ll == 1 && lr == 1) {
        // both children are single tokens; mask the whole two-token phrase
        if (budget_total - masked > 1) append_yield(node);
        return;
    }
    if (budget_total <= masked) return;
    int remaining = budget_total - masked;
    if (ll <= remaining && lr > remaining) {
        if (coin() < 0.5) append_yield(n.left);
        pmass_p_rec(tree, n.right, budget_total, masked, out, coin);
    } else if (lr <= remaining && ll > remaining) {
        if (coin() < 0.5) append_yield(n.right);
        pmass_p_rec(tree, n.left, budget_total, masked, out, coin);
    } else if (ll > remaining && lr > remaining) {
        pmass_p_rec(tree, coin() < 0.5 ? n.left : n.right, budget_total, masked, out, coin);
    } else {
        append_yield(n.left);
        pmass_p_rec(tree, n.right, budget_total, masked, out, coin);
    }
}

}  // namespace

MaskPlan pmass_p_plan(const ParseTree& tree, const CoinSource& coin) {
    int total = tree.token_count();
    MaskPlan plan;
    int masked = 0;
    pmass_p_rec(tree, tree.root(), total / 2, masked, plan.positions, coin);
    if (plan.positions.empty()) {
        // short sentences can leave the recursion empty-handed; mask one
        // coin-chosen token so the pair still trains something
        int pick = std::min(total - 1, static_cast<int>(coin() * total));
        plan.positions.push_back(pick);
    }
    std::sort(plan.positions.begin(), plan.positions.end());
    return plan;
}

MaskPlan pmass_p_plan(const ParseTree& tree, uint64_t seed) {
    Rng rng(seed);
    return pmass_p_plan(tree, coin_from_rng(rng));
}

PretrainPair plan_to_pair(const std::vector<std::string>& tokens, const MaskPlan& plan,
                          std::string task, std::string lang, std::string id) {
    if (plan.style != MaskStyle::Positional)
        throw std::invalid_argument("plan_to_pair renders positional plans only");
    PretrainPair pair;
    pair.id = std::move(id);
    pair.task = std::move(task);
    pair.lang = std::move(lang);
    pair.src = tokens;
    pair.tgt.assign(tokens.size(), std::string(kMaskToken));
    for (int p : plan.positions) {
        pair.src[p] = kMaskToken;
        pair.tgt[p] = tokens[p];
    }
    return pair;
}

PretrainPair bart_infill_pair(const std::vector<std::string>& tokens, double lambda, double ratio,
                              uint64_t seed, std::string lang, std::string id) {
    int n = static_cast<int>(tokens.size());
    if (n < 1) throw std::invalid_argument("sentence length must be >= 1");
    if (lambda <= 0) throw std::invalid_argument("span-length mean must be positive");
    int target = mask_count(n, ratio);
    Rng rng(seed);

    std::vector<bool> masked(n, false);
    std::vector<Span> spans;
    std::vector<int> insertions;  // slot i = between tokens i-1 and i
    int total = 0;
    while (total < target) {
        int len = rng.poisson(lambda);
        if (len == 0) {
            insertions.push_back(static_cast<int>(rng.below(static_cast<uint64_t>(n + 1))));
            continue;
        }
        // valid starts leave the whole span unmasked
        std::vector<int> starts;
        int run = 0;
        int longest = 0;
        for (int i = 0; i < n; ++i) {
            run = masked[i] ? 0 : run + 1;
            longest = std::max(longest, run);
            if (run >= len) starts.push_back(i - len + 1);
        }
        if (starts.empty()) {
            if (longest == 0) break;  // everything already masked
            len = longest;
            run = 0;
            for (int i = 0; i < n; ++i) {
                run = masked[i] ? 0 : run + 1;
                if (run >= len) starts.push_back(i - len + 1);
            }
        }
        int s = starts[rng.below(starts.size())];
        spans.emplace_back(s, s + len);
        for (int i = s; i < s + len; ++i) masked[i] = true;
        total += len;
    }
    std::sort(spans.begin(), spans.end());
    std::sort(insertions.begin(), insertions.end());

    PretrainPair pair;
    pair.id = std::move(id);
    pair.task = std::string(kTagBartInfill);
    pair.lang = std::move(lang);
    pair.tgt = tokens;
    size_t si = 0, ii = 0;
    for (int i = 0; i <= n; ++i) {
        while (ii < insertions.size() && insertions[ii] <= i) {
            pair.src.emplace_back(kMaskToken);
            ++ii;
        }
        if (i == n) break;
        if (si < spans.size() && spans[si].first == i) {
            pair.src.emplace_back(kMaskToken);
            i = spans[si].second - 1;  // loop ++ moves past the span
            ++si;
        } else {
            pair.src.push_back(tokens[i]);
        }
    }
    return pair;
}

}  // namespace forge
