#include "forge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "forge/tags.hpp"
#include "forge/tasks.hpp"

namespace forge {

void MaskTaskStats::merge(const MaskTaskStats& o) {
    pairs += o.pairs;
    tokens += o.tokens;
    masked += o.masked;
    runs += o.runs;
    for (const auto& [len, n] : o.run_histogram) run_histogram[len] += n;
    bunsetsu_checked += o.bunsetsu_checked;
    bunsetsu_violations += o.bunsetsu_violations;
}

void ReorderTaskStats::merge(const ReorderTaskStats& o) {
    pairs += o.pairs;
    tokens += o.tokens;
    moved += o.moved;
    macro_sum += o.macro_sum;
}

void CorpusStats::merge(const CorpusStats& o) {
    total_pairs += o.total_pairs;
    for (const auto& [tag, st] : o.mask_tasks) mask_tasks[tag].merge(st);
    for (const auto& [tag, st] : o.reorder_tasks) reorder_tasks[tag].merge(st);
}

namespace {

long pair_moved_count(const PretrainPair& stripped) {
    const auto& src = stripped.src;
    const auto& tgt = stripped.tgt;
    if (src.size() != tgt.size())
        throw std::runtime_error("pair " + stripped.id + ": src/tgt length mismatch");
    std::vector<std::string> a = src, b = tgt;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
        throw std::runtime_error("pair " + stripped.id + ": src is not a permutation of tgt");
    long moved = 0;
    for (size_t i = 0; i < src.size(); ++i)
        if (src[i] != tgt[i]) ++moved;
    return moved;
}

}  // namespace

double pair_moved_fraction(const PretrainPair& stripped) {
    if (stripped.src.empty()) return 0.0;
    return static_cast<double>(pair_moved_count(stripped)) /
           static_cast<double>(stripped.src.size());
}

namespace {

bool is_reorder_tag(const std::string& tag) {
    return tag == kTagBrss || tag == kTagHfss || tag == kTagDeshuffle;
}

// Maximal [M] runs in a positional source.
std::vector<Span> mask_runs(const std::vector<std::string>& src) {
    std::vector<Span> runs;
    int n = static_cast<int>(src.size());
    for (int i = 0; i < n;) {
        if (src[i] != kMaskToken) {
            ++i;
            continue;
        }
        int j = i;
        while (j < n && src[j] == kMaskToken) ++j;
        runs.emplace_back(i, j);
        i = j;
    }
    return runs;
}

}  // namespace

void accumulate_pair(CorpusStats& stats, const PretrainPair& pair,
                     const std::map<std::string, AnnotatedSentence>* sidecar) {
    ++stats.total_pairs;
    PretrainPair p = strip_tags(pair);

    if (is_reorder_tag(p.task)) {
        auto& st = stats.reorder_tasks[p.task];
        ++st.pairs;
        long moved = pair_moved_count(p);
        st.tokens += static_cast<long>(p.src.size());
        st.moved += moved;
        st.macro_sum += p.src.empty() ? 0.0 : static_cast<double>(moved) / p.src.size();
        return;
    }

    auto& st = stats.mask_tasks[p.task];
    ++st.pairs;
    long n = static_cast<long>(p.tgt.size());
    st.tokens += n;
    std::vector<Span> runs = mask_runs(p.src);
    if (p.task == kTagBartInfill) {
        // infill: every [M] stands for one corrupted span (or a bare
        // insertion); masked count follows from len(src) = n - masked + #[M].
        // Span lengths are not recoverable from the source, so no histogram.
        long m = 0;
        for (const auto& t : p.src)
            if (t == kMaskToken) ++m;
        st.masked += n - static_cast<long>(p.src.size()) + m;
        st.runs += m;
        return;
    }

    long masked = 0;
    for (const auto& [a, b] : runs) {
        masked += b - a;
        ++st.runs;
        ++st.run_histogram[b - a];
    }
    st.masked += masked;

    if (sidecar && p.task == kTagBmass) {
        auto it = sidecar->find(p.id);
        if (it != sidecar->end() && it->second.bunsetsu) {
            ++st.bunsetsu_checked;
            std::set<int> cuts{0};
            for (const auto& [a, b] : *it->second.bunsetsu) cuts.insert(b);
            for (const auto& [a, b] : runs)
                if (!cuts.count(a) || !cuts.count(b)) {
                    ++st.bunsetsu_violations;
                    break;
                }
        }
    }
}

CorpusStats compute_stats(const std::vector<PretrainPair>& pairs,
                          const std::map<std::string, AnnotatedSentence>* sidecar) {
    CorpusStats stats;
    for (const auto& p : pairs) accumulate_pair(stats, p, sidecar);
    return stats;
}

double moved_word_pct(const std::vector<PretrainPair>& pairs) {
    long tokens = 0, moved = 0;
    for (const auto& pair : pairs) {
        PretrainPair p = strip_tags(pair);
        moved += pair_moved_count(p);
        tokens += static_cast<long>(p.src.size());
    }
    return tokens ? static_cast<double>(moved) / static_cast<double>(tokens) : 0.0;
}

namespace {

void json_number(std::ostringstream& out, double v) {
    out << v;
}

}  // namespace

std::string CorpusStats::to_json(bool macro) const {
    std::ostringstream out;
    out.precision(6);
    out << "{\"total_pairs\":" << total_pairs << ",\"mask_tasks\":{";
    bool first = true;
    for (const auto& [tag, st] : mask_tasks) {
        if (!first) out << ',';
        first = false;
        out << "\"" << tag << "\":{\"pairs\":" << st.pairs << ",\"tokens\":" << st.tokens
            << ",\"masked\":" << st.masked << ",\"mask_ratio\":";
        json_number(out, st.mask_ratio());
        out << ",\"runs\":" << st.runs << ",\"run_histogram\":{";
        bool f2 = true;
        for (const auto& [len, n] : st.run_histogram) {
            if (!f2) out << ',';
            f2 = false;
            out << "\"" << len << "\":" << n;
        }
        out << "}";
        if (st.bunsetsu_checked) {
            out << ",\"bunsetsu_checked\":" << st.bunsetsu_checked
                << ",\"bunsetsu_violations\":" << st.bunsetsu_violations;
        }
        out << "}";
    }
    out << "},\"reorder_tasks\":{";
    first = true;
    for (const auto& [tag, st] : reorder_tasks) {
        if (!first) out << ',';
        first = false;
        out << "\"" << tag << "\":{\"pairs\":" << st.pairs << ",\"tokens\":" << st.tokens
            << ",\"moved\":" << st.moved << ",\"moved_word_pct\":";
        json_number(out, macro ? st.moved_word_pct_macro() : st.moved_word_pct());
        out << ",\"averaging\":\"" << (macro ? "macro" : "micro") << "\"}";
    }
    out << "}}";
    return out.str();
}

}  // namespace forge
