#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "forge/mask.hpp"
#include "forge/reorder.hpp"
#include "forge/stats.hpp"
#include "forge/tasks.hpp"
#include "testutil.hpp"

using namespace forge;

TEST_CASE("identity reorder corpus scores zero moved words") {
    std::vector<PretrainPair> pairs;
    for (int i = 0; i < 50; ++i) {
        PretrainPair p;
        p.id = "s" + std::to_string(i);
        p.task = "[BRSS]";
        p.lang = "ja";
        p.src = testutil::numbered_tokens(8);
        p.tgt = p.src;
        pairs.push_back(std::move(p));
    }
    CHECK(moved_word_pct(pairs) == 0.0);
}

TEST_CASE("full reversal of 2-token sentences scores one") {
    std::vector<PretrainPair> pairs;
    for (int i = 0; i < 50; ++i) {
        PretrainPair p;
        p.id = "s" + std::to_string(i);
        p.task = "[BRSS]";
        p.lang = "ja";
        p.src = {"b" + std::to_string(i), "a" + std::to_string(i)};
        p.tgt = {"a" + std::to_string(i), "b" + std::to_string(i)};
        pairs.push_back(std::move(p));
    }
    CHECK(moved_word_pct(pairs) == 1.0);
}

TEST_CASE("non-permutation pairs are rejected") {
    PretrainPair p;
    p.id = "x";
    p.task = "[BRSS]";
    p.lang = "ja";
    p.src = {"a", "b"};
    p.tgt = {"a", "c"};
    CHECK_THROWS(moved_word_pct({p}));
    p.tgt = {"a"};
    CHECK_THROWS(moved_word_pct({p}));
}

TEST_CASE("deshuffled length-20 corpus lands on the analytic expectation") {
    std::vector<PretrainPair> pairs;
    auto tokens = testutil::numbered_tokens(20);
    for (int i = 0; i < 10000; ++i)
        pairs.push_back(deshuffle_pair(tokens, derive_seed(123, i), "ja", "d" + std::to_string(i)));
    double pct = moved_word_pct(pairs);
    CHECK(pct == doctest::Approx(0.95).epsilon(0.0105));  // 1 - 1/20
}

TEST_CASE("moved percentage is symmetric in src and tgt") {
    Rng rng(6);
    std::vector<PretrainPair> fwd, rev;
    for (int i = 0; i < 500; ++i) {
        auto s = testutil::bunsetsu_sentence("s" + std::to_string(i), 2 + (int)rng.below(14), rng,
                                             0.2, 0.1);
        fwd.push_back(brss_pair(s, Direction::Forward));
        rev.push_back(brss_pair(s, Direction::Reverse));
    }
    CHECK(moved_word_pct(fwd) == moved_word_pct(rev));
}

TEST_CASE("mask stats recount the planner contracts") {
    Rng rng(8);
    std::vector<PretrainPair> pairs;
    for (int i = 0; i < 500; ++i) {
        auto tokens = testutil::numbered_tokens(8);
        pairs.push_back(plan_to_pair(tokens, mass_plan(8, 0.5, derive_seed(4, i)), "[MASS]", "ja",
                                     "m" + std::to_string(i)));
    }
    CorpusStats stats = compute_stats(pairs);
    const auto& st = stats.mask_tasks.at("[MASS]");
    CHECK(st.pairs == 500);
    CHECK(st.mask_ratio() == 0.5);           // n=8, ratio .5 -> exactly half
    CHECK(st.runs == 500);                   // one run per sentence
    CHECK(st.run_histogram.size() == 1);     // all runs length 4
    CHECK(st.run_histogram.at(4) == 500);
}

TEST_CASE("bmass run boundaries align with sidecar bunsetsu annotations") {
    Rng rng(12);
    std::vector<PretrainPair> pairs;
    std::map<std::string, AnnotatedSentence> sidecar;
    for (int i = 0; i < 300; ++i) {
        auto s = testutil::bunsetsu_sentence("b" + std::to_string(i), 2 + (int)rng.below(12), rng);
        pairs.push_back(plan_to_pair(s.tokens, bmass_plan(*s.bunsetsu, derive_seed(9, i)),
                                     "[BMASS]", "ja", s.id));
        sidecar.emplace(s.id, std::move(s));
    }
    CorpusStats stats = compute_stats(pairs, &sidecar);
    const auto& st = stats.mask_tasks.at("[BMASS]");
    CHECK(st.bunsetsu_checked == 300);
    CHECK(st.bunsetsu_violations == 0);

    // a run straddling a bunsetsu boundary is a violation: spans [0,2),[2,4)
    // with masked positions {1,2}
    AnnotatedSentence mis;
    mis.id = "mis";
    mis.lang = "ja";
    mis.tokens = testutil::numbered_tokens(4);
    mis.bunsetsu = std::vector<Span>{{0, 2}, {2, 4}};
    MaskPlan straddle;
    straddle.positions = {1, 2};
    PretrainPair bad = plan_to_pair(mis.tokens, straddle, "[BMASS]", "ja", mis.id);
    std::map<std::string, AnnotatedSentence> side2{{mis.id, mis}};
    CorpusStats bad_stats = compute_stats({bad}, &side2);
    CHECK(bad_stats.mask_tasks.at("[BMASS]").bunsetsu_violations == 1);
}

TEST_CASE("empty stream produces zeroed stats") {
    CorpusStats stats = compute_stats({});
    CHECK(stats.total_pairs == 0);
    CHECK(stats.mask_tasks.empty());
    CHECK(stats.reorder_tasks.empty());
    CHECK(stats.to_json().find("\"total_pairs\":0") != std::string::npos);
}

TEST_CASE("mask ratio agrees with a naive scanner on a 1k-pair sample") {
    Rng rng(21);
    std::vector<PretrainPair> pairs;
    for (int i = 0; i < 1000; ++i) {
        int n = 1 + (int)rng.below(20);
        auto tokens = testutil::numbered_tokens(n);
        pairs.push_back(plan_to_pair(tokens, multimass_plan(n, 0.5, rng.next_u64()),
                                     "[MULTIMASS]", "ja", "p" + std::to_string(i)));
    }
    CorpusStats stats = compute_stats(pairs);
    // naive recount, straight over the serialized pairs
    long masked = 0, total = 0;
    for (const auto& p : pairs) {
        for (const auto& t : p.src) masked += t == "[M]";
        total += (long)p.tgt.size();
    }
    CHECK(stats.mask_tasks.at("[MULTIMASS]").masked == masked);
    CHECK(stats.mask_tasks.at("[MULTIMASS]").tokens == total);
}

TEST_CASE("stats strip mix tags before measuring") {
    Rng rng(33);
    auto s = testutil::bunsetsu_sentence("t0", 9, rng);
    PretrainPair p = brss_pair(s, Direction::Forward);
    PretrainPair tagged = apply_tags(p, TaskKind::Brss, TagPolicy::Distinct);
    CorpusStats stats = compute_stats({tagged});
    const auto& st = stats.reorder_tasks.at("[BRSS]");
    CHECK(st.pairs == 1);
    CHECK(st.tokens == 9);  // tags were stripped before counting
}

TEST_CASE("infill masked count is recovered from the length identity") {
    auto tokens = testutil::numbered_tokens(12);
    PretrainPair p = bart_infill_pair(tokens, 3.0, 0.5, 77, "en", "b0");
    CorpusStats stats = compute_stats({p});
    const auto& st = stats.mask_tasks.at("[BART]");
    long num_m = 0;
    for (const auto& t : p.src) num_m += t == "[M]";
    CHECK(st.masked == 12 - (long)p.src.size() + num_m);
    CHECK(st.runs == num_m);
}

TEST_CASE("macro and micro averaging differ on mixed lengths") {
    // one fully moved short pair + one identity long pair
    PretrainPair a, b;
    a.id = "a";
    a.task = "[BRSS]";
    a.lang = "ja";
    a.src = {"y", "x"};
    a.tgt = {"x", "y"};
    b.id = "b";
    b.task = "[BRSS]";
    b.lang = "ja";
    b.src = testutil::numbered_tokens(18);
    b.tgt = b.src;
    CorpusStats stats = compute_stats({a, b});
    const auto& st = stats.reorder_tasks.at("[BRSS]");
    CHECK(st.moved_word_pct() == doctest::Approx(2.0 / 20.0));
    CHECK(st.moved_word_pct_macro() == doctest::Approx(0.5));
}
