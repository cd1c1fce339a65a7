#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "forge/rng.hpp"
#include "forge/subword.hpp"
#include "forge/tree.hpp"
#include "testutil.hpp"

using namespace forge;

TEST_CASE("single leaf") {
    ParseTree t = ParseTree::parse(R"((sentence (tok "hi")))");
    CHECK(t.token_count() == 1);
    CHECK(t.yield_tokens() == std::vector<std::string>{"hi"});
}

TEST_CASE("two-leaf tree with left head") {
    ParseTree t = ParseTree::parse(R"((sentence (cons :head l (tok "hit") (tok "ball"))))");
    CHECK(t.token_count() == 2);
    CHECK(t.yield_tokens() == std::vector<std::string>{"hit", "ball"});
    const TreeNode& root = t.node(t.root());
    CHECK(root.kind == NodeKind::Sentence);
    CHECK(t.node(root.left).head == HeadSide::Left);
}

TEST_CASE("balanced 8-leaf tree caches counts at every level") {
    auto toks = testutil::numbered_tokens(8, "x");
    std::string quad1 = "(cons :head r (cons :head r (tok \"x0\") (tok \"x1\")) "
                        "(cons :head r (tok \"x2\") (tok \"x3\")))";
    std::string quad2 = "(cons :head r (cons :head r (tok \"x4\") (tok \"x5\")) "
                        "(cons :head r (tok \"x6\") (tok \"x7\")))";
    ParseTree t = ParseTree::parse("(sentence (cons :head r " + quad1 + " " + quad2 + "))");
    CHECK(t.token_count() == 8);
    int top = t.node(t.root()).left;
    CHECK(t.node(t.node(top).left).token_count == 4);
    CHECK(t.node(t.node(top).right).token_count == 4);
    CHECK(t.node(t.node(top).right).yield_start == 4);
    CHECK(t.yield_tokens() == toks);
}

TEST_CASE("unary cons chains collapse to the child") {
    ParseTree t = ParseTree::parse(R"((sentence (cons (cons (tok "a")))))");
    CHECK(t.token_count() == 1);
    CHECK(t.yield_tokens() == std::vector<std::string>{"a"});
    ParseTree u = ParseTree::parse(
        R"((sentence (cons :head r (cons (tok "a")) (cons (cons (tok "b"))))))");
    CHECK(u.yield_tokens() == std::vector<std::string>{"a", "b"});
    CHECK(u.serialize() == R"((sentence (cons :head r (tok "a") (tok "b"))))");
}

TEST_CASE("fig-4-shaped tree yields its sentence") {
    // (john ((hit) (a ball))) with heads marking the verb/noun
    ParseTree t = ParseTree::parse(
        R"((sentence (cons :head r (tok "john") (cons :head l (tok "hit") (cons :head r (tok "a") (tok "ball"))))))");
    CHECK(t.yield_tokens() == std::vector<std::string>{"john", "hit", "a", "ball"});
    CHECK(t.token_count() == 4);
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(ParseTree::parse("(sentence (tok \"a\")"), TreeParseError);
    CHECK_THROWS_AS(ParseTree::parse("(tok \"a\")"), TreeParseError);
    CHECK_THROWS_AS(ParseTree::parse(R"((sentence (cons (tok "a") (tok "b"))))"), TreeParseError);
    CHECK_THROWS_AS(ParseTree::parse(R"((sentence (cons :head x (tok "a") (tok "b"))))"),
                    TreeParseError);
    CHECK_THROWS_AS(ParseTree::parse(R"((sentence (tok "")))"), TreeParseError);
    CHECK_THROWS_AS(ParseTree::parse(R"((sentence (tok "a")) trailing)"), TreeParseError);
    try {
        ParseTree::parse("(sentence (tok \"a\")");
    } catch (const TreeParseError& e) {
        CHECK(e.offset == 19);
    }
}

TEST_CASE("escapes in token strings round-trip") {
    ParseTree t = ParseTree::parse(R"((sentence (tok "a\"b\\c")))");
    CHECK(t.yield_tokens() == std::vector<std::string>{"a\"b\\c"});
    CHECK(ParseTree::parse(t.serialize()) == t);
}

TEST_CASE("serialize then parse is the identity on random trees") {
    Rng rng(404);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + static_cast<int>(rng.below(14));
        auto shape = testutil::random_shape(n, 0, rng);
        auto toks = testutil::numbered_tokens(n);
        ParseTree t = ParseTree::parse(testutil::to_sexpr(*shape, toks));
        ParseTree u = ParseTree::parse(t.serialize());
        CHECK(u == t);
        CHECK(t.yield_tokens() == toks);
    }
}

TEST_CASE("token_count caches match recomputed yields on random trees") {
    Rng rng(77);
    for (int iter = 0; iter < 100; ++iter) {
        int n = 1 + static_cast<int>(rng.below(12));
        auto shape = testutil::random_shape(n, 0, rng);
        ParseTree t = ParseTree::parse(testutil::to_sexpr(*shape, testutil::numbered_tokens(n)));
        for (size_t i = 0; i < t.size(); ++i) {
            const TreeNode& node = t.node(static_cast<int>(i));
            // recount by walking
            std::vector<int> stack{static_cast<int>(i)};
            int leaves = 0;
            while (!stack.empty()) {
                int id = stack.back();
                stack.pop_back();
                const TreeNode& m = t.node(id);
                if (m.kind == NodeKind::Tok)
                    ++leaves;
                else if (m.kind == NodeKind::Sentence)
                    stack.push_back(m.left);
                else {
                    stack.push_back(m.left);
                    stack.push_back(m.right);
                }
            }
            CHECK(node.token_count == leaves);
        }
    }
}

TEST_CASE("remap_spans identity alignment") {
    SubwordAlignment a{{1, 1}};
    std::vector<Span> spans{{0, 2}};
    CHECK(remap_spans(spans, a) == spans);
}

TEST_CASE("remap_spans expands by prefix sums") {
    CHECK(remap_spans({{0, 1}, {1, 2}}, SubwordAlignment{{3, 2}}) ==
          std::vector<Span>{{0, 3}, {3, 5}});
    CHECK(remap_spans({{0, 2}, {2, 3}}, SubwordAlignment{{2, 1, 4}}) ==
          std::vector<Span>{{0, 3}, {3, 7}});
}

TEST_CASE("remap_spans rejects mismatched inputs") {
    CHECK_THROWS_AS(remap_spans({{0, 2}}, SubwordAlignment{{1, 1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(remap_spans({{0, 1}, {2, 3}}, SubwordAlignment{{1, 1, 1}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(remap_spans({{0, 1}}, SubwordAlignment{{0}}), std::invalid_argument);
}

TEST_CASE("mutated tree text either parses or throws a parse error") {
    Rng rng(606);
    for (int iter = 0; iter < 500; ++iter) {
        int n = 1 + (int)rng.below(6);
        auto shape = testutil::random_shape(n, 0, rng);
        std::string text = testutil::to_sexpr(*shape, testutil::numbered_tokens(n));
        for (int m = 0; m < 4; ++m) {
            std::string mutated = text;
            size_t pos = rng.below(mutated.size());
            switch (rng.below(3)) {
                case 0: mutated[pos] = "()\" lrh:"[rng.below(8)]; break;
                case 1: mutated.erase(pos, 1); break;
                default: mutated.insert(pos, 1, '('); break;
            }
            try {
                ParseTree t = ParseTree::parse(mutated);
                CHECK(t.token_count() >= 1);  // survived: must still be coherent
            } catch (const TreeParseError&) {
            }
        }
    }
}

TEST_CASE("remap_spans preserves tiling and composes") {
    Rng rng(5);
    for (int iter = 0; iter < 200; ++iter) {
        int n = 1 + static_cast<int>(rng.below(12));
        std::vector<Span> spans;
        int pos = 0;
        while (pos < n) {
            int size = 1 + static_cast<int>(rng.below(3));
            size = std::min(size, n - pos);
            spans.emplace_back(pos, pos + size);
            pos += size;
        }
        SubwordAlignment a, b;
        for (int i = 0; i < n; ++i) a.pieces_per_token.push_back(1 + (int)rng.below(3));
        int total_a = 0;
        for (int p : a.pieces_per_token) total_a += p;
        for (int i = 0; i < total_a; ++i) b.pieces_per_token.push_back(1 + (int)rng.below(2));

        auto once = remap_spans(spans, a);
        CHECK(once.size() == spans.size());
        CHECK(spans_tile(once, total_a));

        // composing alignments equals remapping through the expanded product
        auto twice = remap_spans(once, b);
        SubwordAlignment prod;
        int cursor = 0;
        for (int p : a.pieces_per_token) {
            int sum = 0;
            for (int k = 0; k < p; ++k) sum += b.pieces_per_token[cursor++];
            prod.pieces_per_token.push_back(sum);
        }
        CHECK(twice == remap_spans(spans, prod));
    }
}
