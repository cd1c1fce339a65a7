#ifndef FORGE_TREE_HPP
#define FORGE_TREE_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace forge {

struct TreeParseError : std::runtime_error {
    size_t offset;  // byte offset into the s-expression text
    TreeParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

enum class NodeKind { Sentence, Cons, Tok };
enum class HeadSide { Left, Right };

struct TreeNode {
    NodeKind kind = NodeKind::Tok;
    HeadSide head = HeadSide::Right;  // cons only
    std::string token;                // tok only
    int left = -1;                    // cons: left child; sentence: the single child
    int right = -1;                   // cons only
    int token_count = 0;              // cached yield size
    int yield_start = 0;              // index of the node's first leaf in the sentence
};

// Binary head-annotated constituency tree. The root is always a sentence
// node with exactly one child; cons nodes always carry two children and a
// head marker. Unary cons wrappers are legal in the input text and collapse
// to their child during parsing. Immutable after construction.
class ParseTree {
public:
    // Grammar:
    //   tree     := '(' 'sentence' node ')'
    //   node     := '(' 'cons' ':head' ('l'|'r') node node ')'
    //             | '(' 'cons' node ')'            -- unary, collapsed
    //             | '(' 'tok' string ')'
    //   string   := '"' chars with \" and \\ escapes '"'
    static ParseTree parse(std::string_view text);

    // Canonical form; parse(serialize()) reproduces the tree exactly.
    std::string serialize() const;

    std::vector<std::string> yield_tokens() const;

    int root() const { return root_; }
    int token_count() const { return nodes_[root_].token_count; }
    const TreeNode& node(int i) const { return nodes_[i]; }
    size_t size() const { return nodes_.size(); }

    bool operator==(const ParseTree& other) const;

    // Builder interface used by the reorder pass and by tests. add_* return
    // node ids; finish() designates the root and computes yield offsets.
    int add_tok(std::string token);
    int add_cons(HeadSide head, int left, int right);
    int add_sentence(int child);
    void finish(int root);

private:
    std::vector<TreeNode> nodes_;
    int root_ = -1;

    void assign_yield_starts(int node, int start);
    void serialize_node(int node, std::string& out) const;
    bool node_equal(int a, const ParseTree& other, int b) const;
};

}  // namespace forge

#endif
