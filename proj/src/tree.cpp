#include "forge/tree.hpp"

namespace forge {

namespace {

struct Lexer {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
                                     text[pos] == '\r'))
            ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw TreeParseError(msg, pos); }

    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            fail(std::string("expected '") + c + "'");
        ++pos;
    }

    std::string_view symbol() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && text[pos] != '(' && text[pos] != ')' && text[pos] != ' ' &&
               text[pos] != '\t' && text[pos] != '\n' && text[pos] != '\r' && text[pos] != '"')
            ++pos;
        if (pos == start) fail("expected symbol");
        return text.substr(start, pos - start);
    }

    char peek() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        return text[pos];
    }

    std::string quoted() {
        expect('"');
        std::string out;
        while (pos < text.size() && text[pos] != '"') {
            char c = text[pos];
            if (c == '\\') {
                ++pos;
                if (pos >= text.size()) fail("dangling escape");
                c = text[pos];
                if (c != '"' && c != '\\') fail("unknown escape");
            }
            out.push_back(c);
            ++pos;
        }
        if (pos >= text.size()) fail("unterminated string");
        ++pos;
        return out;
    }

    bool done() {
        skip_ws();
        return pos >= text.size();
    }
};

}  // namespace

int ParseTree::add_tok(std::string token) {
    TreeNode n;
    n.kind = NodeKind::Tok;
    n.token = std::move(token);
    n.token_count = 1;
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
}

int ParseTree::add_cons(HeadSide head, int left, int right) {
    TreeNode n;
    n.kind = NodeKind::Cons;
    n.head = head;
    n.left = left;
    n.right = right;
    n.token_count = nodes_[left].token_count + nodes_[right].token_count;
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
}

int ParseTree::add_sentence(int child) {
    TreeNode n;
    n.kind = NodeKind::Sentence;
    n.left = child;
    n.token_count = nodes_[child].token_count;
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
}

void ParseTree::finish(int root) {
    root_ = root;
    assign_yield_starts(root_, 0);
}

void ParseTree::assign_yield_starts(int node, int start) {
    TreeNode& n = nodes_[node];
    n.yield_start = start;
    if (n.kind == NodeKind::Sentence) {
        assign_yield_starts(n.left, start);
    } else if (n.kind == NodeKind::Cons) {
        assign_yield_starts(n.left, start);
        assign_yield_starts(n.right, start + nodes_[n.left].token_count);
    }
}

namespace {

int parse_node(Lexer& lx, ParseTree& tree) {
    lx.expect('(');
    std::string_view tag = lx.symbol();
    if (tag == "tok") {
        std::string word = lx.quoted();
        if (word.empty()) lx.fail("empty token");
        lx.expect(')');
        return tree.add_tok(std::move(word));
    }
    if (tag != "cons") lx.fail("expected 'cons' or 'tok', got '" + std::string(tag) + "'");
    if (lx.peek() == '(') {
        // unary cons: collapse to the child
        int child = parse_node(lx, tree);
        lx.expect(')');
        return child;
    }
    std::string_view kw = lx.symbol();
    if (kw != ":head") lx.fail("binary cons requires ':head l|r'");
    std::string_view side = lx.symbol();
    HeadSide head;
    if (side == "l")
        head = HeadSide::Left;
    else if (side == "r")
        head = HeadSide::Right;
    else
        lx.fail("head marker must be 'l' or 'r'");
    int left = parse_node(lx, tree);
    int right = parse_node(lx, tree);
    lx.expect(')');
    return tree.add_cons(head, left, right);
}

}  // namespace

ParseTree ParseTree::parse(std::string_view text) {
    Lexer lx{text};
    ParseTree tree;
    lx.expect('(');
    if (lx.symbol() != "sentence") lx.fail("tree must start with '(sentence'");
    int child = parse_node(lx, tree);
    lx.expect(')');
    if (!lx.done()) lx.fail("trailing input after tree");
    tree.finish(tree.add_sentence(child));
    return tree;
}

void ParseTree::serialize_node(int node, std::string& out) const {
    const TreeNode& n = nodes_[node];
    switch (n.kind) {
        case NodeKind::Tok: {
            out += "(tok \"";
            for (char c : n.token) {
                if (c == '"' || c == '\\') out += '\\';
                out += c;
            }
            out += "\")";
            break;
        }
        case NodeKind::Cons:
            out += "(cons :head ";
            out += (n.head == HeadSide::Left ? 'l' : 'r');
            out += ' ';
            serialize_node(n.left, out);
            out += ' ';
            serialize_node(n.right, out);
            out += ')';
            break;
        case NodeKind::Sentence:
            out += "(sentence ";
            serialize_node(n.left, out);
            out += ')';
            break;
    }
}

std::string ParseTree::serialize() const {
    std::string out;
    serialize_node(root_, out);
    return out;
}

std::vector<std::string> ParseTree::yield_tokens() const {
    std::vector<std::string> out;
    out.reserve(token_count());
    std::vector<int> stack{root_};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        const TreeNode& n = nodes_[id];
        if (n.kind == NodeKind::Tok) {
            out.push_back(n.token);
        } else if (n.kind == NodeKind::Sentence) {
            stack.push_back(n.left);
        } else {
            stack.push_back(n.right);
            stack.push_back(n.left);
        }
    }
    return out;
}

bool ParseTree::node_equal(int a, const ParseTree& other, int b) const {
    const TreeNode& na = nodes_[a];
    const TreeNode& nb = other.nodes_[b];
    if (na.kind != nb.kind) return false;
    switch (na.kind) {
        case NodeKind::Tok:
            return na.token == nb.token;
        case NodeKind::Sentence:
            return node_equal(na.left, other, nb.left);
        case NodeKind::Cons:
            return na.head == nb.head && node_equal(na.left, other, nb.left) &&
                   node_equal(na.right, other, nb.right);
    }
    return false;
}

bool ParseTree::operator==(const ParseTree& other) const {
    if (root_ < 0 || other.root_ < 0) return root_ == other.root_;
    return node_equal(root_, other, other.root_);
}

}  // namespace forge
