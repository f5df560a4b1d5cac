#include "afftool/expr.hpp"

#include <cctype>

namespace afftool {

bool ExprNode::equal(const ExprNode& o) const {
    if (kind != o.kind || n != o.n || power != o.power) return false;
    if (kind == Kind::literal && literal != o.literal) return false;
    if (children.size() != o.children.size()) return false;
    for (std::size_t i = 0; i < children.size(); ++i)
        if (!children[i]->equal(*o.children[i])) return false;
    return true;
}

namespace {

struct Parser {
    const std::string& text;
    u32 p;
    std::size_t i = 0;

    void skip_ws() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    }

    [[noreturn]] void fail(const std::string& what) { throw ParseError(what, i); }

    u64 number() {
        skip_ws();
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected number");
        u64 v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            v = v * 10 + (text[i++] - '0');
            if (v > (u64(1) << 40)) fail("number too large");
        }
        return v;
    }

    std::unique_ptr<ExprNode> atom() {
        skip_ws();
        if (i >= text.size()) fail("expected atom");
        std::size_t start = i;
        char c = text[i];
        auto node = std::make_unique<ExprNode>();
        node->pos = start;
        if (c == '(') {
            ++i;
            auto inner = expr();
            skip_ws();
            if (i >= text.size() || text[i] != ')') fail("expected ')'");
            ++i;
            return inner;
        }
        if (c == '[') {
            std::size_t depth = 0, j = i;
            while (j < text.size()) {
                if (text[j] == '[') ++depth;
                if (text[j] == ']' && --depth == 0) break;
                ++j;
            }
            if (j >= text.size()) fail("unterminated matrix literal");
            node->kind = ExprNode::Kind::literal;
            node->literal = parse_matrix(text.substr(i, j - i + 1), p);
            i = j + 1;
            return node;
        }
        if (c == 'J' || c == 'j') {
            ++i;
            node->kind = ExprNode::Kind::jordan;
            node->n = u32(number());
            return node;
        }
        if (c == 'I' || c == 'i') {
            ++i;
            node->kind = ExprNode::Kind::identity;
            node->n = u32(number());
            return node;
        }
        if (c == 'S' || c == 's') {
            ++i;
            node->kind = ExprNode::Kind::singer;
            node->n = u32(number());
            if (node->n < 1) fail("singer block size must be >= 1");
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                node->power = number();
                if (node->power < 1) fail("singer exponent must be >= 1");
            }
            return node;
        }
        fail("expected atom");
    }

    std::unique_ptr<ExprNode> prod() {
        auto left = atom();
        skip_ws();
        while (i < text.size() && text[i] == '*') {
            std::size_t at = i;
            ++i;
            auto right = atom();
            auto node = std::make_unique<ExprNode>();
            node->kind = ExprNode::Kind::tensor;
            node->pos = at;
            node->children.push_back(std::move(left));
            node->children.push_back(std::move(right));
            left = std::move(node);
            skip_ws();
        }
        return left;
    }

    std::unique_ptr<ExprNode> expr() {
        auto left = prod();
        skip_ws();
        while (i < text.size() && text[i] == '+') {
            std::size_t at = i;
            ++i;
            auto right = prod();
            if (left->kind == ExprNode::Kind::dsum) {
                left->children.push_back(std::move(right));
            } else {
                auto node = std::make_unique<ExprNode>();
                node->kind = ExprNode::Kind::dsum;
                node->pos = at;
                node->children.push_back(std::move(left));
                node->children.push_back(std::move(right));
                left = std::move(node);
            }
            skip_ws();
        }
        return left;
    }
};

}  // namespace

std::unique_ptr<ExprNode> parse_element(const std::string& text, u32 p) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
    Parser parser{text, p};
    auto node = parser.expr();
    parser.skip_ws();
    if (parser.i != text.size()) parser.fail("trailing input");
    return node;
}

Matrix eval_element(const ExprNode& node, u32 p) {
    switch (node.kind) {
        case ExprNode::Kind::jordan:
            return jordan_block(p, node.n);
        case ExprNode::Kind::identity:
            return Matrix::identity(p, node.n);
        case ExprNode::Kind::singer:
            return singer(p, node.n, node.power);
        case ExprNode::Kind::literal:
            return node.literal;
        case ExprNode::Kind::dsum: {
            std::vector<Matrix> parts;
            for (const auto& c : node.children) parts.push_back(eval_element(*c, p));
            return direct_sum(p, parts);
        }
        case ExprNode::Kind::tensor: {
            Matrix m = eval_element(*node.children[0], p);
            for (std::size_t i = 1; i < node.children.size(); ++i)
                m = kronecker(m, eval_element(*node.children[i], p));
            return m;
        }
    }
    throw std::logic_error("eval_element: bad node");
}

std::string print_element(const ExprNode& node) {
    switch (node.kind) {
        case ExprNode::Kind::jordan:
            return "J" + std::to_string(node.n);
        case ExprNode::Kind::identity:
            return "I" + std::to_string(node.n);
        case ExprNode::Kind::singer:
            return "S" + std::to_string(node.n) +
                   (node.power != 1 ? "^" + std::to_string(node.power) : "");
        case ExprNode::Kind::literal:
            return matrix_to_string(node.literal);
        case ExprNode::Kind::dsum: {
            std::string s;
            for (std::size_t i = 0; i < node.children.size(); ++i) {
                if (i) s += "+";
                s += print_element(*node.children[i]);
            }
            return s;
        }
        case ExprNode::Kind::tensor: {
            std::string s;
            for (std::size_t i = 0; i < node.children.size(); ++i) {
                if (i) s += "*";
                const ExprNode& c = *node.children[i];
                bool paren = c.kind == ExprNode::Kind::dsum;
                s += paren ? "(" + print_element(c) + ")" : print_element(c);
            }
            return s;
        }
    }
    throw std::logic_error("print_element: bad node");
}

}  // namespace afftool
