#pragma once

#include <memory>
#include <string>
#include <vector>

#include "afftool/matrix.hpp"

namespace afftool {

// Element expressions:  expr := prod ("+" prod)*       direct sum
//                        prod := atom ("*" atom)*      tensor product
//                        atom := "J"n | "S"n["^"i] | "I"n | matrix literal | "(" expr ")"
struct ExprNode {
    enum class Kind { jordan, singer, identity, literal, dsum, tensor };
    Kind kind;
    u32 n = 0;                 // block size for jordan/singer/identity
    u64 power = 1;             // singer exponent
    Matrix literal;            // literal atom
    std::vector<std::unique_ptr<ExprNode>> children;
    std::size_t pos = 0;       // source offset, for diagnostics

    bool equal(const ExprNode& o) const;
};

struct ParseError : std::invalid_argument {
    std::size_t offset;
    ParseError(const std::string& what, std::size_t off)
        : std::invalid_argument(what + " at offset " + std::to_string(off)), offset(off) {}
};

std::unique_ptr<ExprNode> parse_element(const std::string& text, u32 p);
Matrix eval_element(const ExprNode& node, u32 p);
std::string print_element(const ExprNode& node);

}  // namespace afftool
