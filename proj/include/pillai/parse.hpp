#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "pillai/errors.hpp"
#include "pillai/ratfunc.hpp"

namespace pillai {

// Expression grammar over a single variable x:
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := base ('^' ['-'] integer)?
//   base   := integer | 'x' | '(' expr ')'
// Rational literals are integer pairs written with '/', which the division
// rule already covers. No decimals.
struct ExprNode {
    enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg };

    Kind kind;
    Rational value;   // Number
    long exponent = 0;
    std::unique_ptr<ExprNode> lhs;
    std::unique_ptr<ExprNode> rhs;
    std::size_t offset = 0;  // source position, for evaluation diagnostics
};

class ExpressionAst {
public:
    static ExpressionAst parse(std::string_view text) {
        Parser parser{text, 0};
        ExpressionAst ast;
        ast.root_ = parser.parse_expr();
        parser.skip_ws();
        if (parser.pos < text.size()) {
            throw ParseError(parser.pos, "unexpected trailing input");
        }
        return ast;
    }

    RatFunc evaluate() const { return eval(*root_); }

private:
    static RatFunc eval(const ExprNode& node) {
        switch (node.kind) {
            case ExprNode::Kind::Number:
                return RatFunc::constant(node.value);
            case ExprNode::Kind::Variable:
                return RatFunc::variable();
            case ExprNode::Kind::Add:
                return eval(*node.lhs) + eval(*node.rhs);
            case ExprNode::Kind::Sub:
                return eval(*node.lhs) - eval(*node.rhs);
            case ExprNode::Kind::Mul:
                return eval(*node.lhs) * eval(*node.rhs);
            case ExprNode::Kind::Div: {
                RatFunc den = eval(*node.rhs);
                if (den.is_zero()) {
                    throw DomainError(ErrorKind::DivisionByZeroInExpression,
                                      "division by zero at offset " + std::to_string(node.offset));
                }
                return eval(*node.lhs) / den;
            }
            case ExprNode::Kind::Pow: {
                RatFunc base = eval(*node.lhs);
                if (base.is_zero() && node.exponent < 0) {
                    throw DomainError(ErrorKind::DivisionByZeroInExpression,
                                      "zero raised to a negative power at offset " +
                                          std::to_string(node.offset));
                }
                return base.pow(node.exponent);
            }
            case ExprNode::Kind::Neg:
                return -eval(*node.lhs);
        }
        throw InternalError("unreachable expression node");
    }

    struct Parser {
        std::string_view text;
        std::size_t pos;

        void skip_ws() {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        }

        bool peek_is(char c) {
            skip_ws();
            return pos < text.size() && text[pos] == c;
        }

        bool consume(char c) {
            if (!peek_is(c)) return false;
            ++pos;
            return true;
        }

        std::unique_ptr<ExprNode> make(ExprNode::Kind kind, std::size_t offset) {
            auto node = std::make_unique<ExprNode>();
            node->kind = kind;
            node->offset = offset;
            return node;
        }

        std::unique_ptr<ExprNode> parse_expr() {
            skip_ws();
            std::size_t start = pos;
            std::unique_ptr<ExprNode> lhs;
            if (consume('-')) {
                auto node = make(ExprNode::Kind::Neg, start);
                node->lhs = parse_term();
                lhs = std::move(node);
            } else {
                lhs = parse_term();
            }
            for (;;) {
                skip_ws();
                std::size_t at = pos;
                if (consume('+')) {
                    auto node = make(ExprNode::Kind::Add, at);
                    node->lhs = std::move(lhs);
                    node->rhs = parse_term();
                    lhs = std::move(node);
                } else if (consume('-')) {
                    auto node = make(ExprNode::Kind::Sub, at);
                    node->lhs = std::move(lhs);
                    node->rhs = parse_term();
                    lhs = std::move(node);
                } else {
                    return lhs;
                }
            }
        }

        std::unique_ptr<ExprNode> parse_term() {
            auto lhs = parse_factor();
            for (;;) {
                skip_ws();
                std::size_t at = pos;
                if (consume('*')) {
                    auto node = make(ExprNode::Kind::Mul, at);
                    node->lhs = std::move(lhs);
                    node->rhs = parse_factor();
                    lhs = std::move(node);
                } else if (consume('/')) {
                    auto node = make(ExprNode::Kind::Div, at);
                    node->lhs = std::move(lhs);
                    node->rhs = parse_factor();
                    lhs = std::move(node);
                } else {
                    return lhs;
                }
            }
        }

        std::unique_ptr<ExprNode> parse_factor() {
            auto base = parse_base();
            skip_ws();
            std::size_t at = pos;
            if (consume('^')) {
                auto node = make(ExprNode::Kind::Pow, at);
                node->lhs = std::move(base);
                node->exponent = parse_exponent();
                return node;
            }
            return base;
        }

        long parse_exponent() {
            skip_ws();
            bool negative = consume('-');
            skip_ws();
            std::size_t start = pos;
            Integer value = parse_digits("integer exponent expected");
            if (!value.fits_slong_p()) {
                throw ParseError(start, "exponent out of range");
            }
            long e = value.get_si();
            return negative ? -e : e;
        }

        std::unique_ptr<ExprNode> parse_base() {
            skip_ws();
            if (pos >= text.size()) {
                throw ParseError(pos, "unexpected end of expression");
            }
            std::size_t at = pos;
            char c = text[pos];
            if (c == '(') {
                ++pos;
                auto inner = parse_expr();
                if (!consume(')')) {
                    throw ParseError(pos, "expected ')'");
                }
                return inner;
            }
            if (c == 'x') {
                ++pos;
                return make(ExprNode::Kind::Variable, at);
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                auto node = make(ExprNode::Kind::Number, at);
                node->value = Rational(parse_digits("digit expected"));
                return node;
            }
            throw ParseError(pos, std::string("unexpected character '") + c + "'");
        }

        Integer parse_digits(const char* expectation) {
            skip_ws();
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (pos == start) {
                throw ParseError(start, expectation);
            }
            return Integer(std::string(text.substr(start, pos - start)), 10);
        }
    };

    std::unique_ptr<ExprNode> root_;
};

inline RatFunc parse_expression(std::string_view text) {
    return ExpressionAst::parse(text).evaluate();
}

}  // namespace pillai
