// SPDX-License-Identifier: Apache-2.0

#include "refactordb/expression.hpp"

#include "refactordb/lexer.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>

namespace refactordb {

enum class NodeKind { Literal, Column, Negate, Arithmetic, Concat, Function, Compare, IsNull, And, Or, Not };

struct Expression::Node {
    NodeKind kind = NodeKind::Literal;
    Value literal;
    ColumnRef ref;
    std::string op;
    bool negated = false;
    std::vector<std::shared_ptr<const Node>> children;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

bool predicate_kind(NodeKind kind)
{
    return kind == NodeKind::Compare || kind == NodeKind::IsNull || kind == NodeKind::And || kind == NodeKind::Or ||
           kind == NodeKind::Not;
}

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view text) : tokens_(tokenize(text)) {}

    NodePtr parse_all()
    {
        NodePtr node = disjunction();
        expect_end();
        return node;
    }

    UpdatePayload payload()
    {
        UpdatePayload out;
        do {
            const Token& t = peek();
            if (t.kind != TokenKind::Identifier && t.kind != TokenKind::QuotedIdentifier)
                fail("expected column name", "column");
            ++pos_;
            std::string column = t.text;
            if (peek().is_symbol(".")) {
                ++pos_;
                column = name();
            }
            expect("=");
            out.assignments.push_back({column, Expression(disjunction())});
        } while (accept(","));
        if (peek().is_keyword("WHERE")) {
            ++pos_;
            out.where = Expression(disjunction());
        }
        expect_end();
        return out;
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
    }

    [[noreturn]] void fail(const std::string& message, const std::string& expected = {}) const
    {
        throw SyntaxError(message, peek().line, peek().column, expected);
    }

    bool accept(std::string_view symbol)
    {
        if (peek().is_symbol(symbol)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(std::string_view symbol)
    {
        if (!accept(symbol))
            fail(fmt::format("unexpected '{}'", peek().text), "'" + std::string(symbol) + "'");
    }

    void expect_end()
    {
        if (peek().kind != TokenKind::End)
            fail(fmt::format("unexpected '{}'", peek().text), "end of expression");
    }

    std::string name()
    {
        const Token& t = peek();
        if (t.kind != TokenKind::Identifier && t.kind != TokenKind::QuotedIdentifier)
            fail("expected identifier", "identifier");
        ++pos_;
        return t.text;
    }

    static NodePtr make(Expression::Node node) { return std::make_shared<const Expression::Node>(std::move(node)); }

    static NodePtr binary(NodeKind kind, std::string op, NodePtr left, NodePtr right)
    {
        Expression::Node node;
        node.kind = kind;
        node.op = std::move(op);
        node.children = {std::move(left), std::move(right)};
        return make(std::move(node));
    }

    NodePtr disjunction()
    {
        NodePtr left = conjunction();
        while (peek().is_keyword("OR")) {
            ++pos_;
            left = binary(NodeKind::Or, "OR", left, conjunction());
        }
        return left;
    }

    NodePtr conjunction()
    {
        NodePtr left = negation();
        while (peek().is_keyword("AND")) {
            ++pos_;
            left = binary(NodeKind::And, "AND", left, negation());
        }
        return left;
    }

    NodePtr negation()
    {
        if (peek().is_keyword("NOT")) {
            ++pos_;
            Expression::Node node;
            node.kind = NodeKind::Not;
            node.children = {negation()};
            return make(std::move(node));
        }
        return comparison();
    }

    NodePtr comparison()
    {
        NodePtr left = additive();
        static constexpr std::string_view ops[] = {"=", "<>", "!=", "<", "<=", ">", ">="};
        for (auto op : ops) {
            if (peek().is_symbol(op)) {
                ++pos_;
                return binary(NodeKind::Compare, op == "!=" ? "<>" : std::string(op), left, additive());
            }
        }
        if (peek().is_keyword("IS")) {
            ++pos_;
            Expression::Node node;
            node.kind = NodeKind::IsNull;
            if (peek().is_keyword("NOT")) {
                ++pos_;
                node.negated = true;
            }
            if (!peek().is_keyword("NULL"))
                fail("expected NULL", "NULL");
            ++pos_;
            node.children = {left};
            return make(std::move(node));
        }
        return left;
    }

    NodePtr additive()
    {
        NodePtr left = multiplicative();
        while (true) {
            if (accept("+"))
                left = binary(NodeKind::Arithmetic, "+", left, multiplicative());
            else if (accept("-"))
                left = binary(NodeKind::Arithmetic, "-", left, multiplicative());
            else if (accept("||"))
                left = binary(NodeKind::Concat, "||", left, multiplicative());
            else
                return left;
        }
    }

    NodePtr multiplicative()
    {
        NodePtr left = unary();
        while (true) {
            if (accept("*"))
                left = binary(NodeKind::Arithmetic, "*", left, unary());
            else if (accept("/"))
                left = binary(NodeKind::Arithmetic, "/", left, unary());
            else
                return left;
        }
    }

    NodePtr unary()
    {
        if (accept("-")) {
            Expression::Node node;
            node.kind = NodeKind::Negate;
            node.children = {unary()};
            return make(std::move(node));
        }
        accept("+");
        return primary();
    }

    NodePtr primary()
    {
        const Token& t = peek();
        Expression::Node node;
        if (t.kind == TokenKind::Number) {
            ++pos_;
            node.literal = *Decimal::parse(t.text);
            return make(std::move(node));
        }
        if (t.kind == TokenKind::String) {
            ++pos_;
            node.literal = t.text;
            return make(std::move(node));
        }
        if (accept("(")) {
            NodePtr inner = disjunction();
            expect(")");
            return inner;
        }
        if (t.is_keyword("NULL")) {
            ++pos_;
            return make(std::move(node));
        }
        if (t.is_keyword("DATE") && peek(1).kind == TokenKind::String) {
            auto parsed = DateTime::parse(peek(1).text);
            if (!parsed)
                fail("invalid DATE literal", "YYYY-MM-DD");
            pos_ += 2;
            node.literal = *parsed;
            return make(std::move(node));
        }
        if (t.kind == TokenKind::Identifier && peek(1).is_symbol("(")) {
            static constexpr std::string_view functions[] = {"NVL", "COALESCE", "UPPER", "LOWER", "TRIM"};
            if (std::find(std::begin(functions), std::end(functions), t.text) == std::end(functions))
                fail(fmt::format("unknown function {}", t.text), "NVL, COALESCE, UPPER, LOWER or TRIM");
            pos_ += 2;
            node.kind = NodeKind::Function;
            node.op = t.text;
            if (!peek().is_symbol(")")) {
                do {
                    node.children.push_back(disjunction());
                } while (accept(","));
            }
            expect(")");
            std::size_t n = node.children.size();
            bool arity_ok = node.op == "COALESCE" ? n >= 1 : node.op == "NVL" ? n == 2 : n == 1;
            if (!arity_ok)
                fail(fmt::format("wrong number of arguments to {}", node.op));
            return make(std::move(node));
        }
        if (t.kind == TokenKind::Identifier || t.kind == TokenKind::QuotedIdentifier) {
            ++pos_;
            node.kind = NodeKind::Column;
            node.ref.column = t.text;
            if (accept(".")) {
                node.ref.table = node.ref.column;
                node.ref.column = name();
            }
            return make(std::move(node));
        }
        fail(t.kind == TokenKind::End ? "unexpected end of expression" : fmt::format("unexpected '{}'", t.text),
             "operand");
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

std::string as_text(const Value& v)
{
    return is_null(v) ? std::string() : display(v);
}

std::optional<Decimal> as_number(const Value& v)
{
    if (auto* d = std::get_if<Decimal>(&v))
        return *d;
    if (auto* s = std::get_if<std::string>(&v))
        return Decimal::parse(*s);
    return std::nullopt;
}

// Orders two non-null values, coercing text to a number or date when the
// other side is one.
std::strong_ordering ordered(const Value& a, const Value& b)
{
    if (a.index() == b.index())
        return compare_values(a, b);
    if (std::holds_alternative<Decimal>(a) || std::holds_alternative<Decimal>(b)) {
        auto x = as_number(a), y = as_number(b);
        if (x && y)
            return *x <=> *y;
    }
    if (std::holds_alternative<DateTime>(a) && std::holds_alternative<std::string>(b)) {
        if (auto d = DateTime::parse(std::get<std::string>(b)))
            return std::get<DateTime>(a) <=> *d;
    }
    if (std::holds_alternative<std::string>(a) && std::holds_alternative<DateTime>(b)) {
        if (auto d = DateTime::parse(std::get<std::string>(a)))
            return *d <=> std::get<DateTime>(b);
    }
    throw EvaluationError(fmt::format("cannot compare {} with {}", to_literal(a), to_literal(b)));
}

struct Evaluator {
    const RowResolver& row;

    Value scalar(const Expression::Node& n) const
    {
        switch (n.kind) {
        case NodeKind::Literal:
            return n.literal;
        case NodeKind::Column: {
            auto v = row(n.ref);
            if (!v)
                throw EvaluationError(
                    fmt::format("unknown column {}", n.ref.table.empty() ? n.ref.column : n.ref.table + "." + n.ref.column));
            return *v;
        }
        case NodeKind::Negate: {
            Value v = scalar(*n.children[0]);
            if (is_null(v))
                return v;
            auto d = as_number(v);
            if (!d)
                throw EvaluationError("cannot negate " + to_literal(v));
            return Decimal::from_long_double(-d->to_long_double());
        }
        case NodeKind::Arithmetic: {
            Value a = scalar(*n.children[0]), b = scalar(*n.children[1]);
            if (is_null(a) || is_null(b))
                return Null{};
            auto x = as_number(a), y = as_number(b);
            if (!x || !y)
                throw EvaluationError(fmt::format("non-numeric operand to {}", n.op));
            long double l = x->to_long_double(), r = y->to_long_double();
            if (n.op == "+")
                return Decimal::from_long_double(l + r);
            if (n.op == "-")
                return Decimal::from_long_double(l - r);
            if (n.op == "*")
                return Decimal::from_long_double(l * r);
            if (r == 0)
                throw EvaluationError("division by zero");
            return Decimal::from_long_double(l / r);
        }
        case NodeKind::Concat:
            return as_text(scalar(*n.children[0])) + as_text(scalar(*n.children[1]));
        case NodeKind::Function: {
            if (n.op == "NVL" || n.op == "COALESCE") {
                for (const auto& child : n.children) {
                    Value v = scalar(*child);
                    if (!is_null(v))
                        return v;
                }
                return Null{};
            }
            Value v = scalar(*n.children[0]);
            if (is_null(v))
                return v;
            std::string s = display(v);
            if (n.op == "UPPER")
                std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
            else if (n.op == "LOWER")
                std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
            else {
                auto first = s.find_first_not_of(' ');
                auto last = s.find_last_not_of(' ');
                s = first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
            }
            return s;
        }
        default:
            break;
        }
        throw EvaluationError("a condition cannot be used as a value");
    }

    std::optional<bool> predicate(const Expression::Node& n) const
    {
        switch (n.kind) {
        case NodeKind::Compare: {
            Value a = scalar(*n.children[0]), b = scalar(*n.children[1]);
            if (is_null(a) || is_null(b))
                return std::nullopt;
            auto c = ordered(a, b);
            if (n.op == "=")
                return c == 0;
            if (n.op == "<>")
                return c != 0;
            if (n.op == "<")
                return c < 0;
            if (n.op == "<=")
                return c <= 0;
            if (n.op == ">")
                return c > 0;
            return c >= 0;
        }
        case NodeKind::IsNull:
            return is_null(scalar(*n.children[0])) != n.negated;
        case NodeKind::Not: {
            auto v = predicate(*n.children[0]);
            return v ? std::optional<bool>(!*v) : std::nullopt;
        }
        case NodeKind::And: {
            auto a = predicate(*n.children[0]), b = predicate(*n.children[1]);
            if ((a && !*a) || (b && !*b))
                return false;
            if (a && b)
                return true;
            return std::nullopt;
        }
        case NodeKind::Or: {
            auto a = predicate(*n.children[0]), b = predicate(*n.children[1]);
            if ((a && *a) || (b && *b))
                return true;
            if (a && b)
                return false;
            return std::nullopt;
        }
        default:
            break;
        }
        throw EvaluationError("a value cannot be used as a condition");
    }
};

void collect(const Expression::Node& n, std::vector<ColumnRef>& out)
{
    if (n.kind == NodeKind::Column)
        out.push_back(n.ref);
    for (const auto& child : n.children)
        collect(*child, out);
}

} // namespace

Value Expression::evaluate(const RowResolver& row) const
{
    return Evaluator{row}.scalar(*root_);
}

std::optional<bool> Expression::test(const RowResolver& row) const
{
    return Evaluator{row}.predicate(*root_);
}

std::vector<ColumnRef> Expression::column_refs() const
{
    std::vector<ColumnRef> out;
    if (root_)
        collect(*root_, out);
    return out;
}

bool Expression::is_predicate() const
{
    return root_ && predicate_kind(root_->kind);
}

Expression parse_expression(std::string_view text)
{
    return Expression(ExpressionParser(text).parse_all());
}

UpdatePayload parse_update_payload(std::string_view text)
{
    return ExpressionParser(text).payload();
}

} // namespace refactordb
