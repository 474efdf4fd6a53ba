// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refactordb/errors.hpp"
#include "refactordb/value.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refactordb {

/// Raised when an expression cannot be evaluated against a row.
class EvaluationError : public Error {
public:
    using Error::Error;
};

struct ColumnRef {
    /// Table qualifier, empty when the reference is bare.
    std::string table;
    std::string column;

    bool operator==(const ColumnRef&) const = default;
};

/// Resolves a column reference to its value for the current row; nullopt
/// when the reference does not name a visible column.
using RowResolver = std::function<std::optional<Value>(const ColumnRef&)>;

/// The small expression language accepted in MERGE payloads and migration
/// conditions: literals, column references (optionally table-qualified),
/// `||`, `+ - * /`, comparisons, `IS [NOT] NULL`, `AND`/`OR`/`NOT` and the
/// functions NVL, COALESCE, UPPER, LOWER, TRIM.
class Expression {
public:
    struct Node;

    Expression() = default;
    explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    /// Scalar value; `||` reads NULL as empty text.
    Value evaluate(const RowResolver& row) const;
    /// Three-valued predicate result; nullopt is UNKNOWN.
    std::optional<bool> test(const RowResolver& row) const;

    std::vector<ColumnRef> column_refs() const;
    bool is_predicate() const;

private:
    std::shared_ptr<const Node> root_;
};

/// Throws SyntaxError.
Expression parse_expression(std::string_view text);

struct Assignment {
    std::string column;
    Expression value;
};

/// `col = expr [, col = expr]... [WHERE condition]`
struct UpdatePayload {
    std::vector<Assignment> assignments;
    std::optional<Expression> where;
};

/// Throws SyntaxError.
UpdatePayload parse_update_payload(std::string_view text);

} // namespace refactordb
