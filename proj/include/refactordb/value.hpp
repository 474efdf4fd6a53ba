// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace refactordb {

struct DataType;

/// Exact decimal kept in canonical text form: optional `-`, integer digits
/// without leading zeros, optional fraction without trailing zeros.
class Decimal {
public:
    Decimal() : text_("0") {}

    /// nullopt unless `text` is `[+-]digits[.digits]` or `[+-].digits`.
    static std::optional<Decimal> parse(std::string_view text);
    static Decimal from_long_double(long double value);

    const std::string& str() const noexcept { return text_; }
    bool negative() const noexcept { return text_.front() == '-'; }
    /// Significant integer digits; 0 for values with |x| < 1.
    int integer_digits() const;
    int fraction_digits() const;
    long double to_long_double() const;

    friend bool operator==(const Decimal& a, const Decimal& b) { return a.text_ == b.text_; }
    friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);

private:
    explicit Decimal(std::string canonical) : text_(std::move(canonical)) {}
    std::string text_;
};

/// A DATE value: calendar date plus time of day, second resolution.
struct DateTime {
    std::chrono::sys_seconds instant{};

    static std::optional<DateTime> parse(std::string_view text);
    /// `YYYY-MM-DD` at midnight, `YYYY-MM-DD HH:MM:SS` otherwise.
    std::string str() const;

    auto operator<=>(const DateTime&) const = default;
};

using Null = std::monostate;
using Value = std::variant<Null, std::string, Decimal, DateTime>;

inline bool is_null(const Value& value) { return std::holds_alternative<Null>(value); }

/// Display form: `null`, raw text, canonical decimal, date text.
std::string display(const Value& value);

/// SQL literal form: `NULL`, `'text'`, `12.5`, `DATE '2001-02-03'`.
std::string to_literal(const Value& value);

/// Total order used for key comparisons; values of different kinds order by kind.
std::strong_ordering compare_values(const Value& a, const Value& b);

/// Interprets a literal (`49`, `-1.5`, `'abc'`, `DATE '2001-01-01'`, `NULL`).
/// nullopt when the text is not a single literal.
std::optional<Value> parse_literal(std::string_view literal);

/// parse_literal plus the coercion of an ISO date string onto a DATE column.
std::optional<Value> literal_value(std::string_view literal, const DataType& type);

/// Why `value` cannot be stored in a column of `type`; empty when it can.
std::string value_problem(const Value& value, const DataType& type);

/// Number of characters (UTF-8 code points).
std::size_t text_length(std::string_view text);

} // namespace refactordb
