// SPDX-License-Identifier: Apache-2.0

#include "refactordb/value.hpp"

#include "refactordb/lexer.hpp"
#include "refactordb/schema_model.hpp"

#include <fmt/format.h>

#include <cctype>
#include <cmath>

namespace refactordb {

std::optional<Decimal> Decimal::parse(std::string_view text)
{
    bool negative = false;
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    std::string integer, fraction;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        integer.push_back(text[i++]);
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            fraction.push_back(text[i++]);
    }
    if (i != text.size() || (integer.empty() && fraction.empty()))
        return std::nullopt;
    std::size_t lead = integer.find_first_not_of('0');
    integer = lead == std::string::npos ? "0" : integer.substr(lead);
    while (!fraction.empty() && fraction.back() == '0')
        fraction.pop_back();
    std::string out = integer;
    if (!fraction.empty())
        out += "." + fraction;
    if (negative && out != "0")
        out.insert(out.begin(), '-');
    return Decimal(out);
}

Decimal Decimal::from_long_double(long double value)
{
    if (!std::isfinite(value))
        return Decimal();
    std::string text = fmt::format("{:.12f}", value);
    return *parse(text);
}

int Decimal::integer_digits() const
{
    std::string_view digits = text_;
    if (negative())
        digits.remove_prefix(1);
    auto dot = digits.find('.');
    auto integer = digits.substr(0, dot);
    return integer == "0" ? 0 : static_cast<int>(integer.size());
}

int Decimal::fraction_digits() const
{
    auto dot = text_.find('.');
    return dot == std::string::npos ? 0 : static_cast<int>(text_.size() - dot - 1);
}

long double Decimal::to_long_double() const
{
    return std::strtold(text_.c_str(), nullptr);
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b)
{
    if (a.negative() != b.negative())
        return a.negative() ? std::strong_ordering::less : std::strong_ordering::greater;
    auto magnitude = [](const Decimal& d) {
        std::string_view s = d.str();
        if (d.negative())
            s.remove_prefix(1);
        return s;
    };
    auto ma = magnitude(a), mb = magnitude(b);
    auto ia = ma.substr(0, ma.find('.')), ib = mb.substr(0, mb.find('.'));
    std::strong_ordering order = std::strong_ordering::equal;
    if (ia.size() != ib.size()) {
        order = ia.size() <=> ib.size();
    } else {
        auto fa = ma.size() > ia.size() ? ma.substr(ia.size() + 1) : std::string_view();
        auto fb = mb.size() > ib.size() ? mb.substr(ib.size() + 1) : std::string_view();
        std::string la = std::string(ia) + std::string(fa), lb = std::string(ib) + std::string(fb);
        auto width = std::max(fa.size(), fb.size());
        la.append(width - fa.size(), '0');
        lb.append(width - fb.size(), '0');
        int c = la.compare(lb);
        order = c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    if (a.negative() && order != std::strong_ordering::equal)
        return order == std::strong_ordering::less ? std::strong_ordering::greater : std::strong_ordering::less;
    return order;
}

std::optional<DateTime> DateTime::parse(std::string_view text)
{
    using namespace std::chrono;
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    auto digits = [&](std::size_t pos, std::size_t count, int& out) {
        if (pos + count > text.size())
            return false;
        out = 0;
        for (std::size_t i = pos; i < pos + count; ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                return false;
            out = out * 10 + (text[i] - '0');
        }
        return true;
    };
    if (!digits(0, 4, y) || text.size() < 10 || text[4] != '-' || !digits(5, 2, mo) || text[7] != '-' ||
        !digits(8, 2, d))
        return std::nullopt;
    if (text.size() != 10) {
        if (text.size() != 19 || (text[10] != ' ' && text[10] != 'T') || !digits(11, 2, h) || text[13] != ':' ||
            !digits(14, 2, mi) || text[16] != ':' || !digits(17, 2, s))
            return std::nullopt;
        if (h > 23 || mi > 59 || s > 59)
            return std::nullopt;
    }
    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok())
        return std::nullopt;
    return DateTime{sys_days{ymd} + hours{h} + minutes{mi} + seconds{s}};
}

std::string DateTime::str() const
{
    using namespace std::chrono;
    auto day_point = floor<days>(instant);
    year_month_day ymd{day_point};
    auto rest = instant - day_point;
    auto text = fmt::format("{:04}-{:02}-{:02}", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                            static_cast<unsigned>(ymd.day()));
    if (rest.count() != 0) {
        auto secs = rest.count();
        text += fmt::format(" {:02}:{:02}:{:02}", secs / 3600, (secs / 60) % 60, secs % 60);
    }
    return text;
}

std::string display(const Value& value)
{
    struct Visitor {
        std::string operator()(Null) const { return "null"; }
        std::string operator()(const std::string& text) const { return text; }
        std::string operator()(const Decimal& d) const { return d.str(); }
        std::string operator()(const DateTime& d) const { return d.str(); }
    };
    return std::visit(Visitor{}, value);
}

namespace {

std::string quote_text(std::string_view text)
{
    std::string out = "'";
    for (char c : text) {
        if (c == '\'')
            out += "''";
        else
            out.push_back(c);
    }
    out += "'";
    return out;
}

} // namespace

std::string to_literal(const Value& value)
{
    struct Visitor {
        std::string operator()(Null) const { return "NULL"; }
        std::string operator()(const std::string& text) const { return quote_text(text); }
        std::string operator()(const Decimal& d) const { return d.str(); }
        std::string operator()(const DateTime& d) const { return "DATE " + quote_text(d.str()); }
    };
    return std::visit(Visitor{}, value);
}

std::strong_ordering compare_values(const Value& a, const Value& b)
{
    if (a.index() != b.index())
        return a.index() <=> b.index();
    if (auto* x = std::get_if<std::string>(&a)) {
        int c = x->compare(std::get<std::string>(b));
        return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }
    if (auto* x = std::get_if<Decimal>(&a))
        return *x <=> std::get<Decimal>(b);
    if (auto* x = std::get_if<DateTime>(&a))
        return x->instant <=> std::get<DateTime>(b).instant;
    return std::strong_ordering::equal;
}

std::optional<Value> parse_literal(std::string_view literal)
{
    std::vector<Token> tokens;
    try {
        tokens = tokenize(literal);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    // tokens always ends with End
    std::size_t n = tokens.size() - 1;
    if (n == 1) {
        const Token& t = tokens[0];
        if (t.kind == TokenKind::Number)
            return Value(*Decimal::parse(t.text));
        if (t.kind == TokenKind::String)
            return Value(t.text);
        if (t.is_keyword("NULL"))
            return Value(Null{});
    }
    if (n == 2) {
        if ((tokens[0].is_symbol("-") || tokens[0].is_symbol("+")) && tokens[1].kind == TokenKind::Number)
            return Value(*Decimal::parse(tokens[0].text + tokens[1].text));
        if (tokens[0].is_keyword("DATE") && tokens[1].kind == TokenKind::String) {
            if (auto d = DateTime::parse(tokens[1].text))
                return Value(*d);
        }
    }
    return std::nullopt;
}

std::optional<Value> literal_value(std::string_view literal, const DataType& type)
{
    auto value = parse_literal(literal);
    if (value && type.base == TypeFamily::Date) {
        if (auto* text = std::get_if<std::string>(&*value)) {
            if (auto d = DateTime::parse(*text))
                return Value(*d);
        }
    }
    return value;
}

std::size_t text_length(std::string_view text)
{
    std::size_t n = 0;
    for (char c : text) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80)
            ++n;
    }
    return n;
}

std::string value_problem(const Value& value, const DataType& type)
{
    if (is_null(value))
        return {};
    switch (type.base) {
    case TypeFamily::VarcharText: {
        auto* text = std::get_if<std::string>(&value);
        if (!text)
            return "literal/type mismatch: expected text";
        if (type.length && text_length(*text) > static_cast<std::size_t>(*type.length))
            return fmt::format("length overflow: {} characters exceed {}", text_length(*text), *type.length);
        return {};
    }
    case TypeFamily::FixedNumber: {
        auto* number = std::get_if<Decimal>(&value);
        if (!number)
            return "literal/type mismatch: expected number";
        if (!type.precision)
            return {};
        int scale = type.scale.value_or(0);
        if (number->fraction_digits() > scale)
            return fmt::format("scale overflow: {} has more than {} fractional digits", number->str(), scale);
        if (number->integer_digits() > *type.precision - scale)
            return fmt::format("precision overflow: {} does not fit NUMBER({},{})", number->str(), *type.precision,
                               scale);
        return {};
    }
    case TypeFamily::Date:
        if (!std::holds_alternative<DateTime>(value))
            return "literal/type mismatch: expected date";
        return {};
    }
    return {};
}

} // namespace refactordb
