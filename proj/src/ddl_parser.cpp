// SPDX-License-Identifier: Apache-2.0

#include "refactordb/ddl_parser.hpp"

#include "refactordb/dialect.hpp"
#include "refactordb/errors.hpp"
#include "refactordb/lexer.hpp"
#include "refactordb/value.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace refactordb {

namespace {

constexpr std::string_view kUnsupportedTypes[] = {
    "INTEGER", "INT", "SMALLINT", "BIGINT", "CHAR", "NCHAR", "NVARCHAR2", "NVARCHAR", "CLOB", "BLOB", "NCLOB",
    "LONG", "RAW", "FLOAT", "REAL", "DOUBLE", "DECIMAL", "TIMESTAMP", "INTERVAL", "BOOLEAN", "TEXT", "ROWID", "XMLTYPE",
};

constexpr std::string_view kStatementVerbs[] = {
    "ALTER", "DROP", "INSERT", "UPDATE", "DELETE", "SELECT", "GRANT", "REVOKE", "COMMENT", "TRUNCATE", "MERGE",
};

struct Pending {
    Constraint constraint;
    bool needs_name = false;
};

class Parser {
public:
    Parser(std::string_view text, const std::vector<Token>& tokens, std::size_t begin, std::size_t end)
        : text_(text), tokens_(tokens), pos_(begin), end_(end)
    {
    }

    Table create_table()
    {
        statement_head();
        auto [owner, name] = qualified_name();
        Table table(name, owner);
        expect_symbol("(");
        std::vector<Pending> pending;
        do {
            element(table, pending);
        } while (accept_symbol(","));
        expect_symbol(")");
        accept_symbol(";");
        trailing();

        for (Pending& p : pending) {
            Constraint& c = p.constraint;
            if (c.kind == ConstraintKind::Check && c.columns.empty())
                c.columns = check_columns(table, c.check_expression);
            if (p.needs_name) {
                c.name = table.next_synthetic_name(c.kind);
                c.system_named = true;
            }
            table.add_constraint(std::move(c));
        }
        return table;
    }

    DataType data_type_only()
    {
        DataType type = data_type();
        if (!at_end())
            fail("unexpected text after type", "end of type");
        return type;
    }

private:
    //===------------------------------------------------------------------===//
    // Token access
    //===------------------------------------------------------------------===//

    const Token& peek(std::size_t ahead = 0) const
    {
        std::size_t i = pos_ + ahead;
        return i < end_ ? tokens_[i] : end_token();
    }

    const Token& end_token() const
    {
        // The End token of the whole input, or the token just past the range.
        return end_ < tokens_.size() ? tokens_[end_] : tokens_.back();
    }

    bool at_end() const { return pos_ >= end_ || peek().kind == TokenKind::End; }

    const Token& next()
    {
        const Token& t = peek();
        if (!at_end())
            ++pos_;
        return t;
    }

    [[noreturn]] void fail(const std::string& message, const std::string& expected = {}) const
    {
        const Token& t = peek();
        throw SyntaxError(message, t.line, t.column, expected);
    }

    [[noreturn]] void unsupported(const std::string& construct) const
    {
        const Token& t = peek();
        throw UnsupportedConstruct(construct, t.line, t.column);
    }

    bool accept_keyword(std::string_view word)
    {
        if (peek().is_keyword(word)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_keyword(std::string_view word)
    {
        if (!accept_keyword(word))
            fail("unexpected " + shown(peek()), std::string(word));
    }

    bool accept_symbol(std::string_view symbol)
    {
        if (peek().is_symbol(symbol)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_symbol(std::string_view symbol)
    {
        if (!accept_symbol(symbol))
            fail("unexpected " + shown(peek()), "'" + std::string(symbol) + "'");
    }

    static std::string shown(const Token& t)
    {
        if (t.kind == TokenKind::End)
            return "end of input";
        return "'" + t.text + "'";
    }

    std::string name()
    {
        const Token& t = peek();
        if (t.kind != TokenKind::Identifier && t.kind != TokenKind::QuotedIdentifier)
            fail("unexpected " + shown(t), "identifier");
        ++pos_;
        return t.text;
    }

    std::pair<std::optional<std::string>, std::string> qualified_name()
    {
        std::string first = name();
        if (accept_symbol("."))
            return {first, name()};
        return {std::nullopt, first};
    }

    int integer()
    {
        const Token& t = peek();
        int value = 0;
        if (t.kind != TokenKind::Number ||
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), value).ptr != t.text.data() + t.text.size())
            fail("unexpected " + shown(t), "integer");
        ++pos_;
        return value;
    }

    //===------------------------------------------------------------------===//
    // Statement structure
    //===------------------------------------------------------------------===//

    void statement_head()
    {
        const Token& first = peek();
        for (auto verb : kStatementVerbs) {
            if (first.is_keyword(verb))
                unsupported(first.text + " statement");
        }
        expect_keyword("CREATE");
        if (peek().is_keyword("TABLE")) {
            ++pos_;
            return;
        }
        if (peek().kind == TokenKind::Identifier)
            unsupported("CREATE " + peek().text);
        fail("unexpected " + shown(peek()), "TABLE");
    }

    void trailing()
    {
        if (at_end())
            return;
        if (peek().kind == TokenKind::Identifier)
            unsupported("storage clause " + peek().text);
        fail("unexpected " + shown(peek()), "end of statement");
    }

    void element(Table& table, std::vector<Pending>& pending)
    {
        const Token& t = peek();
        if (t.is_keyword("CONSTRAINT") || t.is_keyword("PRIMARY") || t.is_keyword("UNIQUE") ||
            t.is_keyword("FOREIGN") || t.is_keyword("CHECK")) {
            pending.push_back(table_constraint());
            return;
        }
        column_definition(table, pending);
    }

    void column_definition(Table& table, std::vector<Pending>& pending)
    {
        std::string column = name();
        DataType type = data_type();
        table.add_column(column, type);

        auto column_level = [&](ConstraintKind kind) {
            Constraint c;
            c.kind = kind;
            c.columns = {column};
            c.level = ConstraintLevel::ColumnLevel;
            return c;
        };

        while (true) {
            if (accept_keyword("DEFAULT")) {
                auto literal = default_literal(type);
                if (literal) {
                    Constraint c = column_level(ConstraintKind::Default);
                    c.default_literal = *literal;
                    pending.push_back({std::move(c), true});
                }
                continue;
            }
            if (accept_keyword("NULL"))
                continue;
            std::optional<std::string> constraint_name;
            if (accept_keyword("CONSTRAINT"))
                constraint_name = name();
            std::optional<Constraint> c;
            if (accept_keyword("NOT")) {
                expect_keyword("NULL");
                c = column_level(ConstraintKind::NotNull);
            } else if (accept_keyword("PRIMARY")) {
                expect_keyword("KEY");
                c = column_level(ConstraintKind::PrimaryKey);
            } else if (accept_keyword("UNIQUE")) {
                c = column_level(ConstraintKind::Unique);
            } else if (accept_keyword("CHECK")) {
                c = column_level(ConstraintKind::Check);
                c->columns.clear();
                c->check_expression = check_body();
            } else if (accept_keyword("REFERENCES")) {
                c = column_level(ConstraintKind::ForeignKey);
                references(*c);
            } else if (constraint_name && accept_keyword("DEFAULT")) {
                auto literal = default_literal(type);
                if (!literal)
                    fail("named DEFAULT NULL", "literal");
                c = column_level(ConstraintKind::Default);
                c->default_literal = *literal;
            } else if (constraint_name) {
                fail("unexpected " + shown(peek()), "constraint kind");
            } else {
                break;
            }
            constraint_options();
            pending.push_back({std::move(*c), !constraint_name});
            if (constraint_name)
                pending.back().constraint.name = *constraint_name;
        }
        if (!peek().is_symbol(",") && !peek().is_symbol(")")) {
            if (peek().kind == TokenKind::Identifier)
                unsupported("column option " + peek().text);
            fail("unexpected " + shown(peek()), "',' or ')'");
        }
    }

    Pending table_constraint()
    {
        Pending p;
        Constraint& c = p.constraint;
        if (accept_keyword("CONSTRAINT"))
            c.name = name();
        else
            p.needs_name = true;
        c.level = ConstraintLevel::TableLevel;
        if (accept_keyword("PRIMARY")) {
            expect_keyword("KEY");
            c.kind = ConstraintKind::PrimaryKey;
            c.columns = column_list();
        } else if (accept_keyword("UNIQUE")) {
            c.kind = ConstraintKind::Unique;
            c.columns = column_list();
        } else if (accept_keyword("FOREIGN")) {
            expect_keyword("KEY");
            c.kind = ConstraintKind::ForeignKey;
            c.columns = column_list();
            expect_keyword("REFERENCES");
            references(c);
        } else if (accept_keyword("CHECK")) {
            c.kind = ConstraintKind::Check;
            c.check_expression = check_body();
        } else {
            fail("unexpected " + shown(peek()), "PRIMARY KEY, UNIQUE, FOREIGN KEY or CHECK");
        }
        constraint_options();
        return p;
    }

    void constraint_options()
    {
        static constexpr std::string_view options[] = {"ENABLE", "DISABLE", "DEFERRABLE", "INITIALLY", "USING",
                                                        "VALIDATE", "NOVALIDATE", "RELY"};
        for (auto option : options) {
            if (peek().is_keyword(option))
                unsupported("constraint option " + std::string(option));
        }
    }

    void references(Constraint& c)
    {
        auto [owner, table] = qualified_name();
        c.referenced_owner = owner;
        c.referenced_table = table;
        if (peek().is_symbol("("))
            c.referenced_columns = column_list();
        if (peek().is_keyword("ON"))
            unsupported("ON " + peek(1).text + " action");
    }

    std::vector<std::string> column_list()
    {
        expect_symbol("(");
        std::vector<std::string> columns;
        do {
            columns.push_back(name());
        } while (accept_symbol(","));
        expect_symbol(")");
        return columns;
    }

    // Raw text between balanced parentheses, whitespace runs collapsed.
    std::string check_body()
    {
        expect_symbol("(");
        std::string out;
        std::size_t cursor = peek().offset;
        int depth = 1;
        while (true) {
            const Token& t = peek();
            if (at_end())
                fail("unbalanced parentheses in CHECK", "')'");
            if (t.is_symbol("("))
                ++depth;
            if (t.is_symbol(")") && --depth == 0)
                break;
            if (t.offset > cursor && !out.empty())
                out += " ";
            out += token_source(text_, t);
            cursor = t.offset + t.length;
            ++pos_;
        }
        if (out.empty())
            fail("empty CHECK expression", "expression");
        ++pos_;
        return out;
    }

    /// A quoted ISO date on a DATE column is kept in `DATE '...'` form.
    std::optional<std::string> default_literal(const DataType& type)
    {
        const Token& t = peek();
        if (t.is_keyword("NULL")) {
            ++pos_;
            return std::nullopt;
        }
        if (t.is_symbol("-") || t.is_symbol("+")) {
            ++pos_;
            if (peek().kind != TokenKind::Number)
                fail("unexpected " + shown(peek()), "number");
            std::string text = (t.text == "-" ? "-" : "") + next().text;
            return text;
        }
        if (t.kind == TokenKind::Number)
            return next().text;
        if (t.kind == TokenKind::String) {
            std::string text = next().text;
            if (type.base == TypeFamily::Date) {
                if (auto date = DateTime::parse(text))
                    return to_literal(Value(*date));
            }
            return to_literal(Value(text));
        }
        if (t.is_keyword("DATE") && peek(1).kind == TokenKind::String) {
            ++pos_;
            return "DATE " + to_literal(Value(next().text));
        }
        if (t.kind == TokenKind::Identifier)
            unsupported("DEFAULT " + t.text);
        fail("unexpected " + shown(t), "literal");
    }

    DataType data_type()
    {
        const Token& t = peek();
        if (t.kind != TokenKind::Identifier)
            fail("unexpected " + shown(t), "data type");
        for (auto unsupported_type : kUnsupportedTypes) {
            if (t.text == unsupported_type)
                unsupported("type " + t.text);
        }
        ++pos_;
        if (t.text == "NUMBER" || t.text == "NUMERIC") {
            DataType type = DataType::number();
            if (accept_symbol("(")) {
                if (accept_symbol("*"))
                    type.precision = 38;
                else
                    type.precision = integer();
                if (accept_symbol(","))
                    type.scale = integer();
                expect_symbol(")");
            }
            return type;
        }
        if (t.text == "VARCHAR2" || t.text == "VARCHAR") {
            expect_symbol("(");
            int length = integer();
            if (peek().is_keyword("BYTE") || peek().is_keyword("CHAR"))
                unsupported("length semantics " + peek().text);
            expect_symbol(")");
            return DataType::varchar(length);
        }
        if (t.text == "DATE")
            return DataType::date();
        --pos_;
        unsupported("type " + t.text);
    }

    static std::vector<std::string> check_columns(const Table& table, std::string_view expression)
    {
        std::vector<std::string> columns;
        for (const std::string& id : expression_identifiers(expression)) {
            const Column* column = table.find_column(id);
            if (column && std::find(columns.begin(), columns.end(), column->name) == columns.end())
                columns.push_back(column->name);
        }
        return columns;
    }

    std::string_view text_;
    const std::vector<Token>& tokens_;
    std::size_t pos_;
    std::size_t end_;
};

} // namespace

void resolve_foreign_keys(Schema& schema)
{
    for (Table& table : schema.tables) {
        std::vector<Constraint> updates;
        for (const Constraint& c : table.constraints()) {
            if (c.kind != ConstraintKind::ForeignKey || !c.referenced_columns.empty())
                continue;
            const Table* target = schema.find_table(c.referenced_table);
            if (!target || !target->primary_key())
                continue;
            Constraint resolved = c;
            resolved.referenced_columns = target->primary_key()->columns;
            updates.push_back(std::move(resolved));
        }
        for (Constraint& c : updates) {
            std::string name = c.name;
            table.replace_constraint(name, std::move(c));
        }
    }
}

Table parse_create_table(std::string_view ddl)
{
    auto tokens = tokenize(ddl);
    return Parser(ddl, tokens, 0, tokens.size() - 1).create_table();
}

Schema parse_script(std::string_view script, std::string_view source)
{
    Schema schema;
    std::vector<Token> tokens;
    try {
        tokens = tokenize(script);
    } catch (const Error& e) {
        throw ScriptError(std::string(source), 1, e.what());
    }
    std::size_t begin = 0;
    std::size_t index = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        bool boundary = tokens[i].is_symbol(";") || tokens[i].kind == TokenKind::End;
        if (!boundary)
            continue;
        if (i > begin) {
            ++index;
            try {
                Table table = Parser(script, tokens, begin, i).create_table();
                if (schema.owner.empty() && table.owner())
                    schema.owner = *table.owner();
                schema.tables.push_back(std::move(table));
            } catch (const Error& e) {
                throw ScriptError(std::string(source), index, e.what());
            }
        }
        begin = i + 1;
    }
    resolve_foreign_keys(schema);
    return schema;
}

DataType parse_data_type(std::string_view text)
{
    auto tokens = tokenize(text);
    return Parser(text, tokens, 0, tokens.size() - 1).data_type_only();
}

std::string render_create_table(const Table& table, const Dialect& dialect)
{
    std::vector<std::string> elements;
    for (const Column& column : table.columns()) {
        std::vector<Constraint> inline_constraints;
        for (const Constraint& c : table.constraints()) {
            if ((c.kind == ConstraintKind::NotNull || c.kind == ConstraintKind::Default) && c.mentions(column.name))
                inline_constraints.push_back(c);
        }
        elements.push_back(dialect.column_clause(column.name, column.type, inline_constraints));
    }
    for (const Constraint& c : table.constraints()) {
        if (c.kind != ConstraintKind::NotNull && c.kind != ConstraintKind::Default)
            elements.push_back(dialect.constraint_clause(c));
    }
    std::string out = "CREATE TABLE " + dialect.identifier(table.name()) + "\n";
    if (elements.size() == 1)
        return out + "( " + elements.front() + " )";
    for (std::size_t i = 0; i < elements.size(); ++i) {
        out += i == 0 ? "( " : "  ";
        out += elements[i];
        out += i + 1 < elements.size() ? ",\n" : "\n";
    }
    return out + ")";
}

std::vector<ConstraintStringRow> extract_constraint_strings(const Table& table, const Dialect& dialect)
{
    std::vector<ConstraintStringRow> rows;
    for (const Column& column : table.columns()) {
        std::vector<Constraint> inline_constraints;
        std::string clauses;
        for (const Constraint& c : table.constraints()) {
            if (c.kind == ConstraintKind::NotNull || c.kind == ConstraintKind::Default) {
                if (c.mentions(column.name))
                    inline_constraints.push_back(c);
                continue;
            }
            if (c.columns.empty() || c.mentions(column.name))
                clauses += " " + dialect.constraint_clause(c);
        }
        rows.push_back({column.name, column.ordinal, table.name(),
                        dialect.column_clause(column.name, column.type, inline_constraints) + clauses});
    }
    return rows;
}

std::vector<ConstraintStringRow> extract_constraint_strings(const Table& table)
{
    return extract_constraint_strings(table, oraclelike());
}

} // namespace refactordb
