// SPDX-License-Identifier: Apache-2.0

#include "refactordb/schema_model.hpp"

#include "refactordb/errors.hpp"
#include "refactordb/lexer.hpp"
#include "refactordb/value.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace refactordb {

//===----------------------------------------------------------------------===//
// Identifiers
//===----------------------------------------------------------------------===//

std::string to_upper(std::string_view text)
{
    std::string out(text);
    for (char& c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

bool same_identifier(std::string_view a, std::string_view b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::toupper(static_cast<unsigned char>(x)) == std::toupper(static_cast<unsigned char>(y));
           });
}

namespace {

const std::set<std::string, std::less<>>& reserved_words()
{
    static const std::set<std::string, std::less<>> words = {
        "ADD",     "ALL",    "ALTER",  "AND",     "AS",     "BY",         "CHECK",   "COLUMN",  "CONSTRAINT",
        "CREATE",  "DATE",   "DEFAULT", "DELETE", "DISTINCT", "DROP",     "EXISTS",  "FOREIGN", "FROM",
        "GROUP",   "IN",     "INSERT", "INTO",    "IS",     "KEY",        "MODIFY",  "NOT",     "NULL",
        "NUMBER",  "OR",     "ORDER",  "PRIMARY", "REFERENCES", "RENAME", "SELECT",  "SET",     "TABLE",
        "TO",      "UNIQUE", "UPDATE", "VALUES",  "VARCHAR", "VARCHAR2", "WHERE",   "WITH"};
    return words;
}

} // namespace

bool is_plain_identifier(std::string_view name)
{
    if (name.empty() || !(std::isupper(static_cast<unsigned char>(name[0])) || name[0] == '_'))
        return false;
    for (char c : name) {
        if (!(std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) || c == '_' ||
              c == '$' || c == '#'))
            return false;
    }
    return !reserved_words().contains(name);
}

std::string quote_identifier(std::string_view name)
{
    if (is_plain_identifier(name))
        return std::string(name);
    std::string out = "\"";
    for (char c : name) {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out += "\"";
    return out;
}

std::optional<std::string> canonical_identifier(std::string_view text)
{
    std::vector<Token> tokens;
    try {
        tokens = tokenize(text);
    } catch (const SyntaxError&) {
        return std::nullopt;
    }
    if (tokens.size() != 2)
        return std::nullopt;
    if (tokens[0].kind == TokenKind::Identifier || tokens[0].kind == TokenKind::QuotedIdentifier)
        return tokens[0].text;
    return std::nullopt;
}

//===----------------------------------------------------------------------===//
// Types
//===----------------------------------------------------------------------===//

std::string_view to_string(TypeFamily family)
{
    switch (family) {
    case TypeFamily::VarcharText:
        return "VARCHAR_TEXT";
    case TypeFamily::FixedNumber:
        return "FIXED_NUMBER";
    case TypeFamily::Date:
        return "DATE";
    }
    return "?";
}

std::string DataType::describe() const
{
    std::string out(to_string(base));
    if (length)
        out += fmt::format("({})", *length);
    else if (precision && scale)
        out += fmt::format("({},{})", *precision, *scale);
    else if (precision)
        out += fmt::format("({})", *precision);
    return out;
}

std::string DataType::validity_problem() const
{
    switch (base) {
    case TypeFamily::VarcharText:
        if (!length || *length <= 0)
            return "VARCHAR_TEXT requires a positive length";
        if (precision || scale)
            return "VARCHAR_TEXT carries no precision/scale";
        break;
    case TypeFamily::FixedNumber:
        if (length)
            return "FIXED_NUMBER carries no length";
        if (scale && !precision)
            return "FIXED_NUMBER scale requires precision";
        if (precision && *precision <= 0)
            return "FIXED_NUMBER precision must be positive";
        if (scale && (*scale < 0 || *scale > *precision))
            return "FIXED_NUMBER scale must be within 0..precision";
        break;
    case TypeFamily::Date:
        if (length || precision || scale)
            return "DATE carries no length/precision/scale";
        break;
    }
    return {};
}

std::string literal_problem(std::string_view literal, const DataType& type)
{
    auto value = literal_value(literal, type);
    if (!value)
        return fmt::format("not a literal: {}", literal);
    if (is_null(*value))
        return "NULL is not a default literal";
    return value_problem(*value, type);
}

//===----------------------------------------------------------------------===//
// Constraints
//===----------------------------------------------------------------------===//

std::string_view to_string(ConstraintKind kind)
{
    switch (kind) {
    case ConstraintKind::PrimaryKey:
        return "PRIMARY_KEY";
    case ConstraintKind::Unique:
        return "UNIQUE";
    case ConstraintKind::ForeignKey:
        return "FOREIGN_KEY";
    case ConstraintKind::Check:
        return "CHECK";
    case ConstraintKind::NotNull:
        return "NOT_NULL";
    case ConstraintKind::Default:
        return "DEFAULT";
    }
    return "?";
}

std::string_view synthetic_tag(ConstraintKind kind)
{
    switch (kind) {
    case ConstraintKind::PrimaryKey:
        return "PK";
    case ConstraintKind::Unique:
        return "UQ";
    case ConstraintKind::ForeignKey:
        return "FK";
    case ConstraintKind::Check:
        return "CK";
    case ConstraintKind::NotNull:
        return "NN";
    case ConstraintKind::Default:
        return "DF";
    }
    return "XX";
}

bool Constraint::mentions(std::string_view column) const
{
    return std::any_of(columns.begin(), columns.end(), [&](const std::string& c) { return same_identifier(c, column); });
}

namespace {

std::string column_list(const std::vector<std::string>& columns)
{
    std::string out = "(";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i)
            out += ",";
        out += quote_identifier(columns[i]);
    }
    return out + ")";
}

} // namespace

std::string constraint_clause(const Constraint& c)
{
    std::string out = "CONSTRAINT " + quote_identifier(c.name) + " ";
    switch (c.kind) {
    case ConstraintKind::PrimaryKey:
        return out + "PRIMARY KEY " + column_list(c.columns);
    case ConstraintKind::Unique:
        return out + "UNIQUE " + column_list(c.columns);
    case ConstraintKind::ForeignKey:
        out += "FOREIGN KEY " + column_list(c.columns) + " REFERENCES " + quote_identifier(c.referenced_table);
        if (!c.referenced_columns.empty())
            out += " " + column_list(c.referenced_columns);
        return out;
    case ConstraintKind::Check:
        return out + "CHECK (" + c.check_expression + ")";
    case ConstraintKind::NotNull:
        return out + "NOT NULL";
    case ConstraintKind::Default:
        return "DEFAULT " + c.default_literal;
    }
    return out;
}

std::string rename_in_expression(std::string_view expression, std::string_view from, std::string_view to)
{
    std::vector<Token> tokens;
    try {
        tokens = tokenize(expression);
    } catch (const SyntaxError&) {
        return std::string(expression);
    }
    std::string out;
    std::size_t cursor = 0;
    for (const Token& t : tokens) {
        if (t.kind != TokenKind::Identifier && t.kind != TokenKind::QuotedIdentifier)
            continue;
        if (!same_identifier(t.text, from))
            continue;
        out.append(expression.substr(cursor, t.offset - cursor));
        out += quote_identifier(to);
        cursor = t.offset + t.length;
    }
    out.append(expression.substr(cursor));
    return out;
}

std::vector<std::string> expression_identifiers(std::string_view expression)
{
    std::vector<std::string> out;
    try {
        for (const Token& t : tokenize(expression)) {
            if ((t.kind == TokenKind::Identifier || t.kind == TokenKind::QuotedIdentifier) &&
                std::find(out.begin(), out.end(), t.text) == out.end())
                out.push_back(t.text);
        }
    } catch (const SyntaxError&) {
    }
    return out;
}

//===----------------------------------------------------------------------===//
// Table
//===----------------------------------------------------------------------===//

Table::Table(std::string name, std::optional<std::string> owner) : name_(std::move(name)), owner_(std::move(owner)) {}

const Column* Table::find_column(std::string_view name) const
{
    auto it = std::find_if(columns_.begin(), columns_.end(), [&](const Column& c) { return same_identifier(c.name, name); });
    return it == columns_.end() ? nullptr : &*it;
}

std::optional<std::size_t> Table::column_index(std::string_view name) const
{
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (same_identifier(columns_[i].name, name))
            return i;
    }
    return std::nullopt;
}

const Constraint* Table::find_constraint(std::string_view name) const
{
    auto it = std::find_if(constraints_.begin(), constraints_.end(),
                           [&](const Constraint& c) { return same_identifier(c.name, name); });
    return it == constraints_.end() ? nullptr : &*it;
}

const Constraint* Table::primary_key() const
{
    auto it = std::find_if(constraints_.begin(), constraints_.end(),
                           [](const Constraint& c) { return c.kind == ConstraintKind::PrimaryKey; });
    return it == constraints_.end() ? nullptr : &*it;
}

void Table::add_column(std::string name, DataType type)
{
    Column column;
    column.name = std::move(name);
    column.type = type;
    columns_.push_back(std::move(column));
    refresh_views();
}

void Table::drop_column(std::string_view name)
{
    std::erase_if(columns_, [&](const Column& c) { return same_identifier(c.name, name); });
    refresh_views();
}

void Table::rename_column(std::string_view from, std::string_view to)
{
    for (Column& c : columns_) {
        if (same_identifier(c.name, from))
            c.name = std::string(to);
    }
    for (Constraint& c : constraints_) {
        for (std::string& col : c.columns) {
            if (same_identifier(col, from))
                col = std::string(to);
        }
        if (c.kind == ConstraintKind::Check)
            c.check_expression = rename_in_expression(c.check_expression, from, to);
        if (c.kind == ConstraintKind::ForeignKey && same_identifier(c.referenced_table, name_)) {
            for (std::string& col : c.referenced_columns) {
                if (same_identifier(col, from))
                    col = std::string(to);
            }
        }
    }
    refresh_views();
}

void Table::set_column_type(std::string_view column, DataType type)
{
    for (Column& c : columns_) {
        if (same_identifier(c.name, column))
            c.type = type;
    }
}

void Table::add_constraint(Constraint constraint)
{
    constraints_.push_back(std::move(constraint));
    refresh_views();
}

void Table::drop_constraint(std::string_view name)
{
    std::erase_if(constraints_, [&](const Constraint& c) { return same_identifier(c.name, name); });
    refresh_views();
}

void Table::replace_constraint(std::string_view name, Constraint constraint)
{
    for (Constraint& c : constraints_) {
        if (same_identifier(c.name, name)) {
            c = std::move(constraint);
            break;
        }
    }
    refresh_views();
}

std::string Table::next_synthetic_name(ConstraintKind kind) const
{
    for (int n = 1;; ++n) {
        std::string candidate = fmt::format("SYS_{}_{}_{}", name_, synthetic_tag(kind), n);
        if (!find_constraint(candidate))
            return candidate;
    }
}

bool Table::is_required(std::string_view column) const
{
    const Column* c = find_column(column);
    return c && !c->nullable;
}

void Table::refresh_views()
{
    int ordinal = 0;
    for (Column& column : columns_) {
        column.ordinal = ++ordinal;
        column.nullable = true;
        column.default_value.reset();
    }
    for (const Constraint& c : constraints_) {
        if (c.kind != ConstraintKind::NotNull && c.kind != ConstraintKind::Default && c.kind != ConstraintKind::PrimaryKey)
            continue;
        for (const std::string& name : c.columns) {
            for (Column& column : columns_) {
                if (!same_identifier(column.name, name))
                    continue;
                if (c.kind == ConstraintKind::Default)
                    column.default_value = c.default_literal;
                else
                    column.nullable = false;
            }
        }
    }
}

bool equivalent(const Table& a, const Table& b)
{
    if (a.name() != b.name() || a.columns() != b.columns() || a.constraints().size() != b.constraints().size())
        return false;
    // Unnamed NOT NULL / DEFAULT render without a name, so they match by column.
    auto anonymous = [](const Constraint& c) {
        return c.system_named && (c.kind == ConstraintKind::NotNull || c.kind == ConstraintKind::Default);
    };
    auto id = [&](const Constraint& c) {
        return anonymous(c) ? std::string(synthetic_tag(c.kind)) + "#" + c.columns.at(0) : c.name;
    };
    auto key = [&](const Constraint& c) {
        Constraint k = c;
        if (anonymous(c))
            k.name.clear();
        k.system_named = false;
        k.level = ConstraintLevel::TableLevel;
        k.referenced_owner.reset();
        return k;
    };
    std::map<std::string, Constraint> left;
    for (const Constraint& c : a.constraints())
        left.emplace(id(c), key(c));
    for (const Constraint& c : b.constraints()) {
        auto it = left.find(id(c));
        if (it == left.end() || !(it->second == key(c)))
            return false;
    }
    return true;
}

//===----------------------------------------------------------------------===//
// Schema
//===----------------------------------------------------------------------===//

const Table* Schema::find_table(std::string_view name) const
{
    auto it = std::find_if(tables.begin(), tables.end(), [&](const Table& t) { return same_identifier(t.name(), name); });
    return it == tables.end() ? nullptr : &*it;
}

Table* Schema::find_table(std::string_view name)
{
    auto it = std::find_if(tables.begin(), tables.end(), [&](const Table& t) { return same_identifier(t.name(), name); });
    return it == tables.end() ? nullptr : &*it;
}

const Table& Schema::table(std::string_view name) const
{
    if (const Table* t = find_table(name))
        return *t;
    throw TableNotFound(std::string(name));
}

Table& Schema::table(std::string_view name)
{
    if (Table* t = find_table(name))
        return *t;
    throw TableNotFound(std::string(name));
}

std::string to_string(const Violation& v)
{
    std::string where = v.table;
    if (!v.constraint.empty())
        where += "/" + v.constraint;
    if (!v.column.empty())
        where += "." + v.column;
    return where.empty() ? v.message : where + ": " + v.message;
}

namespace {

bool same_column_set(std::vector<std::string> a, std::vector<std::string> b)
{
    if (a.size() != b.size())
        return false;
    for (auto& s : a)
        s = to_upper(s);
    for (auto& s : b)
        s = to_upper(s);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

bool has_duplicates(const std::vector<std::string>& names)
{
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(to_upper(n)).second)
            return true;
    }
    return false;
}

void validate_constraint(const Schema& schema, const Table& table, const Constraint& c, ValidationReport& report)
{
    auto add = [&](std::string column, std::string message) {
        report.push_back({table.name(), c.name, std::move(column), std::move(message)});
    };
    for (const std::string& col : c.columns) {
        if (!table.find_column(col))
            add(col, fmt::format("constraint column {} missing", col));
    }
    switch (c.kind) {
    case ConstraintKind::PrimaryKey:
    case ConstraintKind::Unique:
        if (c.columns.empty())
            add({}, "key constraint has no columns");
        if (has_duplicates(c.columns))
            add({}, "key constraint lists a column twice");
        break;
    case ConstraintKind::NotNull:
    case ConstraintKind::Default:
        if (c.columns.size() != 1)
            add({}, fmt::format("{} must name exactly one column", to_string(c.kind)));
        if (c.level != ConstraintLevel::ColumnLevel)
            add({}, fmt::format("{} must be column-level", to_string(c.kind)));
        if (c.kind == ConstraintKind::Default && c.columns.size() == 1) {
            if (const Column* col = table.find_column(c.columns[0])) {
                if (auto problem = literal_problem(c.default_literal, col->type); !problem.empty())
                    add(col->name, "default " + c.default_literal + ": " + problem);
            }
        }
        break;
    case ConstraintKind::Check:
        if (c.check_expression.empty())
            add({}, "check constraint has no expression");
        break;
    case ConstraintKind::ForeignKey: {
        if (c.columns.empty())
            add({}, "foreign key has no columns");
        if (c.columns.size() != c.referenced_columns.size()) {
            add({}, fmt::format("foreign key arity mismatch: {} columns reference {}", c.columns.size(),
                                c.referenced_columns.size()));
        }
        const Table* target = schema.find_table(c.referenced_table);
        if (!target) {
            add({}, fmt::format("referenced table {} missing", c.referenced_table));
            break;
        }
        bool columns_ok = true;
        for (const std::string& col : c.referenced_columns) {
            if (!target->find_column(col)) {
                add(col, fmt::format("referenced column {}.{} missing", target->name(), col));
                columns_ok = false;
            }
        }
        if (columns_ok && c.columns.size() == c.referenced_columns.size() && !c.columns.empty() &&
            !referenced_key(schema, c))
            add({}, fmt::format("foreign key does not reference a primary or unique key of {}", target->name()));
        break;
    }
    }
}

} // namespace

ValidationReport validate_schema(const Schema& schema)
{
    ValidationReport report;
    std::map<std::string, std::string> table_names;
    std::map<std::string, std::string> constraint_owner;
    for (const Table& table : schema.tables) {
        if (!table_names.emplace(to_upper(table.name()), table.name()).second)
            report.push_back({table.name(), {}, {}, "duplicate table name"});
        if (table.owner() && !schema.owner.empty() && !same_identifier(*table.owner(), schema.owner))
            report.push_back({table.name(), {}, {}, fmt::format("table belongs to owner {} outside schema {}",
                                                                *table.owner(), schema.owner)});
        if (table.columns().empty())
            report.push_back({table.name(), {}, {}, "table has no columns"});

        std::set<std::string> column_names;
        int expected = 0;
        for (const Column& column : table.columns()) {
            if (!column_names.insert(to_upper(column.name)).second)
                report.push_back({table.name(), {}, column.name, "duplicate column name"});
            if (column.ordinal != ++expected)
                report.push_back({table.name(), {}, column.name, "column ordinals are not contiguous"});
            if (auto problem = column.type.validity_problem(); !problem.empty())
                report.push_back({table.name(), {}, column.name, problem});
        }

        int primary_keys = 0;
        for (const Constraint& c : table.constraints()) {
            if (c.kind == ConstraintKind::PrimaryKey && ++primary_keys == 2)
                report.push_back({table.name(), c.name, {}, "more than one primary key"});
            if (c.name.empty())
                report.push_back({table.name(), {}, {}, "constraint without a name"});
            else if (auto [it, fresh] = constraint_owner.emplace(to_upper(c.name), table.name()); !fresh)
                report.push_back({table.name(), c.name, {},
                                  fmt::format("constraint name already used on {}", it->second)});
            validate_constraint(schema, table, c, report);
        }
    }
    return report;
}

const Column& find_column(const Schema& schema, std::string_view table_name, std::string_view column_name)
{
    const Table& table = schema.table(table_name);
    if (const Column* column = table.find_column(column_name))
        return *column;
    throw ColumnNotFound(table.name(), std::string(column_name));
}

const Constraint* referenced_key(const Schema& schema, const Constraint& fk)
{
    const Table* target = schema.find_table(fk.referenced_table);
    if (!target)
        return nullptr;
    if (fk.referenced_columns.empty())
        return target->primary_key();
    for (const Constraint& c : target->constraints()) {
        if ((c.kind == ConstraintKind::PrimaryKey || c.kind == ConstraintKind::Unique) &&
            same_column_set(c.columns, fk.referenced_columns))
            return &c;
    }
    return nullptr;
}

std::vector<DependentConstraint> inbound_foreign_keys(const Schema& schema, std::string_view table, const Constraint& key)
{
    std::vector<DependentConstraint> out;
    for (const Table& t : schema.tables) {
        for (const Constraint& c : t.constraints()) {
            if (c.kind != ConstraintKind::ForeignKey || !same_identifier(c.referenced_table, table))
                continue;
            const Constraint* target = referenced_key(schema, c);
            if (target && same_identifier(target->name, key.name))
                out.push_back({c, t.name()});
        }
    }
    return out;
}

std::vector<DependentConstraint> dependent_constraints(const Schema& schema, std::string_view table_name,
                                                       std::optional<std::string_view> column)
{
    const Table& table = schema.table(table_name);
    if (column && !table.find_column(*column))
        throw ColumnNotFound(table.name(), std::string(*column));
    std::vector<DependentConstraint> out;
    auto push = [&](const Constraint& c, const std::string& owner) {
        bool seen = std::any_of(out.begin(), out.end(), [&](const DependentConstraint& d) {
            return same_identifier(d.owning_table, owner) && same_identifier(d.constraint.name, c.name);
        });
        if (!seen)
            out.push_back({c, owner});
    };
    for (const Constraint& c : table.constraints()) {
        if (!column || c.mentions(*column))
            push(c, table.name());
    }
    for (const Table& other : schema.tables) {
        for (const Constraint& c : other.constraints()) {
            if (c.kind != ConstraintKind::ForeignKey || !same_identifier(c.referenced_table, table.name()))
                continue;
            std::vector<std::string> targets = c.referenced_columns;
            if (targets.empty()) {
                if (const Constraint* pk = table.primary_key())
                    targets = pk->columns;
            }
            bool hits = !column || std::any_of(targets.begin(), targets.end(),
                                               [&](const std::string& t) { return same_identifier(t, *column); });
            if (hits)
                push(c, other.name());
        }
    }
    return out;
}

} // namespace refactordb
