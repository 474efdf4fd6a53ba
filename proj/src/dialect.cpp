// SPDX-License-Identifier: Apache-2.0

#include "refactordb/dialect.hpp"

#include "refactordb/lexer.hpp"
#include "refactordb/value.hpp"

#include <fmt/format.h>

#include <cctype>
#include <cstdint>

namespace refactordb {

std::string identifier_hash(std::string_view name)
{
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : name) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    static constexpr char digits[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    std::uint64_t value = hash % 60466176ull; // 36^5
    std::string out(5, '0');
    for (int i = 4; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value % 36];
        value /= 36;
    }
    return out;
}

std::string enforce_identifier(std::string_view name, std::size_t max_length)
{
    if (name.size() <= max_length)
        return std::string(name);
    return std::string(name.substr(0, max_length - 6)) + "_" + identifier_hash(name);
}

std::string enforce_identifier(std::string_view name, const Dialect& dialect)
{
    return enforce_identifier(name, dialect.max_identifier_length());
}

std::string map_type(const DataType& type, const Dialect& dialect)
{
    return dialect.map_type(type);
}

std::string emit_step(const Step& step, const Dialect& dialect)
{
    return dialect.emit(step);
}

//===----------------------------------------------------------------------===//
// Shared skeleton
//===----------------------------------------------------------------------===//

std::string Dialect::map_type(const DataType& type) const
{
    if (!type.validity_problem().empty())
        throw DialectUnsupportedType(fmt::format("{}: cannot map {}", name(), type.describe()));
    std::string out(type_keyword(type.base));
    switch (type.base) {
    case TypeFamily::VarcharText:
        out += fmt::format("({})", *type.length);
        break;
    case TypeFamily::FixedNumber:
        if (type.precision && type.scale)
            out += fmt::format("({},{})", *type.precision, *type.scale);
        else if (type.precision)
            out += fmt::format("({})", *type.precision);
        break;
    case TypeFamily::Date:
        break;
    }
    return out;
}

std::string Dialect::identifier(std::string_view name) const
{
    return quote_identifier(enforce_identifier(name, max_identifier_length()));
}

std::string Dialect::expression(std::string_view text) const
{
    // Re-spells the text on one line with every identifier length-enforced.
    auto tokens = tokenize(text);
    std::string out;
    std::size_t cursor = 0;
    for (const Token& t : tokens) {
        if (t.kind == TokenKind::End)
            break;
        if (t.offset > cursor && !out.empty())
            out += " ";
        if ((t.kind == TokenKind::Identifier || t.kind == TokenKind::QuotedIdentifier) &&
            t.text.size() > max_identifier_length())
            out += identifier(t.text);
        else
            out += token_source(text, t);
        cursor = t.offset + t.length;
    }
    return out;
}

std::string Dialect::column_clause(const std::string& column, const DataType& type,
                                   const std::vector<Constraint>& constraints) const
{
    std::string out = identifier(column) + " " + map_type(type);
    for (const Constraint& c : constraints) {
        if (c.kind != ConstraintKind::Default)
            continue;
        if (!c.system_named)
            out += " CONSTRAINT " + identifier(c.name);
        out += " DEFAULT " + c.default_literal;
    }
    for (const Constraint& c : constraints) {
        if (c.kind != ConstraintKind::NotNull)
            continue;
        if (!c.system_named)
            out += " CONSTRAINT " + identifier(c.name);
        out += " NOT NULL";
    }
    return out;
}

std::string Dialect::constraint_clause(const Constraint& c) const
{
    auto list = [&](const std::vector<std::string>& columns) {
        std::string out = "(";
        for (std::size_t i = 0; i < columns.size(); ++i)
            out += (i ? "," : "") + identifier(columns[i]);
        return out + ")";
    };
    std::string out = "CONSTRAINT " + identifier(c.name) + " ";
    switch (c.kind) {
    case ConstraintKind::PrimaryKey:
        return out + "PRIMARY KEY " + list(c.columns);
    case ConstraintKind::Unique:
        return out + "UNIQUE " + list(c.columns);
    case ConstraintKind::ForeignKey:
        out += "FOREIGN KEY " + list(c.columns) + " REFERENCES " + identifier(c.referenced_table);
        if (!c.referenced_columns.empty())
            out += " " + list(c.referenced_columns);
        return out;
    case ConstraintKind::Check:
        return out + "CHECK (" + expression(c.check_expression) + ")";
    default:
        break;
    }
    throw DialectUnsupportedStep(fmt::format("{}: {} is not a table-level clause", name(), to_string(c.kind)));
}

std::string Dialect::add_constraint(const AddConstraintStep& step) const
{
    const Constraint& c = step.constraint;
    if (c.kind == ConstraintKind::NotNull)
        return modify_column({step.table, c.columns.at(0), ColumnChange::SetNotNull, {}, {}, c.name});
    if (c.kind == ConstraintKind::Default)
        return modify_column({step.table, c.columns.at(0), ColumnChange::SetDefault, {}, c.default_literal, c.name});
    return fmt::format("ALTER TABLE {} ADD {}", identifier(step.table), constraint_clause(c));
}

std::string Dialect::drop_constraint(const DropConstraintStep& step) const
{
    const Constraint& c = step.constraint;
    if (c.kind == ConstraintKind::NotNull)
        return modify_column({step.table, c.columns.at(0), ColumnChange::DropNotNull, {}, {}, c.name});
    if (c.kind == ConstraintKind::Default)
        return modify_column({step.table, c.columns.at(0), ColumnChange::DropDefault, {}, {}, c.name});
    return fmt::format("ALTER TABLE {} DROP CONSTRAINT {}", identifier(step.table), identifier(c.name));
}

std::string Dialect::update_data(const UpdateDataStep& step) const
{
    std::string head = "UPDATE " + identifier(step.table) + " SET ";
    if (auto* concat = std::get_if<ConcatenateUpdate>(&step.update))
        return head + concatenation(*concat);
    if (auto* fill = std::get_if<FillNullsUpdate>(&step.update)) {
        auto column = identifier(fill->column);
        return head + fmt::format("{} = {} WHERE {} IS NULL", column, fill->literal, column);
    }
    return head + expression(std::get<ExpressionUpdate>(step.update).payload);
}

std::string Dialect::copy_data(const CopyDataStep& step) const
{
    return fmt::format("UPDATE {} SET {} = (SELECT DISTINCT {}.{} FROM {} WHERE {})", identifier(step.target_table),
                       identifier(step.target_column), identifier(step.source_table), identifier(step.source_column),
                       identifier(step.source_table), expression(step.condition));
}

std::string Dialect::version_record(const VersionRecordStep& step) const
{
    const VersionEntry& e = step.entry;
    auto text = [](const std::optional<std::string>& v) { return v ? to_literal(Value(*v)) : std::string("NULL"); };
    return fmt::format("INSERT INTO {} (OWNER, CONSTRAINT_NAME, CONSTRAINT_TYPE, TABLE_NAME, R_OWNER, "
                       "R_CONSTRAINT_NAME, NEW_MODIFICATION_DATE, NEW_CONSTRAINT_NAME, NEW_TABLE_NAME) "
                       "VALUES ({}, {}, {}, {}, {}, {}, {}, {}, {})",
                       identifier(kLogTableName), to_literal(Value(e.owner)), to_literal(Value(e.constraint_name)),
                       to_literal(Value(std::string(1, e.constraint_type))), to_literal(Value(e.table_name)),
                       text(e.r_owner), text(e.r_constraint_name), timestamp_literal(e.new_modification_date),
                       text(e.new_constraint_name), text(e.new_table_name));
}

std::string Dialect::emit(const Step& step) const
{
    struct Visitor {
        const Dialect& d;
        std::string operator()(const BackupStep& s) const { return d.backup_table(s); }
        std::string operator()(const AddColumnStep& s) const { return d.add_column(s); }
        std::string operator()(const DropColumnStep& s) const
        {
            return fmt::format("ALTER TABLE {} DROP COLUMN {}", d.identifier(s.table), d.identifier(s.column));
        }
        std::string operator()(const ModifyColumnStep& s) const { return d.modify_column(s); }
        std::string operator()(const RenameColumnStep& s) const
        {
            return fmt::format("ALTER TABLE {} RENAME COLUMN {} TO {}", d.identifier(s.table), d.identifier(s.from),
                               d.identifier(s.to));
        }
        std::string operator()(const DropTableStep& s) const { return "DROP TABLE " + d.identifier(s.table); }
        std::string operator()(const AddConstraintStep& s) const { return d.add_constraint(s); }
        std::string operator()(const DropConstraintStep& s) const { return d.drop_constraint(s); }
        std::string operator()(const UpdateDataStep& s) const { return d.update_data(s); }
        std::string operator()(const CopyDataStep& s) const { return d.copy_data(s); }
        std::string operator()(const VersionRecordStep& s) const { return d.version_record(s); }
    };
    return std::visit(Visitor{*this}, step.op);
}

//===----------------------------------------------------------------------===//
// Families
//===----------------------------------------------------------------------===//

namespace {

std::string quoted_text(std::string_view text)
{
    return to_literal(Value(std::string(text)));
}

class OracleLikeDialect final : public Dialect {
public:
    std::string_view name() const override { return "oraclelike"; }
    std::size_t max_identifier_length() const override { return 30; }
    std::string_view alter_modify_keyword() const override { return "MODIFY"; }
    std::string_view type_keyword(TypeFamily family) const override
    {
        switch (family) {
        case TypeFamily::VarcharText:
            return "VARCHAR2";
        case TypeFamily::FixedNumber:
            return "NUMBER";
        case TypeFamily::Date:
            return "DATE";
        }
        return "?";
    }

protected:
    std::string add_column(const AddColumnStep& s) const override
    {
        return fmt::format("ALTER TABLE {} ADD {}", identifier(s.table), column_clause(s.column, s.type, s.column_constraints));
    }

    std::string modify_column(const ModifyColumnStep& s) const override
    {
        std::string head = fmt::format("ALTER TABLE {} MODIFY {} ", identifier(s.table), identifier(s.column));
        switch (s.change) {
        case ColumnChange::SetType:
            return head + map_type(s.type);
        case ColumnChange::SetDefault:
            return head + "DEFAULT " + s.literal;
        case ColumnChange::DropDefault:
            return head + "DEFAULT NULL";
        case ColumnChange::SetNotNull:
            return head + "NOT NULL";
        case ColumnChange::DropNotNull:
            return head + "NULL";
        }
        return head;
    }

    std::string backup_table(const BackupStep& s) const override
    {
        return fmt::format("CREATE TABLE {} AS SELECT * FROM {}", identifier(s.backup_table), identifier(s.table));
    }

    std::string concatenation(const ConcatenateUpdate& u) const override
    {
        // Oracle's || already reads NULL as an empty string.
        std::string out = identifier(u.target) + " = ";
        for (std::size_t i = 0; i < u.sources.size(); ++i) {
            if (i)
                out += " || " + quoted_text(u.delimiter) + " || ";
            out += identifier(u.sources[i]);
        }
        return out;
    }

    std::string timestamp_literal(Timestamp ts) const override
    {
        auto text = iso8601(ts);
        text[10] = ' ';
        return fmt::format("TO_DATE('{}', 'YYYY-MM-DD HH24:MI:SS')", text);
    }
};

class AnsiDialect final : public Dialect {
public:
    std::string_view name() const override { return "ansi"; }
    std::size_t max_identifier_length() const override { return 128; }
    std::string_view alter_modify_keyword() const override { return "ALTER COLUMN"; }
    std::string_view type_keyword(TypeFamily family) const override
    {
        switch (family) {
        case TypeFamily::VarcharText:
            return "VARCHAR";
        case TypeFamily::FixedNumber:
            return "NUMERIC";
        case TypeFamily::Date:
            return "DATE";
        }
        return "?";
    }

protected:
    std::string add_column(const AddColumnStep& s) const override
    {
        return fmt::format("ALTER TABLE {} ADD COLUMN {}", identifier(s.table),
                           column_clause(s.column, s.type, s.column_constraints));
    }

    std::string modify_column(const ModifyColumnStep& s) const override
    {
        std::string head = fmt::format("ALTER TABLE {} ALTER COLUMN {} ", identifier(s.table), identifier(s.column));
        switch (s.change) {
        case ColumnChange::SetType:
            return head + "SET DATA TYPE " + map_type(s.type);
        case ColumnChange::SetDefault:
            return head + "SET DEFAULT " + s.literal;
        case ColumnChange::DropDefault:
            return head + "DROP DEFAULT";
        case ColumnChange::SetNotNull:
            return head + "SET NOT NULL";
        case ColumnChange::DropNotNull:
            return head + "DROP NOT NULL";
        }
        return head;
    }

    std::string backup_table(const BackupStep& s) const override
    {
        return fmt::format("CREATE TABLE {} AS (SELECT * FROM {}) WITH DATA", identifier(s.backup_table),
                           identifier(s.table));
    }

    std::string concatenation(const ConcatenateUpdate& u) const override
    {
        // ANSI || propagates NULL; COALESCE keeps the empty-string reading.
        std::string out = identifier(u.target) + " = ";
        for (std::size_t i = 0; i < u.sources.size(); ++i) {
            if (i)
                out += " || " + quoted_text(u.delimiter) + " || ";
            out += "COALESCE(" + identifier(u.sources[i]) + ", '')";
        }
        return out;
    }

    std::string timestamp_literal(Timestamp ts) const override
    {
        auto text = iso8601(ts);
        text[10] = ' ';
        return fmt::format("TIMESTAMP '{}'", text);
    }
};

} // namespace

const Dialect& oraclelike()
{
    static const OracleLikeDialect instance;
    return instance;
}

const Dialect& ansi()
{
    static const AnsiDialect instance;
    return instance;
}

const Dialect* find_dialect(std::string_view name)
{
    if (same_identifier(name, "oraclelike"))
        return &oraclelike();
    if (same_identifier(name, "ansi"))
        return &ansi();
    return nullptr;
}

} // namespace refactordb
