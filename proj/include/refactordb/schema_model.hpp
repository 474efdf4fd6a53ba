// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refactordb {

//===----------------------------------------------------------------------===//
// Identifiers
//===----------------------------------------------------------------------===//

/// Uppercases ASCII letters; unquoted identifiers are stored in this form.
std::string to_upper(std::string_view text);

/// Case-insensitive identifier comparison on the canonical uppercase form.
bool same_identifier(std::string_view a, std::string_view b);

/// Canonical form of user-typed identifier text: `"x"` keeps `x` verbatim,
/// anything else is trimmed and uppercased. Returns nullopt when the text is
/// not a legal identifier.
std::optional<std::string> canonical_identifier(std::string_view text);

/// True when `name` can be written without double quotes.
bool is_plain_identifier(std::string_view name);

/// `name` or `"name"`, whichever the renderer must emit.
std::string quote_identifier(std::string_view name);

//===----------------------------------------------------------------------===//
// Types
//===----------------------------------------------------------------------===//

enum class TypeFamily { VarcharText, FixedNumber, Date };

std::string_view to_string(TypeFamily family);

struct DataType {
    TypeFamily base = TypeFamily::VarcharText;
    std::optional<int> length;
    std::optional<int> precision;
    std::optional<int> scale;

    static DataType varchar(int length) { return {TypeFamily::VarcharText, length, {}, {}}; }
    static DataType number(std::optional<int> precision = {}, std::optional<int> scale = {})
    {
        return {TypeFamily::FixedNumber, {}, precision, scale};
    }
    static DataType date() { return {TypeFamily::Date, {}, {}, {}}; }

    /// Neutral spelling used in step listings, e.g. `VARCHAR_TEXT(32)`.
    std::string describe() const;

    /// Empty when the type is well-formed, otherwise the broken rule.
    std::string validity_problem() const;

    bool operator==(const DataType&) const = default;
};

/// Why `literal` cannot be stored in a column of `type`; empty when it can.
/// Accepted literals: numbers for FIXED_NUMBER, quoted strings for
/// VARCHAR_TEXT, `DATE 'YYYY-MM-DD'` or a quoted ISO date for DATE.
std::string literal_problem(std::string_view literal, const DataType& type);

//===----------------------------------------------------------------------===//
// Columns and constraints
//===----------------------------------------------------------------------===//

struct Column {
    std::string name;
    DataType type;
    bool nullable = true;
    std::optional<std::string> default_value;
    int ordinal = 0;

    bool operator==(const Column&) const = default;
};

enum class ConstraintKind { PrimaryKey, Unique, ForeignKey, Check, NotNull, Default };
enum class ConstraintLevel { ColumnLevel, TableLevel };

std::string_view to_string(ConstraintKind kind);

/// Short tag used in synthetic names: PK, UQ, FK, CK, NN, DF.
std::string_view synthetic_tag(ConstraintKind kind);

struct Constraint {
    std::string name;
    bool system_named = false;
    ConstraintKind kind = ConstraintKind::Unique;
    std::vector<std::string> columns;
    std::optional<std::string> referenced_owner;
    std::string referenced_table;
    std::vector<std::string> referenced_columns;
    std::string check_expression;
    std::string default_literal;
    ConstraintLevel level = ConstraintLevel::TableLevel;

    bool mentions(std::string_view column) const;

    bool operator==(const Constraint&) const = default;
};

/// Canonical clause text, e.g. `CONSTRAINT SUPP_PK PRIMARY KEY (SUP_ID)`.
/// Only meaningful for PK, UNIQUE, FK and CHECK.
std::string constraint_clause(const Constraint& constraint);

/// Rewrites unquoted identifier tokens equal to `from` inside an expression.
std::string rename_in_expression(std::string_view expression, std::string_view from, std::string_view to);

/// Identifier tokens of an expression, canonicalized, in order of appearance.
std::vector<std::string> expression_identifiers(std::string_view expression);

//===----------------------------------------------------------------------===//
// Table
//===----------------------------------------------------------------------===//

/// A table whose column nullability/default views are kept in step with its
/// NOT NULL and DEFAULT constraints by every mutator.
class Table {
public:
    Table() = default;
    explicit Table(std::string name, std::optional<std::string> owner = {});

    const std::string& name() const noexcept { return name_; }
    const std::optional<std::string>& owner() const noexcept { return owner_; }
    const std::vector<Column>& columns() const noexcept { return columns_; }
    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }

    void set_name(std::string name) { name_ = std::move(name); }
    void set_owner(std::optional<std::string> owner) { owner_ = std::move(owner); }

    const Column* find_column(std::string_view name) const;
    std::optional<std::size_t> column_index(std::string_view name) const;
    const Constraint* find_constraint(std::string_view name) const;
    const Constraint* primary_key() const;

    /// Appends a column; nullable/default fields are recomputed from constraints.
    void add_column(std::string name, DataType type);
    void drop_column(std::string_view name);
    void rename_column(std::string_view from, std::string_view to);
    void set_column_type(std::string_view column, DataType type);

    void add_constraint(Constraint constraint);
    void drop_constraint(std::string_view name);
    /// Replaces a constraint in place (same position), keeping views in sync.
    void replace_constraint(std::string_view name, Constraint constraint);

    /// Next free `SYS_<table>_<tag>_<n>` name for this table.
    std::string next_synthetic_name(ConstraintKind kind) const;

    /// Whether the column must hold a value: NOT NULL or PK member.
    bool is_required(std::string_view column) const;

    bool operator==(const Table&) const = default;

private:
    void refresh_views();

    std::string name_;
    std::optional<std::string> owner_;
    std::vector<Column> columns_;
    std::vector<Constraint> constraints_;
};

/// Structural equality used by round-trip checks: ignores owners,
/// system-named flags, constraint order and constraint level.
bool equivalent(const Table& a, const Table& b);

//===----------------------------------------------------------------------===//
// Schema
//===----------------------------------------------------------------------===//

struct Schema {
    std::string owner;
    std::vector<Table> tables;

    const Table* find_table(std::string_view name) const;
    Table* find_table(std::string_view name);

    /// Throws TableNotFound.
    const Table& table(std::string_view name) const;
    Table& table(std::string_view name);

    bool operator==(const Schema&) const = default;
};

struct Violation {
    std::string table;
    std::string constraint;
    std::string column;
    std::string message;

    bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

std::string to_string(const Violation& violation);

/// Lists every model invariant violation; an empty report means valid.
ValidationReport validate_schema(const Schema& schema);

/// Throws TableNotFound or ColumnNotFound.
const Column& find_column(const Schema& schema, std::string_view table_name, std::string_view column_name);

struct DependentConstraint {
    Constraint constraint;
    std::string owning_table;

    bool operator==(const DependentConstraint&) const = default;
};

/// Constraints naming the column (or any column of the table when `column`
/// is empty), including inbound foreign keys from other tables.
std::vector<DependentConstraint> dependent_constraints(const Schema& schema, std::string_view table_name,
                                                       std::optional<std::string_view> column = {});

/// The PK/UNIQUE constraint whose column set the foreign key references.
const Constraint* referenced_key(const Schema& schema, const Constraint& foreign_key);

/// Foreign keys anywhere in the schema whose referenced key is `key` on `table`.
std::vector<DependentConstraint> inbound_foreign_keys(const Schema& schema, std::string_view table,
                                                      const Constraint& key);

} // namespace refactordb
