// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refactordb/schema_model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace refactordb {

class Dialect;

/// Parses exactly one CREATE TABLE statement (a trailing `;` is allowed).
///
/// Grammar:
///   CREATE TABLE [owner.]name ( element [, element]... )
///   element     = column_def | table_constraint
///   column_def  = name type { DEFAULT literal | [NOT] NULL | [CONSTRAINT n] inline_kind }
///   type        = NUMBER[(p[,s])] | NUMERIC[(p[,s])] | VARCHAR2(n) | VARCHAR(n) | DATE
///
/// Unnamed constraints receive `SYS_<table>_<tag>_<n>` names in parse order.
/// Throws SyntaxError or UnsupportedConstruct.
Table parse_create_table(std::string_view ddl);

/// Parses a `;`-separated script of CREATE TABLE statements. Errors are
/// rethrown as ScriptError carrying `source` and the 1-based statement
/// index. FOREIGN KEY clauses without a referenced column list are resolved
/// to the referenced table's primary key. The schema is not validated.
Schema parse_script(std::string_view script, std::string_view source = {});

/// Fills empty REFERENCES column lists with the referenced table's primary key.
void resolve_foreign_keys(Schema& schema);

/// Type text as typed by a user, e.g. `varchar2(32)` or `NUMBER(3,0)`.
DataType parse_data_type(std::string_view text);

/// Canonical CREATE TABLE text: one element per line, NOT NULL and DEFAULT
/// inline, every other constraint table-level with its name.
std::string render_create_table(const Table& table, const Dialect& dialect);

struct ConstraintStringRow {
    std::string column_name;
    int row_index = 0;
    std::string table_name;
    std::string constraint_string;

    bool operator==(const ConstraintStringRow&) const = default;
};

/// One row per column: the column definition followed by every PK, UNIQUE,
/// FK and CHECK clause that mentions the column.
std::vector<ConstraintStringRow> extract_constraint_strings(const Table& table, const Dialect& dialect);
std::vector<ConstraintStringRow> extract_constraint_strings(const Table& table);

} // namespace refactordb
