// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refactordb/plan.hpp"
#include "refactordb/schema_model.hpp"
#include "refactordb/versioning.hpp"

#include <string>
#include <string_view>

namespace refactordb {

/// Emission profile for one SQL family.
///
/// Plans are dialect-neutral; `emit` is the fixed skeleton that walks a step
/// and calls the per-family hooks below for the parts where the families
/// disagree (type spelling, ALTER grammar, CTAS form, timestamp literals).
class Dialect {
public:
    virtual ~Dialect() = default;

    virtual std::string_view name() const = 0;
    virtual std::size_t max_identifier_length() const = 0;
    virtual std::string_view type_keyword(TypeFamily family) const = 0;
    virtual std::string_view alter_modify_keyword() const = 0;

    std::string map_type(const DataType& type) const;

    /// Length-enforced, quoted-if-needed identifier.
    std::string identifier(std::string_view name) const;

    /// One statement without trailing semicolon.
    std::string emit(const Step& step) const;

    /// `NAME TYPE [DEFAULT lit] [NOT NULL]` for a column and its NOT NULL /
    /// DEFAULT constraints.
    std::string column_clause(const std::string& column, const DataType& type,
                              const std::vector<Constraint>& constraints) const;
    /// `CONSTRAINT N PRIMARY KEY (A,B)` and friends, for PK/UNIQUE/FK/CHECK.
    std::string constraint_clause(const Constraint& constraint) const;

protected:
    virtual std::string add_column(const AddColumnStep& step) const = 0;
    virtual std::string modify_column(const ModifyColumnStep& step) const = 0;
    virtual std::string backup_table(const BackupStep& step) const = 0;
    virtual std::string concatenation(const ConcatenateUpdate& update) const = 0;
    virtual std::string timestamp_literal(Timestamp ts) const = 0;

    /// NOT NULL and DEFAULT are column properties in both families, so
    /// dropping one goes through modify_column.
    std::string drop_constraint(const DropConstraintStep& step) const;
    std::string add_constraint(const AddConstraintStep& step) const;
    std::string update_data(const UpdateDataStep& step) const;
    std::string copy_data(const CopyDataStep& step) const;
    std::string version_record(const VersionRecordStep& step) const;
    std::string expression(std::string_view text) const;
};

/// Oracle family: VARCHAR2/NUMBER/DATE, 30-char identifiers, MODIFY.
const Dialect& oraclelike();
/// ANSI family: VARCHAR/NUMERIC/DATE, 128-char identifiers, ALTER COLUMN.
const Dialect& ansi();

/// nullptr for unknown names.
const Dialect* find_dialect(std::string_view name);

/// Strictest limit among built-in dialects; plan-time names are bound to it.
inline constexpr std::size_t kPortableIdentifierLength = 30;

std::string emit_step(const Step& step, const Dialect& dialect);
std::string map_type(const DataType& type, const Dialect& dialect);

/// Five uppercase base-36 digits of the FNV-1a 64-bit hash of `name`.
std::string identifier_hash(std::string_view name);

/// Names within the limit pass through; longer ones become the
/// (limit - 6)-character prefix + `_` + identifier_hash(name).
std::string enforce_identifier(std::string_view name, std::size_t max_length);
std::string enforce_identifier(std::string_view name, const Dialect& dialect);

} // namespace refactordb
