// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refactordb/errors.hpp"
#include "refactordb/schema_model.hpp"
#include "refactordb/versioning.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace refactordb {

//===----------------------------------------------------------------------===//
// Requests
//===----------------------------------------------------------------------===//

enum class RefactoringKind {
    DropColumn,
    DropTable,
    MergeColumns,
    MergeTables,
    MoveColumn,
    RenameColumn,
    DropConstraint,
    IntroduceDefaultValue,
    MakeColumnNonNullable,
    IntroduceNewColumn,
};

/// DROP_COLUMN, MERGE_TABLES, ...
std::string_view to_string(RefactoringKind kind);
std::optional<RefactoringKind> parse_refactoring_kind(std::string_view text);

struct DropColumnRequest {
    std::string table;
    std::string column;
    bool backup = false;
    bool confirmed = true;
};

struct DropTableRequest {
    std::string table;
    bool backup = false;
};

enum class MergeMode { Merge, Concatenate };

struct MergeColumnsRequest {
    std::string table;
    /// The first column is the merge target.
    std::vector<std::string> columns;
    MergeMode mode = MergeMode::Concatenate;
    std::optional<std::string> delimiter;
    std::optional<std::string> update_condition;
    bool backup = false;
};

struct MergeTablesRequest {
    std::string target_table;
    std::string source_table;
    std::vector<std::string> columns;
};

struct MoveColumnRequest {
    std::string source_table;
    std::string target_table;
    std::string column;
    std::string condition;
    bool backup = false;
};

struct RenameColumnRequest {
    std::string table;
    std::string old_name;
    std::string new_name;
};

struct DropConstraintRequest {
    std::string table;
    std::string constraint;
    bool backup = false;
};

struct IntroduceDefaultValueRequest {
    std::string table;
    std::string column;
    std::string literal;
};

struct MakeColumnNonNullableRequest {
    std::string table;
    std::string column;
    std::optional<std::string> fill_value;
};

struct IntroduceNewColumnRequest {
    std::string table;
    std::string column;
    DataType type;
    bool nullable = true;
    std::optional<std::string> default_value;
};

using RefactoringRequest =
    std::variant<DropColumnRequest, DropTableRequest, MergeColumnsRequest, MergeTablesRequest, MoveColumnRequest,
                 RenameColumnRequest, DropConstraintRequest, IntroduceDefaultValueRequest,
                 MakeColumnNonNullableRequest, IntroduceNewColumnRequest>;

RefactoringKind kind_of(const RefactoringRequest& request);

/// Names of required parameters that are empty; empty when complete.
std::vector<std::string> missing_params(const RefactoringRequest& request);

class IncompleteRequest : public Error {
public:
    explicit IncompleteRequest(std::vector<std::string> missing);
    const std::vector<std::string>& missing() const noexcept { return missing_; }

private:
    std::vector<std::string> missing_;
};

//===----------------------------------------------------------------------===//
// Steps
//===----------------------------------------------------------------------===//

enum class StepKind {
    Backup,
    AddColumn,
    DropColumn,
    ModifyColumn,
    RenameColumn,
    DropTable,
    AddConstraint,
    DropConstraint,
    UpdateData,
    CopyData,
    VersionRecord,
};

std::string_view to_string(StepKind kind);

struct BackupStep {
    std::string table;
    std::string backup_table;
    bool operator==(const BackupStep&) const = default;
};

struct AddColumnStep {
    std::string table;
    std::string column;
    DataType type;
    /// NOT NULL / DEFAULT constraints created together with the column.
    std::vector<Constraint> column_constraints;
    bool operator==(const AddColumnStep&) const = default;
};

struct DropColumnStep {
    std::string table;
    std::string column;
    bool operator==(const DropColumnStep&) const = default;
};

enum class ColumnChange { SetType, SetDefault, DropDefault, SetNotNull, DropNotNull };

struct ModifyColumnStep {
    std::string table;
    std::string column;
    ColumnChange change = ColumnChange::SetType;
    DataType type;
    /// Default literal for SetDefault.
    std::string literal;
    /// Constraint created (SetDefault/SetNotNull) or removed (Drop*).
    std::string constraint_name;
    bool operator==(const ModifyColumnStep&) const = default;
};

struct RenameColumnStep {
    std::string table;
    std::string from;
    std::string to;
    bool operator==(const RenameColumnStep&) const = default;
};

struct DropTableStep {
    std::string table;
    bool operator==(const DropTableStep&) const = default;
};

struct AddConstraintStep {
    std::string table;
    Constraint constraint;
    bool operator==(const AddConstraintStep&) const = default;
};

struct DropConstraintStep {
    std::string table;
    Constraint constraint;
    bool operator==(const DropConstraintStep&) const = default;
};

/// target = s1 || delimiter || s2 ..., NULL read as empty text.
struct ConcatenateUpdate {
    std::string target;
    std::vector<std::string> sources;
    std::string delimiter;
    bool operator==(const ConcatenateUpdate&) const = default;
};

/// column = literal WHERE column IS NULL
struct FillNullsUpdate {
    std::string column;
    std::string literal;
    bool operator==(const FillNullsUpdate&) const = default;
};

/// User payload emitted as `UPDATE t SET <payload>`.
struct ExpressionUpdate {
    std::string payload;
    bool operator==(const ExpressionUpdate&) const = default;
};

struct UpdateDataStep {
    std::string table;
    std::variant<ConcatenateUpdate, FillNullsUpdate, ExpressionUpdate> update;
    bool operator==(const UpdateDataStep&) const = default;
};

/// target.target_column = (SELECT DISTINCT source.source_column FROM source WHERE condition)
struct CopyDataStep {
    std::string source_table;
    std::string source_column;
    std::string target_table;
    std::string target_column;
    std::string condition;
    bool operator==(const CopyDataStep&) const = default;
};

struct VersionRecordStep {
    VersionEntry entry;
    bool operator==(const VersionRecordStep&) const = default;
};

using StepOperation = std::variant<BackupStep, AddColumnStep, DropColumnStep, ModifyColumnStep, RenameColumnStep,
                                   DropTableStep, AddConstraintStep, DropConstraintStep, UpdateDataStep, CopyDataStep,
                                   VersionRecordStep>;

struct Step {
    StepOperation op;

    StepKind kind() const { return static_cast<StepKind>(op.index()); }
    /// True for DropColumn, DropTable, DropConstraint, UpdateData and CopyData.
    bool destructive() const;
    /// Table the step changes (target for CopyData); empty for VersionRecord.
    std::string affected_table() const;

    bool operator==(const Step&) const = default;
};

/// One-line listing: kind followed by operands.
std::string describe(const Step& step);

//===----------------------------------------------------------------------===//
// Plans
//===----------------------------------------------------------------------===//

struct GuardResult {
    std::string guard_name;
    bool passed = false;
    std::string detail;

    bool operator==(const GuardResult&) const = default;
};

class GuardFailure : public Error {
public:
    explicit GuardFailure(std::vector<GuardResult> failed);
    const std::vector<GuardResult>& failed() const noexcept { return failed_; }

private:
    std::vector<GuardResult> failed_;
};

struct Plan {
    RefactoringRequest request;
    Timestamp timestamp{};
    std::vector<Step> steps;
    std::vector<GuardResult> guards;
};

/// Numbered step listing used by the confirmation prompt.
std::string describe(const Plan& plan);

} // namespace refactordb
