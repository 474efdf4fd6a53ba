// SPDX-License-Identifier: Apache-2.0

#include "refactordb/plan.hpp"

#include <fmt/format.h>

#include <array>

namespace refactordb {

namespace {

constexpr std::array<std::string_view, 10> kKindNames = {
    "DROP_COLUMN",    "DROP_TABLE",     "MERGE_COLUMNS",           "MERGE_TABLES",
    "MOVE_COLUMN",    "RENAME_COLUMN",  "DROP_CONSTRAINT",         "INTRODUCE_DEFAULT_VALUE",
    "MAKE_COLUMN_NON_NULLABLE", "INTRODUCE_NEW_COLUMN",
};

constexpr std::array<std::string_view, 11> kStepNames = {
    "Backup",        "AddColumn",      "DropColumn", "ModifyColumn", "RenameColumn",  "DropTable",
    "AddConstraint", "DropConstraint", "UpdateData", "CopyData",     "VersionRecord",
};

std::string join(const std::vector<std::string>& items, std::string_view sep)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i)
            out += sep;
        out += items[i];
    }
    return out;
}

std::string quoted(std::string_view text)
{
    std::string out = "'";
    for (char c : text) {
        if (c == '\'')
            out += "''";
        else
            out.push_back(c);
    }
    return out + "'";
}

} // namespace

std::string_view to_string(RefactoringKind kind)
{
    return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<RefactoringKind> parse_refactoring_kind(std::string_view text)
{
    for (std::size_t i = 0; i < kKindNames.size(); ++i) {
        if (same_identifier(kKindNames[i], text))
            return static_cast<RefactoringKind>(i);
    }
    return std::nullopt;
}

RefactoringKind kind_of(const RefactoringRequest& request)
{
    return static_cast<RefactoringKind>(request.index());
}

std::vector<std::string> missing_params(const RefactoringRequest& request)
{
    std::vector<std::string> missing;
    auto need = [&](const std::string& value, const char* name) {
        if (value.empty())
            missing.emplace_back(name);
    };
    std::visit(
        [&](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, DropColumnRequest>) {
                need(r.table, "table");
                need(r.column, "column");
            } else if constexpr (std::is_same_v<T, DropTableRequest>) {
                need(r.table, "table");
            } else if constexpr (std::is_same_v<T, MergeColumnsRequest>) {
                need(r.table, "table");
                if (r.columns.empty())
                    missing.emplace_back("columns");
            } else if constexpr (std::is_same_v<T, MergeTablesRequest>) {
                need(r.target_table, "target");
                need(r.source_table, "source");
                if (r.columns.empty())
                    missing.emplace_back("columns");
            } else if constexpr (std::is_same_v<T, MoveColumnRequest>) {
                need(r.source_table, "source");
                need(r.target_table, "target");
                need(r.column, "column");
            } else if constexpr (std::is_same_v<T, RenameColumnRequest>) {
                need(r.table, "table");
                need(r.old_name, "column");
                need(r.new_name, "new_name");
            } else if constexpr (std::is_same_v<T, DropConstraintRequest>) {
                need(r.table, "table");
                need(r.constraint, "constraint");
            } else if constexpr (std::is_same_v<T, IntroduceDefaultValueRequest>) {
                need(r.table, "table");
                need(r.column, "column");
                need(r.literal, "literal");
            } else if constexpr (std::is_same_v<T, MakeColumnNonNullableRequest>) {
                need(r.table, "table");
                need(r.column, "column");
            } else if constexpr (std::is_same_v<T, IntroduceNewColumnRequest>) {
                need(r.table, "table");
                need(r.column, "column");
            }
        },
        request);
    return missing;
}

IncompleteRequest::IncompleteRequest(std::vector<std::string> missing)
    : Error("request is missing: " + join(missing, ", ")), missing_(std::move(missing))
{
}

std::string_view to_string(StepKind kind)
{
    return kStepNames[static_cast<std::size_t>(kind)];
}

bool Step::destructive() const
{
    switch (kind()) {
    case StepKind::DropColumn:
    case StepKind::DropTable:
    case StepKind::DropConstraint:
    case StepKind::UpdateData:
    case StepKind::CopyData:
        return true;
    default:
        return false;
    }
}

std::string Step::affected_table() const
{
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, VersionRecordStep>)
                return {};
            else if constexpr (std::is_same_v<T, CopyDataStep>)
                return s.target_table;
            else
                return s.table;
        },
        op);
}

std::string describe(const Step& step)
{
    struct Visitor {
        std::string operator()(const BackupStep& s) const { return fmt::format("{} -> {}", s.table, s.backup_table); }
        std::string operator()(const AddColumnStep& s) const
        {
            std::string out = fmt::format("{} {} {}", s.table, s.column, s.type.describe());
            bool not_null = false;
            for (const Constraint& c : s.column_constraints) {
                if (c.kind == ConstraintKind::Default)
                    out += " DEFAULT " + c.default_literal;
                if (c.kind == ConstraintKind::NotNull)
                    not_null = true;
            }
            return out + (not_null ? " NOT NULL" : " NULL");
        }
        std::string operator()(const DropColumnStep& s) const { return fmt::format("{} {}", s.table, s.column); }
        std::string operator()(const ModifyColumnStep& s) const
        {
            std::string head = fmt::format("{} {} ", s.table, s.column);
            switch (s.change) {
            case ColumnChange::SetType:
                return head + "SET TYPE " + s.type.describe();
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
        std::string operator()(const RenameColumnStep& s) const
        {
            return fmt::format("{} {} -> {}", s.table, s.from, s.to);
        }
        std::string operator()(const DropTableStep& s) const { return s.table; }
        std::string operator()(const AddConstraintStep& s) const
        {
            return s.table + " " + constraint_clause(s.constraint);
        }
        std::string operator()(const DropConstraintStep& s) const
        {
            return fmt::format("{} {} ({})", s.table, s.constraint.name, to_string(s.constraint.kind));
        }
        std::string operator()(const UpdateDataStep& s) const
        {
            struct Update {
                std::string operator()(const ConcatenateUpdate& u) const
                {
                    std::vector<std::string> parts = u.sources;
                    return u.target + " = " + join(parts, " || " + quoted(u.delimiter) + " || ");
                }
                std::string operator()(const FillNullsUpdate& u) const
                {
                    return fmt::format("{} = {} WHERE {} IS NULL", u.column, u.literal, u.column);
                }
                std::string operator()(const ExpressionUpdate& u) const { return u.payload; }
            };
            return s.table + " " + std::visit(Update{}, s.update);
        }
        std::string operator()(const CopyDataStep& s) const
        {
            return fmt::format("{}.{} -> {}.{} WHERE {}", s.source_table, s.source_column, s.target_table,
                               s.target_column, s.condition);
        }
        std::string operator()(const VersionRecordStep& s) const
        {
            const VersionEntry& e = s.entry;
            std::string out = fmt::format("{} {} {}", e.constraint_name, e.constraint_type, e.table_name);
            if (e.new_constraint_name || e.new_table_name)
                out += fmt::format(" -> {} {}", e.new_constraint_name.value_or("-"), e.new_table_name.value_or("-"));
            return out;
        }
    };
    return std::string(to_string(step.kind())) + " " + std::visit(Visitor{}, step.op);
}

std::string describe(const Plan& plan)
{
    std::string out;
    for (std::size_t i = 0; i < plan.steps.size(); ++i)
        out += fmt::format("{}. {}\n", i + 1, describe(plan.steps[i]));
    return out;
}

GuardFailure::GuardFailure(std::vector<GuardResult> failed)
    : Error([&] {
          std::string out = "guard failure:";
          for (const auto& g : failed)
              out += " [" + g.guard_name + ": " + g.detail + "]";
          return out;
      }()),
      failed_(std::move(failed))
{
}

} // namespace refactordb
