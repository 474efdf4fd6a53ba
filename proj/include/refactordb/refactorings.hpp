// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refactordb/data_store.hpp"
#include "refactordb/plan.hpp"

#include <vector>

namespace refactordb {

struct PlanContext {
    Timestamp timestamp{};
    /// OWNER recorded in version entries; the schema owner when empty.
    std::string owner;

    /// Current wall-clock second.
    static PlanContext now();
};

// Every planner evaluates all of its guards, then throws TableNotFound,
// ColumnNotFound or ConstraintNotFound for a missing referent, GuardFailure
// when any guard failed, and otherwise returns the plan. When `data` is
// given, the finished plan is also dry-run against it as a last guard.

Plan plan_drop_column(const Schema& schema, const DropColumnRequest& request, const PlanContext& context,
                      const DataStore* data = nullptr);
Plan plan_drop_table(const Schema& schema, const DropTableRequest& request, const PlanContext& context,
                     const DataStore* data = nullptr);
Plan plan_merge_columns(const Schema& schema, const MergeColumnsRequest& request, const PlanContext& context,
                        const DataStore* data = nullptr);
Plan plan_merge_tables(const Schema& schema, const MergeTablesRequest& request, const PlanContext& context,
                       const DataStore* data = nullptr);
Plan plan_move_column(const Schema& schema, const MoveColumnRequest& request, const PlanContext& context,
                      const DataStore* data = nullptr);
Plan plan_rename_column(const Schema& schema, const RenameColumnRequest& request, const PlanContext& context,
                        const DataStore* data = nullptr);
Plan plan_drop_constraint(const Schema& schema, const DropConstraintRequest& request, const PlanContext& context,
                          const DataStore* data = nullptr);
Plan plan_introduce_default_value(const Schema& schema, const IntroduceDefaultValueRequest& request,
                                  const PlanContext& context, const DataStore* data = nullptr);
Plan plan_make_column_non_nullable(const Schema& schema, const MakeColumnNonNullableRequest& request,
                                   const PlanContext& context, const DataStore* data = nullptr);
Plan plan_introduce_new_column(const Schema& schema, const IntroduceNewColumnRequest& request,
                               const PlanContext& context, const DataStore* data = nullptr);

/// Dispatches on the request kind. Throws IncompleteRequest first.
Plan plan_refactoring(const RefactoringRequest& request, const Schema& schema, const PlanContext& context,
                      const DataStore* data = nullptr);

/// Every guard of the request, none skipped. Missing referents show up as
/// failed "table exists" / "column exists" / "constraint exists" guards.
std::vector<GuardResult> validate_guards(const RefactoringRequest& request, const Schema& schema,
                                         const DataStore* data = nullptr, const PlanContext& context = {});

} // namespace refactordb
