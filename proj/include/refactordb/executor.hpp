// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refactordb/data_store.hpp"
#include "refactordb/dialect.hpp"
#include "refactordb/plan.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace refactordb {

struct ExecutionResult {
    DataStore new_store;
    std::string script;
    std::vector<VersionEntry> version_entries;
    std::size_t applied_steps = 0;
};

struct ApplyOptions {
    /// Test hook: fail as if the step at this 0-based index had been rejected.
    std::optional<std::size_t> fail_at_step;
};

/// Applies the plan to a copy of `store`, re-checking conformance after every
/// step. On success the copy is returned; on any failure ExecutionAborted is
/// thrown (step indexes are 0-based) and `store` is never touched.
/// VersionRecord steps also insert into NOVCODE_CONSTRAINTS_MODIFIED when the
/// store holds that table.
ExecutionResult apply_plan(const Plan& plan, const DataStore& store, const Dialect& dialect,
                           const ApplyOptions& options = {});

/// The script apply_plan would return, without a store: a
/// `-- refactoring: <KIND> @ <ISO-8601>` line followed by one
/// `;`-terminated statement per line. Empty for an empty plan.
std::string script_only(const Plan& plan, const Dialect& dialect);

/// Copies `table` (columns, NOT NULL-ness and rows) to its timestamped
/// backup name. Throws TableNotFound or NameCollision.
std::pair<DataStore, std::string> create_backup(const DataStore& store, std::string_view table, Timestamp ts,
                                                std::size_t max_length = kPortableIdentifierLength);

} // namespace refactordb
