// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refactordb/data_store.hpp"
#include "refactordb/dialect.hpp"
#include "refactordb/executor.hpp"
#include "refactordb/plan.hpp"
#include "refactordb/refactorings.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace refactordb {

struct CliConfig {
    const Dialect* dialect = &oraclelike();
    /// Script directory; when unset, REFACTORDB_SCHEMA_DIR and then ./schema
    /// are tried, and a missing default directory yields an empty store.
    std::optional<std::filesystem::path> schema_dir;
    /// SQLite database read through SqliteCatalogAdapter instead of scripts.
    std::optional<std::string> catalog_db;
    /// Seed the housekeeping test tables before the first prompt.
    bool fixture = false;
    std::optional<Timestamp> fixed_timestamp;
    std::string owner = "SCOTT";
    std::optional<std::filesystem::path> out_script;
    std::optional<std::filesystem::path> out_log;
    /// Repeat each response on the output stream (for piped input).
    bool echo_input = true;
};

/// Exit codes shared by both modes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitGuard = 1;
inline constexpr int kExitExecution = 2;
inline constexpr int kExitInput = 3;

/// The housekeeping corpus: seven constraint shapes plus EMP and DEPT.
Schema corpus_schema(const std::string& owner = "SCOTT");

/// corpus_schema plus SUPPLIERS and the EMP24JAN09120206 backup, with rows
/// (EMP 9, SUPPLIERS 6, backup 9).
DataStore fixture_store(const std::string& owner = "SCOTT");

class Session {
public:
    /// Loads the configured source. Throws IoError, ScriptError or AdapterError.
    explicit Session(const CliConfig& config);

    const DataStore& store() const noexcept { return store_; }
    const Dialect& dialect() const noexcept { return *dialect_; }
    const std::string& owner() const noexcept { return owner_; }
    /// Every script applied so far, in order.
    const std::string& script() const noexcept { return script_; }
    const std::vector<VersionEntry>& log() const noexcept { return log_; }

    void set_dialect(const Dialect& dialect) { dialect_ = &dialect; }
    void set_owner(std::string owner);

    PlanContext context() const;
    Plan plan(const RefactoringRequest& request) const;
    std::vector<GuardResult> guards(const RefactoringRequest& request) const;

    /// Applies and adopts the new store. Throws ExecutionAborted.
    ExecutionResult apply(const Plan& plan);

    /// Adds the missing fixture tables with their rows; returns their names.
    std::vector<std::string> seed_fixture();

    /// Writes the script and log mirror to the configured paths.
    void write_outputs() const;

private:
    void ensure_log_table();

    CliConfig config_;
    const Dialect* dialect_;
    std::string owner_;
    DataStore store_;
    std::string script_;
    std::vector<VersionEntry> log_;
};

std::string render_menu();

/// The menu-driven wizard. `transcript`, when given, receives every prompt,
/// response and output line.
int run_interactive(const CliConfig& config, std::istream& in, std::ostream& out, std::string* transcript = nullptr);

/// One request per line: `KIND key=value ...`; values may be double-quoted
/// (`""` inside quotes is a literal quote); `#` starts a comment line.
/// Throws std::invalid_argument on malformed lines.
std::optional<RefactoringRequest> parse_batch_line(std::string_view line);

/// Runs every request of the file in order; stops at the first failure.
int run_batch(const std::filesystem::path& batch_file, const CliConfig& config, std::ostream& out, std::ostream& err);

} // namespace refactordb
