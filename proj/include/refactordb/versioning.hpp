// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refactordb/schema_model.hpp"

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace refactordb {

class Dialect;

using Timestamp = std::chrono::sys_seconds;

/// Accepts `YYYY-MM-DDTHH:MM:SS` (or a space instead of `T`).
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string iso8601(Timestamp ts);

/// The 13-character DDMONYYHHMISS stamp, e.g. `24JAN09120206`.
std::string timestamp_suffix(Timestamp ts);

inline constexpr std::size_t kSuffixLength = 13;

/// `base` + stamp; the base is truncated so the whole fits `max_length`.
std::string backup_name(std::string_view base_table, Timestamp ts, std::size_t max_length);
std::string backup_name(std::string_view base_table, Timestamp ts, const Dialect& dialect);

/// `name` + `_` + stamp, base-truncated to fit `max_length`.
std::string versioned_constraint_name(std::string_view name, Timestamp ts, std::size_t max_length);
std::string versioned_constraint_name(std::string_view name, Timestamp ts, const Dialect& dialect);

inline constexpr std::string_view kLogTableName = "NOVCODE_CONSTRAINTS_MODIFIED";

/// One row of NOVCODE_CONSTRAINTS_MODIFIED.
struct VersionEntry {
    std::string owner;
    std::string constraint_name;
    char constraint_type = 'C';
    std::string table_name;
    std::optional<std::string> r_owner;
    std::optional<std::string> r_constraint_name;
    Timestamp new_modification_date{};
    std::optional<std::string> new_constraint_name;
    std::optional<std::string> new_table_name;

    bool operator==(const VersionEntry&) const = default;
};

/// P, R, U or C; nullopt for DEFAULT, which the log does not track.
std::optional<char> constraint_type_code(ConstraintKind kind);

/// Append-only list of entries, ordered by insertion.
class VersionLog {
public:
    const std::vector<VersionEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }

    friend VersionLog record_modification(VersionEntry entry, VersionLog log);

    bool operator==(const VersionLog&) const = default;

private:
    std::vector<VersionEntry> entries_;
};

/// Throws FieldOverflow when a field exceeds its column width and
/// std::invalid_argument when the type code / R-field pairing is broken.
void check_entry(const VersionEntry& entry);

VersionLog record_modification(VersionEntry entry, VersionLog log);

/// Model of NOVCODE_CONSTRAINTS_MODIFIED.
Table log_table_model();

std::string emit_log_table_ddl(const Dialect& dialect);

/// Tab-separated fields in table column order, ISO-8601 date, empty for absent.
std::string mirror_line(const VersionEntry& entry);
std::string format_log_mirror(const std::vector<VersionEntry>& entries);

} // namespace refactordb
