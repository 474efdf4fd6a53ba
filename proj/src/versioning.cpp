// SPDX-License-Identifier: Apache-2.0

#include "refactordb/versioning.hpp"

#include "refactordb/ddl_parser.hpp"
#include "refactordb/dialect.hpp"
#include "refactordb/errors.hpp"
#include "refactordb/value.hpp"

#include <fmt/format.h>

#include <array>
#include <stdexcept>

namespace refactordb {

using namespace std::chrono;

namespace {

constexpr std::array<const char*, 12> kMonths = {"JAN", "FEB", "MAR", "APR", "MAY", "JUN",
                                                 "JUL", "AUG", "SEP", "OCT", "NOV", "DEC"};

struct Parts {
    int year;
    unsigned month, day;
    long hours, minutes, seconds;
};

Parts split(Timestamp ts)
{
    auto day = floor<days>(ts);
    year_month_day ymd{day};
    hh_mm_ss hms{ts - day};
    return {int(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()), hms.hours().count(),
            hms.minutes().count(), static_cast<long>(hms.seconds().count())};
}

std::string truncated_base(std::string_view base, std::size_t room)
{
    return std::string(base.substr(0, std::min(base.size(), room)));
}

} // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text)
{
    if (text.size() != 19 || (text[10] != 'T' && text[10] != ' '))
        return std::nullopt;
    std::string copy(text);
    copy[10] = ' ';
    auto parsed = DateTime::parse(copy);
    if (!parsed)
        return std::nullopt;
    return parsed->instant;
}

std::string iso8601(Timestamp ts)
{
    Parts p = split(ts);
    return fmt::format("{:04}-{:02}-{:02}T{:02}:{:02}:{:02}", p.year, p.month, p.day, p.hours, p.minutes, p.seconds);
}

std::string timestamp_suffix(Timestamp ts)
{
    Parts p = split(ts);
    return fmt::format("{:02}{}{:02}{:02}{:02}{:02}", p.day, kMonths[p.month - 1], ((p.year % 100) + 100) % 100,
                       p.hours, p.minutes, p.seconds);
}

std::string backup_name(std::string_view base_table, Timestamp ts, std::size_t max_length)
{
    return truncated_base(base_table, max_length - kSuffixLength) + timestamp_suffix(ts);
}

std::string backup_name(std::string_view base_table, Timestamp ts, const Dialect& dialect)
{
    return backup_name(base_table, ts, dialect.max_identifier_length());
}

std::string versioned_constraint_name(std::string_view name, Timestamp ts, std::size_t max_length)
{
    return truncated_base(name, max_length - kSuffixLength - 1) + "_" + timestamp_suffix(ts);
}

std::string versioned_constraint_name(std::string_view name, Timestamp ts, const Dialect& dialect)
{
    return versioned_constraint_name(name, ts, dialect.max_identifier_length());
}

std::optional<char> constraint_type_code(ConstraintKind kind)
{
    switch (kind) {
    case ConstraintKind::PrimaryKey:
        return 'P';
    case ConstraintKind::ForeignKey:
        return 'R';
    case ConstraintKind::Unique:
        return 'U';
    case ConstraintKind::Check:
    case ConstraintKind::NotNull:
        return 'C';
    case ConstraintKind::Default:
        return std::nullopt;
    }
    return std::nullopt;
}

void check_entry(const VersionEntry& e)
{
    auto width = [](const char* field, std::string_view value, std::size_t limit) {
        if (text_length(value) > limit)
            throw FieldOverflow(field, limit);
    };
    width("OWNER", e.owner, 30);
    width("CONSTRAINT_NAME", e.constraint_name, 50);
    width("TABLE_NAME", e.table_name, 50);
    if (e.r_owner)
        width("R_OWNER", *e.r_owner, 50);
    if (e.r_constraint_name)
        width("R_CONSTRAINT_NAME", *e.r_constraint_name, 50);
    if (e.new_constraint_name)
        width("NEW_CONSTRAINT_NAME", *e.new_constraint_name, 50);
    if (e.new_table_name)
        width("NEW_TABLE_NAME", *e.new_table_name, 50);

    if (std::string_view("PRUC").find(e.constraint_type) == std::string_view::npos)
        throw std::invalid_argument(fmt::format("constraint type '{}' is not one of P, R, U, C", e.constraint_type));
    bool referential = e.constraint_type == 'R';
    if (referential != e.r_owner.has_value() || referential != e.r_constraint_name.has_value())
        throw std::invalid_argument("R_OWNER and R_CONSTRAINT_NAME must be present exactly for type R");
}

VersionLog record_modification(VersionEntry entry, VersionLog log)
{
    check_entry(entry);
    log.entries_.push_back(std::move(entry));
    return log;
}

Table log_table_model()
{
    Table t{std::string(kLogTableName)};
    t.add_column("OWNER", DataType::varchar(30));
    t.add_column("CONSTRAINT_NAME", DataType::varchar(50));
    t.add_column("CONSTRAINT_TYPE", DataType::varchar(1));
    t.add_column("TABLE_NAME", DataType::varchar(50));
    t.add_column("R_OWNER", DataType::varchar(50));
    t.add_column("R_CONSTRAINT_NAME", DataType::varchar(50));
    t.add_column("NEW_MODIFICATION_DATE", DataType::date());
    t.add_column("NEW_CONSTRAINT_NAME", DataType::varchar(50));
    t.add_column("NEW_TABLE_NAME", DataType::varchar(50));
    return t;
}

std::string emit_log_table_ddl(const Dialect& dialect)
{
    return render_create_table(log_table_model(), dialect);
}

std::string mirror_line(const VersionEntry& e)
{
    auto opt = [](const std::optional<std::string>& v) { return v.value_or(""); };
    return fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}", e.owner, e.constraint_name, e.constraint_type, e.table_name,
                       opt(e.r_owner), opt(e.r_constraint_name), iso8601(e.new_modification_date),
                       opt(e.new_constraint_name), opt(e.new_table_name));
}

std::string format_log_mirror(const std::vector<VersionEntry>& entries)
{
    std::string out;
    for (const auto& e : entries)
        out += mirror_line(e) + "\n";
    return out;
}

} // namespace refactordb
