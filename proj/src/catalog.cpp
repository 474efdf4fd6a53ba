// SPDX-License-Identifier: Apache-2.0

#include "refactordb/catalog.hpp"

#include "refactordb/ddl_parser.hpp"
#include "refactordb/dialect.hpp"
#include "refactordb/errors.hpp"
#include "refactordb/value.hpp"

#include <fmt/format.h>
#include <sqlite3.h>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace refactordb {

//===----------------------------------------------------------------------===//
// Adapters
//===----------------------------------------------------------------------===//

void MemoryCatalogAdapter::add_table(std::string name, std::string ddl, std::size_t rows)
{
    entries_.push_back({std::move(name), std::move(ddl), rows});
}

std::vector<std::string> MemoryCatalogAdapter::list_tables()
{
    std::vector<std::string> out;
    for (const auto& e : entries_)
        out.push_back(e.name);
    return out;
}

std::string MemoryCatalogAdapter::get_table_ddl(ObjectType, const std::string& name, const std::string&)
{
    for (const auto& e : entries_) {
        if (same_identifier(e.name, name))
            return e.ddl;
    }
    throw AdapterError(name, "no such table");
}

std::size_t MemoryCatalogAdapter::row_count(const std::string& name)
{
    for (const auto& e : entries_) {
        if (same_identifier(e.name, name))
            return e.rows;
    }
    throw AdapterError(name, "no such table");
}

namespace {

/// Prepared statement released on scope exit.
class Statement {
public:
    Statement(sqlite3* db, const std::string& sql, const std::string& table) : table_(table)
    {
        if (sqlite3_prepare_v2(db, sql.c_str(), -1, &stmt_, nullptr) != SQLITE_OK)
            throw AdapterError(table_, sqlite3_errmsg(db));
    }
    ~Statement() { sqlite3_finalize(stmt_); }
    Statement(const Statement&) = delete;
    Statement& operator=(const Statement&) = delete;

    void bind(int index, const std::string& text)
    {
        sqlite3_bind_text(stmt_, index, text.c_str(), static_cast<int>(text.size()), SQLITE_TRANSIENT);
    }

    bool step()
    {
        int rc = sqlite3_step(stmt_);
        if (rc == SQLITE_ROW)
            return true;
        if (rc == SQLITE_DONE)
            return false;
        throw AdapterError(table_, sqlite3_errmsg(sqlite3_db_handle(stmt_)));
    }

    std::optional<std::string> text(int column) const
    {
        if (sqlite3_column_type(stmt_, column) == SQLITE_NULL)
            return std::nullopt;
        const auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt_, column));
        return std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt_, column)));
    }

    int columns() const { return sqlite3_column_count(stmt_); }

private:
    sqlite3_stmt* stmt_ = nullptr;
    std::string table_;
};

std::string sqlite_quote(std::string_view name)
{
    std::string out = "\"";
    for (char c : name)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string sqlite_literal(const Value& value)
{
    if (is_null(value))
        return "NULL";
    if (const auto* d = std::get_if<Decimal>(&value))
        return d->str();
    std::string text = display(value);
    std::string out = "'";
    for (char c : text)
        out += c == '\'' ? std::string("''") : std::string(1, c);
    return out + "'";
}

/// SQLite has no DATE literal, so date defaults go in as quoted text; the
/// parser turns them back into DATE literals.
Table sqlite_compatible(Table table)
{
    for (const Constraint& c : std::vector<Constraint>(table.constraints())) {
        if (c.kind == ConstraintKind::Default && c.default_literal.rfind("DATE ", 0) == 0) {
            Constraint plain = c;
            plain.default_literal = c.default_literal.substr(5);
            table.replace_constraint(c.name, plain);
        }
    }
    return table;
}

} // namespace

SqliteCatalogAdapter::SqliteCatalogAdapter(const std::string& path)
{
    if (sqlite3_open(path.c_str(), &db_) != SQLITE_OK) {
        std::string why = db_ ? sqlite3_errmsg(db_) : "cannot open";
        sqlite3_close(db_);
        db_ = nullptr;
        throw AdapterError({}, path + ": " + why);
    }
}

SqliteCatalogAdapter::~SqliteCatalogAdapter()
{
    sqlite3_close(db_);
}

void SqliteCatalogAdapter::execute(const std::string& sql)
{
    char* message = nullptr;
    if (sqlite3_exec(db_, sql.c_str(), nullptr, nullptr, &message) != SQLITE_OK) {
        std::string why = message ? message : "execution failed";
        sqlite3_free(message);
        throw AdapterError({}, why);
    }
}

std::vector<std::string> SqliteCatalogAdapter::list_tables()
{
    Statement s(db_, "SELECT name FROM sqlite_master WHERE type = 'table' AND name NOT LIKE 'sqlite_%' ORDER BY rowid",
                {});
    std::vector<std::string> out;
    while (s.step())
        out.push_back(s.text(0).value_or(""));
    return out;
}

std::string SqliteCatalogAdapter::get_table_ddl(ObjectType, const std::string& name, const std::string&)
{
    Statement s(db_, "SELECT sql FROM sqlite_master WHERE type = 'table' AND name = ?1 COLLATE NOCASE", name);
    s.bind(1, name);
    if (!s.step())
        throw AdapterError(name, "no such table");
    return s.text(0).value_or("");
}

std::size_t SqliteCatalogAdapter::row_count(const std::string& name)
{
    Statement s(db_, "SELECT COUNT(*) FROM " + sqlite_quote(name), name);
    s.step();
    return static_cast<std::size_t>(std::stoull(s.text(0).value_or("0")));
}

std::vector<std::vector<std::optional<std::string>>> SqliteCatalogAdapter::fetch_rows(const std::string& name)
{
    Statement s(db_, "SELECT * FROM " + sqlite_quote(name) + " ORDER BY rowid", name);
    std::vector<std::vector<std::optional<std::string>>> out;
    while (s.step()) {
        std::vector<std::optional<std::string>> row;
        for (int i = 0; i < s.columns(); ++i)
            row.push_back(s.text(i));
        out.push_back(std::move(row));
    }
    return out;
}

void seed_catalog(SqliteCatalogAdapter& adapter, const Schema& schema, const Dialect& dialect, const DataStore* store)
{
    for (const Table& table : schema.tables)
        adapter.execute(render_create_table(sqlite_compatible(table), dialect));
    if (!store)
        return;
    for (const Table& table : schema.tables) {
        for (const Row& row : store->data(table.name()).rows) {
            std::string values;
            for (std::size_t i = 0; i < row.size(); ++i)
                values += (i ? ", " : "") + sqlite_literal(row[i]);
            adapter.execute(fmt::format("INSERT INTO {} VALUES ({})", sqlite_quote(table.name()), values));
        }
    }
}

//===----------------------------------------------------------------------===//
// Loading
//===----------------------------------------------------------------------===//

ScriptLoad load_scripts(const std::vector<std::filesystem::path>& paths)
{
    ScriptLoad out;
    for (const auto& path : paths) {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw IoError(path.string(), "cannot open");
        std::ostringstream text;
        text << in.rdbuf();
        if (in.bad())
            throw IoError(path.string(), "read failed");
        Schema part = parse_script(text.str(), path.string());
        if (out.schema.owner.empty())
            out.schema.owner = part.owner;
        for (Table& t : part.tables) {
            out.source_of.emplace(to_upper(t.name()), path.string());
            out.schema.tables.push_back(std::move(t));
        }
    }
    resolve_foreign_keys(out.schema);
    return out;
}

Schema load_from_scripts(const std::vector<std::filesystem::path>& paths)
{
    return load_scripts(paths).schema;
}

std::vector<std::filesystem::path> script_files(const std::filesystem::path& directory)
{
    std::error_code ec;
    std::vector<std::filesystem::path> out;
    for (std::filesystem::directory_iterator it(directory, ec), end; !ec && it != end; it.increment(ec)) {
        if (it->is_regular_file() && it->path().extension() == ".sql")
            out.push_back(it->path());
    }
    if (ec)
        throw IoError(directory.string(), ec.message());
    std::sort(out.begin(), out.end());
    return out;
}

Schema load_from_catalog(CatalogAdapter& adapter, const std::string& owner)
{
    Schema schema;
    schema.owner = owner;
    std::vector<std::string> names;
    try {
        names = adapter.list_tables();
    } catch (const AdapterError&) {
        throw;
    } catch (const std::exception& e) {
        throw AdapterError({}, e.what());
    }
    for (const auto& name : names) {
        try {
            Table table = parse_create_table(adapter.get_table_ddl(ObjectType::Table, name, owner));
            if (!owner.empty())
                table.set_owner(owner);
            schema.tables.push_back(std::move(table));
        } catch (const AdapterError&) {
            throw;
        } catch (const std::exception& e) {
            throw AdapterError(name, e.what());
        }
    }
    resolve_foreign_keys(schema);
    return schema;
}

DataStore load_catalog_data(SqliteCatalogAdapter& adapter, const Schema& schema)
{
    DataStore store = make_store(schema);
    for (const Table& table : schema.tables) {
        auto& rows = store.data(table.name()).rows;
        for (const auto& raw : adapter.fetch_rows(table.name())) {
            if (raw.size() != table.columns().size())
                throw AdapterError(table.name(), "row width does not match the table definition");
            Row row;
            for (std::size_t i = 0; i < raw.size(); ++i) {
                const DataType& type = table.columns()[i].type;
                if (!raw[i]) {
                    row.emplace_back();
                } else if (type.base == TypeFamily::FixedNumber) {
                    auto d = Decimal::parse(*raw[i]);
                    if (!d)
                        throw AdapterError(table.name(), "not a number: " + *raw[i]);
                    row.emplace_back(*d);
                } else if (type.base == TypeFamily::Date) {
                    auto d = DateTime::parse(*raw[i]);
                    if (!d)
                        throw AdapterError(table.name(), "not a date: " + *raw[i]);
                    row.emplace_back(*d);
                } else {
                    row.emplace_back(*raw[i]);
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return store;
}

//===----------------------------------------------------------------------===//
// Table description
//===----------------------------------------------------------------------===//

std::vector<TableDescriptionRow> describe_table(const Schema& schema, std::string_view table_name)
{
    const Table& table = schema.table(table_name);
    std::optional<std::string> owner = table.owner();
    if (!owner && !schema.owner.empty())
        owner = schema.owner;

    std::vector<TableDescriptionRow> rows;
    int ordinal = 0;
    for (const Column& c : table.columns()) {
        TableDescriptionRow r;
        r.table_schem = owner;
        r.table_name = table.name();
        r.column_name = c.name;
        switch (c.type.base) {
        case TypeFamily::FixedNumber:
            r.data_type = 3;
            r.type_name = "NUMBER";
            r.column_size = c.type.precision.value_or(38);
            if (c.type.precision)
                r.decimal_digits = c.type.scale.value_or(0);
            r.char_octet_length = 22;
            break;
        case TypeFamily::VarcharText:
            r.data_type = 12;
            r.type_name = "VARCHAR2";
            r.column_size = c.type.length.value_or(0);
            r.char_octet_length = r.column_size;
            break;
        case TypeFamily::Date:
            r.data_type = 91;
            r.type_name = "DATE";
            r.column_size = 7;
            r.char_octet_length = 7;
            break;
        }
        bool required = table.is_required(c.name);
        r.nullable = required ? 0 : 1;
        r.is_nullable = required ? "NO" : "YES";
        r.column_def = c.default_value;
        r.ordinal_position = ++ordinal;
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

std::string cell(const std::optional<std::string>& v)
{
    return v.value_or("null");
}

std::string cell(const std::optional<int>& v)
{
    return v ? std::to_string(*v) : "null";
}

std::string cell(int v)
{
    return std::to_string(v);
}

std::string cell(const std::string& v)
{
    return v;
}

} // namespace

std::string format_description(const std::vector<TableDescriptionRow>& rows)
{
    std::string out;
    int index = 0;
    auto line = [&](std::string_view field, auto member) {
        out += fmt::format("[{}] {}", ++index, field);
        for (const auto& r : rows)
            out += "\t" + cell(r.*member);
        out += "\n";
    };
    line("TABLE_CAT", &TableDescriptionRow::table_cat);
    line("TABLE_SCHEM", &TableDescriptionRow::table_schem);
    line("TABLE_NAME", &TableDescriptionRow::table_name);
    line("COLUMN_NAME", &TableDescriptionRow::column_name);
    line("DATA_TYPE", &TableDescriptionRow::data_type);
    line("TYPE_NAME", &TableDescriptionRow::type_name);
    line("COLUMN_SIZE", &TableDescriptionRow::column_size);
    line("BUFFER_LENGTH", &TableDescriptionRow::buffer_length);
    line("DECIMAL_DIGITS", &TableDescriptionRow::decimal_digits);
    line("NUM_PREC_RADIX", &TableDescriptionRow::num_prec_radix);
    line("NULLABLE", &TableDescriptionRow::nullable);
    line("REMARKS", &TableDescriptionRow::remarks);
    line("COLUMN_DEF", &TableDescriptionRow::column_def);
    line("SQL_DATA_TYPE", &TableDescriptionRow::sql_data_type);
    line("SQL_DATETIME_SUB", &TableDescriptionRow::sql_datetime_sub);
    line("CHAR_OCTET_LENGTH", &TableDescriptionRow::char_octet_length);
    line("ORDINAL_POSITION", &TableDescriptionRow::ordinal_position);
    line("IS_NULLABLE", &TableDescriptionRow::is_nullable);
    return out;
}

std::vector<std::pair<std::string, std::size_t>> table_row_counts(const DataStore& store,
                                                                  const std::vector<std::string>& table_names)
{
    std::vector<std::pair<std::string, std::size_t>> out;
    for (const auto& name : table_names) {
        const Table& t = store.schema.table(name);
        out.emplace_back(t.name(), store.data(name).rows.size());
    }
    return out;
}

//===----------------------------------------------------------------------===//
// Column-metadata views
//===----------------------------------------------------------------------===//

std::vector<std::string> get_tables(const Schema& schema)
{
    std::vector<std::string> out;
    for (const Table& t : schema.tables)
        out.push_back(t.name());
    return out;
}

std::vector<ColumnMetadata> get_columns(const Schema& schema, std::string_view table_name)
{
    const Table& table = schema.table(table_name);
    std::vector<ColumnMetadata> out;
    int ordinal = 0;
    for (const Column& c : table.columns())
        out.push_back({table.name(), c.name, c.type, c.default_value, ++ordinal, !table.is_required(c.name)});
    return out;
}

std::vector<PrimaryKeyMetadata> get_primary_keys(const Schema& schema, std::string_view table_name)
{
    const Table& table = schema.table(table_name);
    std::vector<PrimaryKeyMetadata> out;
    if (const Constraint* pk = table.primary_key()) {
        int seq = 0;
        for (const auto& c : pk->columns)
            out.push_back({table.name(), c, ++seq, pk->name});
    }
    return out;
}

Schema reconstruct_from_metadata(const Schema& source)
{
    Schema out;
    out.owner = source.owner;
    for (const auto& name : get_tables(source)) {
        Table table(name, source.table(name).owner());
        auto keys = get_primary_keys(source, name);
        for (const ColumnMetadata& c : get_columns(source, name)) {
            table.add_column(c.column_name, c.type);
            bool in_key = std::any_of(keys.begin(), keys.end(),
                                      [&](const PrimaryKeyMetadata& k) { return k.column_name == c.column_name; });
            if (!c.nullable && !in_key) {
                Constraint nn;
                nn.kind = ConstraintKind::NotNull;
                nn.name = table.next_synthetic_name(ConstraintKind::NotNull);
                nn.system_named = true;
                nn.columns = {c.column_name};
                nn.level = ConstraintLevel::ColumnLevel;
                table.add_constraint(std::move(nn));
            }
            if (c.column_def) {
                Constraint df;
                df.kind = ConstraintKind::Default;
                df.name = table.next_synthetic_name(ConstraintKind::Default);
                df.system_named = true;
                df.columns = {c.column_name};
                df.default_literal = *c.column_def;
                df.level = ConstraintLevel::ColumnLevel;
                table.add_constraint(std::move(df));
            }
        }
        if (!keys.empty()) {
            Constraint pk;
            pk.kind = ConstraintKind::PrimaryKey;
            pk.name = keys.front().pk_name;
            std::sort(keys.begin(), keys.end(),
                      [](const PrimaryKeyMetadata& a, const PrimaryKeyMetadata& b) { return a.key_seq < b.key_seq; });
            for (const auto& k : keys)
                pk.columns.push_back(k.column_name);
            table.add_constraint(std::move(pk));
        }
        out.tables.push_back(std::move(table));
    }
    return out;
}

} // namespace refactordb
