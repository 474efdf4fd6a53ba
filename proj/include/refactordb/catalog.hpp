// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refactordb/data_store.hpp"
#include "refactordb/schema_model.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

struct sqlite3;

namespace refactordb {

class Dialect;

enum class ObjectType { Table };

/// Source of verbatim CREATE TABLE text, modelled on a GET_DDL call.
/// One caller at a time per instance.
class CatalogAdapter {
public:
    virtual ~CatalogAdapter() = default;

    virtual std::vector<std::string> list_tables() = 0;
    virtual std::string get_table_ddl(ObjectType type, const std::string& name, const std::string& owner) = 0;
    virtual std::size_t row_count(const std::string& name) = 0;
};

/// Adapter over DDL strings held in memory, in insertion order.
class MemoryCatalogAdapter : public CatalogAdapter {
public:
    void add_table(std::string name, std::string ddl, std::size_t rows = 0);

    std::vector<std::string> list_tables() override;
    std::string get_table_ddl(ObjectType type, const std::string& name, const std::string& owner) override;
    std::size_t row_count(const std::string& name) override;

private:
    struct Entry {
        std::string name;
        std::string ddl;
        std::size_t rows = 0;
    };
    std::vector<Entry> entries_;
};

/// Adapter over an SQLite database; sqlite_master keeps the original
/// CREATE TABLE text. Throws AdapterError on any SQLite failure.
class SqliteCatalogAdapter : public CatalogAdapter {
public:
    /// `path` may be ":memory:".
    explicit SqliteCatalogAdapter(const std::string& path);
    ~SqliteCatalogAdapter() override;

    SqliteCatalogAdapter(const SqliteCatalogAdapter&) = delete;
    SqliteCatalogAdapter& operator=(const SqliteCatalogAdapter&) = delete;

    void execute(const std::string& sql);

    std::vector<std::string> list_tables() override;
    std::string get_table_ddl(ObjectType type, const std::string& name, const std::string& owner) override;
    std::size_t row_count(const std::string& name) override;

    /// Every row of the table as text; nullopt for NULL.
    std::vector<std::vector<std::optional<std::string>>> fetch_rows(const std::string& name);

private:
    sqlite3* db_ = nullptr;
};

/// Creates every table of `schema` (and its rows, when `store` is given) in
/// the adapter's database using render_create_table.
void seed_catalog(SqliteCatalogAdapter& adapter, const Schema& schema, const Dialect& dialect,
                  const DataStore* store = nullptr);

struct ScriptLoad {
    Schema schema;
    /// Upper-cased table name to the file it came from.
    std::map<std::string, std::string> source_of;
};

/// Parses the files in order as one script. Throws IoError, or ScriptError
/// naming the file.
ScriptLoad load_scripts(const std::vector<std::filesystem::path>& paths);
Schema load_from_scripts(const std::vector<std::filesystem::path>& paths);

/// Every `*.sql` file of a directory, sorted by file name.
std::vector<std::filesystem::path> script_files(const std::filesystem::path& directory);

/// One table per list_tables() entry, each parsed from get_table_ddl text.
/// Throws AdapterError naming the table in flight.
Schema load_from_catalog(CatalogAdapter& adapter, const std::string& owner);

/// Rows of a catalog-backed database, coerced to the schema's column types.
DataStore load_catalog_data(SqliteCatalogAdapter& adapter, const Schema& schema);

//===----------------------------------------------------------------------===//
// Table description
//===----------------------------------------------------------------------===//

struct TableDescriptionRow {
    std::optional<std::string> table_cat;
    std::optional<std::string> table_schem;
    std::string table_name;
    std::string column_name;
    int data_type = 0;
    std::string type_name;
    int column_size = 0;
    int buffer_length = 0;
    std::optional<int> decimal_digits;
    int num_prec_radix = 10;
    int nullable = 1;
    std::optional<std::string> remarks;
    std::optional<std::string> column_def;
    int sql_data_type = 0;
    int sql_datetime_sub = 0;
    int char_octet_length = 0;
    int ordinal_position = 0;
    std::string is_nullable;

    bool operator==(const TableDescriptionRow&) const = default;
};

/// Throws TableNotFound.
std::vector<TableDescriptionRow> describe_table(const Schema& schema, std::string_view table_name);

/// The transposed layout: one `[i] FIELD` line per field, one tab-separated
/// value per column.
std::string format_description(const std::vector<TableDescriptionRow>& rows);

/// Throws TableNotFound.
std::vector<std::pair<std::string, std::size_t>> table_row_counts(const DataStore& store,
                                                                  const std::vector<std::string>& table_names);

//===----------------------------------------------------------------------===//
// Column-metadata views
//===----------------------------------------------------------------------===//

// These mirror the getTables/getColumns/getPrimaryKeys surface. A schema
// rebuilt from them alone has no UNIQUE, CHECK or FOREIGN KEY constraints.

struct ColumnMetadata {
    std::string table_name;
    std::string column_name;
    DataType type;
    std::optional<std::string> column_def;
    int ordinal_position = 0;
    bool nullable = true;

    bool operator==(const ColumnMetadata&) const = default;
};

struct PrimaryKeyMetadata {
    std::string table_name;
    std::string column_name;
    int key_seq = 0;
    std::string pk_name;

    bool operator==(const PrimaryKeyMetadata&) const = default;
};

std::vector<std::string> get_tables(const Schema& schema);
std::vector<ColumnMetadata> get_columns(const Schema& schema, std::string_view table_name);
std::vector<PrimaryKeyMetadata> get_primary_keys(const Schema& schema, std::string_view table_name);

/// Best schema obtainable through the three views above.
Schema reconstruct_from_metadata(const Schema& source);

} // namespace refactordb
