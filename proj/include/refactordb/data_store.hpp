// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refactordb/schema_model.hpp"
#include "refactordb/value.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace refactordb {

using Row = std::vector<Value>;

struct TableData {
    std::vector<Row> rows;

    bool operator==(const TableData&) const = default;
};

/// A schema together with the rows of each of its tables. Row storage is
/// keyed by the uppercased table name.
struct DataStore {
    Schema schema;
    std::map<std::string, TableData> tables;

    /// Throws TableNotFound.
    const TableData& data(std::string_view table) const;
    TableData& data(std::string_view table);

    bool operator==(const DataStore&) const = default;
};

/// A store holding `schema` with every table empty.
DataStore make_store(Schema schema);

/// Appends a row; the literals are coerced to the column types. Throws
/// std::invalid_argument when a literal does not fit.
void insert_row(DataStore& store, std::string_view table, const std::vector<std::string>& literals);

/// Every reason the store breaks its invariants: schema validity, row arity,
/// value types, required columns, PK/UNIQUE duplicates and dangling foreign
/// keys. CHECK constraints are not evaluated. Empty when conforming.
std::vector<std::string> conformance_problems(const DataStore& store);

} // namespace refactordb
