// SPDX-License-Identifier: Apache-2.0

#include "refactordb/data_store.hpp"

#include "refactordb/errors.hpp"

#include <fmt/format.h>

#include <set>
#include <stdexcept>

namespace refactordb {

const TableData& DataStore::data(std::string_view table) const
{
    auto it = tables.find(to_upper(table));
    if (it == tables.end())
        throw TableNotFound(std::string(table));
    return it->second;
}

TableData& DataStore::data(std::string_view table)
{
    auto it = tables.find(to_upper(table));
    if (it == tables.end())
        throw TableNotFound(std::string(table));
    return it->second;
}

DataStore make_store(Schema schema)
{
    DataStore store;
    for (const Table& t : schema.tables)
        store.tables[to_upper(t.name())];
    store.schema = std::move(schema);
    return store;
}

void insert_row(DataStore& store, std::string_view table, const std::vector<std::string>& literals)
{
    const Table& t = store.schema.table(table);
    if (literals.size() != t.columns().size())
        throw std::invalid_argument(
            fmt::format("{} expects {} values, got {}", t.name(), t.columns().size(), literals.size()));
    Row row;
    for (std::size_t i = 0; i < literals.size(); ++i) {
        auto value = literal_value(literals[i], t.columns()[i].type);
        if (!value)
            throw std::invalid_argument(fmt::format("{}.{}: bad literal {}", t.name(), t.columns()[i].name, literals[i]));
        row.push_back(std::move(*value));
    }
    store.data(table).rows.push_back(std::move(row));
}

namespace {

struct ValueLess {
    bool operator()(const std::vector<Value>& a, const std::vector<Value>& b) const
    {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            auto c = compare_values(a[i], b[i]);
            if (c != 0)
                return c < 0;
        }
        return a.size() < b.size();
    }
};

std::vector<std::size_t> indexes(const Table& table, const std::vector<std::string>& columns)
{
    std::vector<std::size_t> out;
    for (const auto& c : columns) {
        if (auto i = table.column_index(c))
            out.push_back(*i);
    }
    return out;
}

std::vector<Value> project(const Row& row, const std::vector<std::size_t>& at)
{
    std::vector<Value> out;
    for (std::size_t i : at)
        out.push_back(i < row.size() ? row[i] : Value{});
    return out;
}

bool any_null(const std::vector<Value>& values)
{
    for (const auto& v : values) {
        if (is_null(v))
            return true;
    }
    return false;
}

} // namespace

std::vector<std::string> conformance_problems(const DataStore& store)
{
    std::vector<std::string> problems;
    for (const Violation& v : validate_schema(store.schema))
        problems.push_back(to_string(v));

    std::set<std::string> known;
    for (const Table& table : store.schema.tables) {
        known.insert(to_upper(table.name()));
        auto it = store.tables.find(to_upper(table.name()));
        if (it == store.tables.end()) {
            problems.push_back(fmt::format("{}: no row storage", table.name()));
            continue;
        }
        const auto& rows = it->second.rows;
        const auto& columns = table.columns();
        bool shapes_ok = true;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != columns.size()) {
                problems.push_back(fmt::format("{}: row {} has {} values for {} columns", table.name(), r + 1,
                                               rows[r].size(), columns.size()));
                shapes_ok = false;
                continue;
            }
            for (std::size_t c = 0; c < columns.size(); ++c) {
                const Value& v = rows[r][c];
                if (is_null(v)) {
                    if (!columns[c].nullable)
                        problems.push_back(
                            fmt::format("{}.{}: row {} is null in a required column", table.name(), columns[c].name, r + 1));
                } else if (auto p = value_problem(v, columns[c].type); !p.empty()) {
                    problems.push_back(fmt::format("{}.{}: row {}: {}", table.name(), columns[c].name, r + 1, p));
                }
            }
        }
        if (!shapes_ok)
            continue;

        for (const Constraint& k : table.constraints()) {
            if (k.kind == ConstraintKind::PrimaryKey || k.kind == ConstraintKind::Unique) {
                auto at = indexes(table, k.columns);
                std::set<std::vector<Value>, ValueLess> seen;
                for (const Row& row : rows) {
                    auto key = project(row, at);
                    if (any_null(key))
                        continue;
                    if (!seen.insert(key).second) {
                        problems.push_back(fmt::format("{}/{}: duplicate key", table.name(), k.name));
                        break;
                    }
                }
            } else if (k.kind == ConstraintKind::ForeignKey) {
                const Table* target = store.schema.find_table(k.referenced_table);
                if (!target || k.columns.size() != k.referenced_columns.size())
                    continue;
                auto target_rows = store.tables.find(to_upper(target->name()));
                if (target_rows == store.tables.end())
                    continue;
                auto at = indexes(table, k.columns);
                auto ref_at = indexes(*target, k.referenced_columns);
                if (at.size() != k.columns.size() || ref_at.size() != k.columns.size())
                    continue;
                std::set<std::vector<Value>, ValueLess> keys;
                for (const Row& row : target_rows->second.rows)
                    keys.insert(project(row, ref_at));
                for (std::size_t r = 0; r < rows.size(); ++r) {
                    auto key = project(rows[r], at);
                    if (!any_null(key) && !keys.count(key)) {
                        problems.push_back(fmt::format("{}/{}: row {} has no parent in {}", table.name(), k.name, r + 1,
                                                       target->name()));
                        break;
                    }
                }
            }
        }
    }
    for (const auto& [name, data] : store.tables) {
        if (!known.count(name))
            problems.push_back(fmt::format("{}: rows stored for a table not in the schema", name));
    }
    return problems;
}

} // namespace refactordb
