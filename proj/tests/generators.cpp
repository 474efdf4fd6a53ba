// SPDX-License-Identifier: Apache-2.0

#include "generators.hpp"

#include "refactordb/value.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

namespace gen {

using namespace refactordb;

int pick(Rng& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng& rng, double p)
{
    return std::bernoulli_distribution(p)(rng);
}

std::string name(Rng& rng, std::string_view prefix, int extra)
{
    static constexpr std::string_view kChars = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";
    std::string out(prefix);
    int n = pick(rng, 1, std::max(1, extra));
    for (int i = 0; i < n; ++i)
        out += kChars[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(kChars.size()) - 1))];
    return out;
}

DataType data_type(Rng& rng)
{
    switch (pick(rng, 0, 4)) {
    case 0:
    case 1:
        return DataType::varchar(pick(rng, 1, 60));
    case 2: {
        int p = pick(rng, 1, 12);
        return DataType::number(p, pick(rng, 0, std::min(p - 1, 4)));
    }
    case 3:
        return chance(rng, 0.5) ? DataType::number() : DataType::number(pick(rng, 1, 12));
    default:
        return DataType::date();
    }
}

namespace {

std::string letters(Rng& rng, int n)
{
    std::string out;
    for (int i = 0; i < n; ++i)
        out += static_cast<char>(chance(rng, 0.8) ? 'a' + pick(rng, 0, 25) : 'A' + pick(rng, 0, 25));
    return out;
}

std::string number_literal(Rng& rng, int int_digits, int frac_digits)
{
    std::string digits;
    int n = pick(rng, 1, std::max(1, int_digits));
    long long value = 0;
    for (int i = 0; i < n; ++i)
        value = value * 10 + pick(rng, 0, 9);
    std::string out = std::to_string(value);
    if (frac_digits > 0 && chance(rng, 0.5)) {
        std::string frac;
        int f = pick(rng, 1, frac_digits);
        for (int i = 0; i < f; ++i)
            frac += static_cast<char>('0' + pick(rng, 0, 9));
        while (!frac.empty() && frac.back() == '0')
            frac.pop_back();
        if (!frac.empty())
            out += "." + frac;
    }
    if (out != "0" && chance(rng, 0.2))
        out = "-" + out;
    return out;
}

std::string date_literal(int year, int month, int day)
{
    return fmt::format("DATE '{:04}-{:02}-{:02}'", year, month, day);
}

} // namespace

std::string literal_for(Rng& rng, const DataType& type)
{
    switch (type.base) {
    case TypeFamily::VarcharText:
        return "'" + letters(rng, pick(rng, 1, std::min(type.length.value_or(1), 8))) + "'";
    case TypeFamily::FixedNumber: {
        if (!type.precision)
            return number_literal(rng, 6, 3);
        int scale = type.scale.value_or(0);
        return number_literal(rng, std::min(*type.precision - scale, 6), scale);
    }
    case TypeFamily::Date:
        return date_literal(pick(rng, 1990, 2030), pick(rng, 1, 12), pick(rng, 1, 28));
    }
    return "NULL";
}

std::string any_literal(Rng& rng, const DataType& type)
{
    if (chance(rng, 0.5))
        return literal_for(rng, type);
    static const std::vector<std::string> odd = {"'text'",          "12345678901234", "1",    "-7.25",
                                                 "DATE '2001-13-01'", "'2001-02-03'",   "'x",   "abc",
                                                 "'" + std::string(70, 'z') + "'",     "0.001", "''"};
    return one_of(rng, odd);
}

std::string distinct_literal(const DataType& type, int index)
{
    switch (type.base) {
    case TypeFamily::VarcharText:
        return fmt::format("'{}'", static_cast<char>('A' + index % 26));
    case TypeFamily::FixedNumber:
        return std::to_string(index);
    case TypeFamily::Date:
        return date_literal(2001, 1 + index / 28, 1 + index % 28);
    }
    return "NULL";
}

namespace {

Constraint make(ConstraintKind kind, std::vector<std::string> columns)
{
    Constraint c;
    c.kind = kind;
    c.columns = std::move(columns);
    c.level = (kind == ConstraintKind::NotNull || kind == ConstraintKind::Default) ? ConstraintLevel::ColumnLevel
                                                                                  : ConstraintLevel::TableLevel;
    return c;
}

void name_constraint(Rng& rng, Table& t, Constraint& c, int& serial)
{
    bool user = c.kind == ConstraintKind::NotNull || c.kind == ConstraintKind::Default ? chance(rng, 0.2)
                                                                                      : chance(rng, 0.7);
    if (user) {
        c.name = fmt::format("K{}_{}", ++serial, t.name().substr(0, 10));
    } else {
        c.name = t.next_synthetic_name(c.kind);
        c.system_named = true;
    }
}

std::vector<std::string> subset(Rng& rng, const std::vector<std::string>& columns, int max)
{
    std::vector<std::string> pool = columns;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<std::size_t>(pick(rng, 1, std::min<int>(max, static_cast<int>(pool.size())))));
    return pool;
}

} // namespace

Table table(Rng& rng, const std::string& table_name, const std::vector<Table>* parents)
{
    Table t(table_name);
    int serial = 0;
    std::vector<std::string> columns;
    int n = parents ? pick(rng, 2, 5) : pick(rng, 1, 6);
    for (int i = 0; i < n; ++i) {
        std::string c = name(rng, fmt::format("C{}_", i), 5);
        columns.push_back(c);
        t.add_column(c, data_type(rng));
    }
    std::vector<Constraint> constraints;
    std::vector<std::string> pk;
    if (chance(rng, 0.5)) {
        pk = subset(rng, columns, 2);
        constraints.push_back(make(ConstraintKind::PrimaryKey, pk));
    }
    if (chance(rng, 0.4)) {
        auto uq = subset(rng, columns, 2);
        std::set<std::string> a(uq.begin(), uq.end()), b(pk.begin(), pk.end());
        if (a != b)
            constraints.push_back(make(ConstraintKind::Unique, uq));
    }
    for (const auto& c : columns) {
        if (chance(rng, 0.3))
            constraints.push_back(make(ConstraintKind::NotNull, {c}));
        if (chance(rng, 0.2)) {
            Constraint df = make(ConstraintKind::Default, {c});
            df.default_literal = literal_for(rng, t.find_column(c)->type);
            constraints.push_back(df);
        }
    }
    if (chance(rng, 0.3)) {
        std::string c = one_of(rng, columns);
        Constraint ck = make(ConstraintKind::Check, {c});
        ck.check_expression = c + " IS NOT NULL";
        constraints.push_back(ck);
    }
    if (!parents && chance(rng, 0.3)) {
        auto cols = subset(rng, columns, 2);
        Constraint fk = make(ConstraintKind::ForeignKey, cols);
        fk.referenced_table = "REF_" + table_name.substr(0, 20);
        for (std::size_t i = 0; i < cols.size(); ++i)
            fk.referenced_columns.push_back(fmt::format("R{}", i + 1));
        constraints.push_back(fk);
    }
    if (parents && chance(rng, 0.6)) {
        std::vector<std::pair<const Table*, const Constraint*>> keys;
        for (const Table& p : *parents) {
            for (const Constraint& k : p.constraints()) {
                if (k.kind == ConstraintKind::PrimaryKey || k.kind == ConstraintKind::Unique)
                    keys.emplace_back(&p, &k);
            }
        }
        if (!keys.empty()) {
            auto [parent, key] = one_of(rng, keys);
            Constraint fk = make(ConstraintKind::ForeignKey, {});
            fk.referenced_table = parent->name();
            fk.referenced_columns = key->columns;
            for (std::size_t i = 0; i < key->columns.size(); ++i) {
                std::string c = name(rng, fmt::format("F{}_", i), 4);
                t.add_column(c, parent->find_column(key->columns[i])->type);
                fk.columns.push_back(c);
            }
            constraints.push_back(fk);
        }
    }
    for (Constraint& c : constraints) {
        name_constraint(rng, t, c, serial);
        t.add_constraint(c);
    }
    return t;
}

namespace {

bool in_key(const Table& t, const std::string& column)
{
    for (const Constraint& k : t.constraints()) {
        if ((k.kind == ConstraintKind::PrimaryKey || k.kind == ConstraintKind::Unique) && k.mentions(column))
            return true;
    }
    return false;
}

const Constraint* foreign_key_of(const Table& t, const std::string& column, std::size_t& position)
{
    for (const Constraint& k : t.constraints()) {
        if (k.kind != ConstraintKind::ForeignKey)
            continue;
        for (std::size_t i = 0; i < k.columns.size(); ++i) {
            if (k.columns[i] == column) {
                position = i;
                return &k;
            }
        }
    }
    return nullptr;
}

} // namespace

DataStore world(Rng& rng, bool long_names)
{
    Schema schema;
    schema.owner = "SCOTT";
    int n = pick(rng, 2, 4);
    for (int i = 0; i < n; ++i) {
        std::string table_name = long_names && chance(rng, 0.5) ? name(rng, fmt::format("T{}_LONG_TABLE_NAME_", i), 20)
                                                                : name(rng, fmt::format("T{}_", i), 6);
        Table t = table(rng, table_name, &schema.tables);
        if (long_names && i == 0) {
            // One column name past both dialect limits.
            std::string from = t.columns().front().name;
            t.rename_column(from, from + "_" + std::string(130, 'X'));
        }
        schema.tables.push_back(std::move(t));
    }

    DataStore store = make_store(schema);
    for (const Table& t : store.schema.tables) {
        int rows = pick(rng, 0, 8);
        // Children need a parent row to point at or a null to hold.
        for (int r = 0; r < rows; ++r) {
            std::vector<std::string> literals;
            std::map<const Constraint*, const Row*> parent_rows;
            for (const Column& c : t.columns()) {
                std::size_t position = 0;
                if (const Constraint* fk = foreign_key_of(t, c.name, position)) {
                    if (!parent_rows.count(fk)) {
                        const auto& candidates = store.data(fk->referenced_table).rows;
                        parent_rows[fk] = candidates.empty() || chance(rng, 0.15)
                                              ? nullptr
                                              : &candidates[static_cast<std::size_t>(
                                                    pick(rng, 0, static_cast<int>(candidates.size()) - 1))];
                    }
                    const Row* parent = parent_rows[fk];
                    if (parent) {
                        const Table& pt = store.schema.table(fk->referenced_table);
                        literals.push_back(to_literal((*parent)[*pt.column_index(fk->referenced_columns[position])]));
                    } else if (t.is_required(c.name)) {
                        literals.clear();
                        break;
                    } else {
                        literals.push_back("NULL");
                    }
                } else if (in_key(t, c.name)) {
                    literals.push_back(distinct_literal(c.type, r));
                } else if (t.is_required(c.name) || chance(rng, 0.75)) {
                    literals.push_back(literal_for(rng, c.type));
                } else {
                    literals.push_back("NULL");
                }
            }
            if (literals.size() == t.columns().size())
                insert_row(store, t.name(), literals);
        }
    }
    return store;
}

namespace {

std::string any_table(Rng& rng, const Schema& s)
{
    if (chance(rng, 0.05))
        return "NO_SUCH_TABLE";
    return one_of(rng, s.tables).name();
}

std::string any_column(Rng& rng, const Schema& s, const std::string& table)
{
    const Table* t = s.find_table(table);
    if (!t || chance(rng, 0.05))
        return "NO_SUCH_COLUMN";
    return one_of(rng, t->columns()).name;
}

bool yes(Rng& rng)
{
    return chance(rng, 0.5);
}

} // namespace

RefactoringRequest request(Rng& rng, const DataStore& store)
{
    const Schema& s = store.schema;
    std::string table = any_table(rng, s);
    const Table* t = s.find_table(table);
    switch (pick(rng, 0, 9)) {
    case 0:
        return DropColumnRequest{table, any_column(rng, s, table), yes(rng), chance(rng, 0.9)};
    case 1:
        return DropTableRequest{table, yes(rng)};
    case 2: {
        MergeColumnsRequest r;
        r.table = table;
        r.backup = yes(rng);
        r.mode = chance(rng, 0.7) ? MergeMode::Concatenate : MergeMode::Merge;
        std::vector<std::string> pool;
        if (t) {
            for (const Column& c : t->columns()) {
                if (r.mode == MergeMode::Merge || c.type.base == TypeFamily::VarcharText || chance(rng, 0.2))
                    pool.push_back(c.name);
            }
        }
        if (pool.size() >= 2 && chance(rng, 0.9)) {
            std::shuffle(pool.begin(), pool.end(), rng);
            if (chance(rng, 0.8))
                std::stable_partition(pool.begin(), pool.end(), [&](const std::string& c) { return !in_key(*t, c); });
            pool.resize(static_cast<std::size_t>(pick(rng, 2, std::min<int>(3, static_cast<int>(pool.size())))));
            r.columns = pool;
        } else {
            int n = pick(rng, 1, 3);
            for (int i = 0; i < n; ++i)
                r.columns.push_back(any_column(rng, s, table));
        }
        if (r.mode == MergeMode::Concatenate) {
            if (chance(rng, 0.9))
                r.delimiter = one_of(rng, std::vector<std::string>{",", " - ", "|", "::", ""});
        } else {
            const std::string& a = r.columns.front();
            const std::string& b = r.columns.back();
            r.update_condition = one_of(rng, std::vector<std::string>{
                                                 a + " = " + b,
                                                 a + " = NVL(" + b + ", " + a + ")",
                                                 a + " = " + b + " WHERE " + b + " IS NOT NULL",
                                                 a + " = " + a,
                                                 "NOPE = 1",
                                                 a + " = ",
                                                 "",
                                             });
        }
        return r;
    }
    case 3: {
        MergeTablesRequest r;
        r.target_table = table;
        r.source_table = any_table(rng, s);
        int n = pick(rng, 1, 2);
        for (int i = 0; i < n; ++i)
            r.columns.push_back(any_column(rng, s, r.source_table));
        return r;
    }
    case 4: {
        MoveColumnRequest r;
        r.source_table = table;
        r.target_table = any_table(rng, s);
        for (int i = 0; i < 3 && same_identifier(r.target_table, table) && s.tables.size() > 1; ++i)
            r.target_table = any_table(rng, s);
        r.column = any_column(rng, s, table);
        r.backup = yes(rng);
        std::string other = any_column(rng, s, r.target_table);
        std::string mine = any_column(rng, s, table);
        // A join on same-typed columns is the usual way to migrate.
        if (const Table* target = s.find_table(r.target_table); t && target) {
            for (const Column& a : t->columns()) {
                for (const Column& b : target->columns()) {
                    if (a.type.base == b.type.base && chance(rng, 0.3)) {
                        mine = a.name;
                        other = b.name;
                    }
                }
            }
        }
        r.condition = one_of(rng, std::vector<std::string>{
                                      "",
                                      table + "." + mine + " = " + r.target_table + "." + other,
                                      table + "." + mine + " = " + r.target_table + "." + other,
                                      "1 = 1",
                                      "1 = 0",
                                      table + "." + mine + " IS NULL",
                                      "((",
                                  });
        return r;
    }
    case 5: {
        RenameColumnRequest r{table, any_column(rng, s, table), {}};
        r.new_name = one_of(rng, std::vector<std::string>{
                                     name(rng, "RN_", 6),
                                     "1BAD",
                                     any_column(rng, s, table),
                                     std::string(35, 'Q'),
                                     "\"Mixed Case\"",
                                 });
        return r;
    }
    case 6: {
        DropConstraintRequest r{table, "NO_SUCH_CONSTRAINT", yes(rng)};
        if (t && !t->constraints().empty() && chance(rng, 0.9))
            r.constraint = one_of(rng, t->constraints()).name;
        return r;
    }
    case 7: {
        IntroduceDefaultValueRequest r{table, any_column(rng, s, table), "1"};
        if (const Column* c = t ? t->find_column(r.column) : nullptr)
            r.literal = any_literal(rng, c->type);
        return r;
    }
    case 8: {
        MakeColumnNonNullableRequest r{table, any_column(rng, s, table), {}};
        if (const Column* c = t ? t->find_column(r.column) : nullptr; c && chance(rng, 0.6))
            r.fill_value = any_literal(rng, c->type);
        return r;
    }
    default: {
        IntroduceNewColumnRequest r;
        r.table = table;
        r.column = chance(rng, 0.85) ? name(rng, "NEW_", 6) : any_column(rng, s, table);
        r.type = data_type(rng);
        if (chance(rng, 0.05))
            r.type = DataType{TypeFamily::VarcharText, {}, {}, {}};
        r.nullable = chance(rng, 0.6);
        if (chance(rng, 0.5))
            r.default_value = any_literal(rng, r.type);
        return r;
    }
    }
}

} // namespace gen
