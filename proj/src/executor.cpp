// SPDX-License-Identifier: Apache-2.0

#include "refactordb/executor.hpp"

#include "refactordb/errors.hpp"
#include "refactordb/expression.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace refactordb {

namespace {

Value coerce(Value v, const DataType& type)
{
    if (is_null(v))
        return v;
    switch (type.base) {
    case TypeFamily::VarcharText:
        if (!std::holds_alternative<std::string>(v))
            return display(v);
        return v;
    case TypeFamily::FixedNumber: {
        std::optional<Decimal> d;
        if (auto* s = std::get_if<std::string>(&v))
            d = Decimal::parse(*s);
        else if (auto* n = std::get_if<Decimal>(&v))
            d = *n;
        if (!d)
            return v;
        if (type.scale && d->fraction_digits() > *type.scale) {
            auto rounded = Decimal::parse(fmt::format("{:.{}f}", d->to_long_double(), *type.scale));
            if (rounded)
                d = *rounded;
        }
        return *d;
    }
    case TypeFamily::Date:
        if (auto* s = std::get_if<std::string>(&v)) {
            if (auto d = DateTime::parse(*s))
                return *d;
        }
        return v;
    }
    return v;
}

std::size_t column_at(const Table& table, std::string_view column)
{
    auto i = table.column_index(column);
    if (!i)
        throw ColumnNotFound(table.name(), std::string(column));
    return *i;
}

Constraint column_constraint(ConstraintKind kind, const Table& table, const std::string& column,
                             const std::string& name)
{
    Constraint c;
    c.kind = kind;
    c.columns = {column};
    c.level = ConstraintLevel::ColumnLevel;
    c.name = name.empty() ? table.next_synthetic_name(kind) : name;
    c.system_named = name.empty();
    return c;
}

void drop_column_constraints(Table& table, std::string_view column, ConstraintKind kind, std::string_view only = {})
{
    std::vector<std::string> names;
    for (const Constraint& c : table.constraints()) {
        if (c.kind == kind && c.mentions(column) && (only.empty() || same_identifier(c.name, only)))
            names.push_back(c.name);
    }
    for (const auto& n : names)
        table.drop_constraint(n);
}

void copy_table(DataStore& store, const Table& source, const std::string& backup)
{
    if (store.schema.find_table(backup))
        throw NameCollision(backup);
    Table copy(backup, source.owner());
    for (const Column& c : source.columns())
        copy.add_column(c.name, c.type);
    for (const Column& c : source.columns()) {
        if (!c.nullable)
            copy.add_constraint(column_constraint(ConstraintKind::NotNull, copy, c.name, {}));
    }
    TableData rows = store.data(source.name());
    store.schema.tables.push_back(std::move(copy));
    store.tables[to_upper(backup)] = std::move(rows);
}

class StepRunner {
public:
    StepRunner(DataStore& store, std::vector<VersionEntry>& entries) : s_(store), entries_(entries) {}

    void operator()(const BackupStep& step) { copy_table(s_, s_.schema.table(step.table), step.backup_table); }

    void operator()(const AddColumnStep& step)
    {
        Table& t = s_.schema.table(step.table);
        if (t.find_column(step.column))
            throw NameCollision(t.name() + "." + step.column);
        t.add_column(step.column, step.type);
        Value fill;
        for (const Constraint& c : step.column_constraints) {
            Constraint copy = c;
            copy.columns = {step.column};
            if (c.kind == ConstraintKind::Default) {
                auto v = literal_value(c.default_literal, step.type);
                if (!v)
                    throw Error("default " + c.default_literal + " does not fit " + step.type.describe());
                fill = coerce(*v, step.type);
            }
            t.add_constraint(std::move(copy));
        }
        for (Row& row : s_.data(step.table).rows)
            row.push_back(fill);
    }

    void operator()(const DropColumnStep& step)
    {
        Table& t = s_.schema.table(step.table);
        std::size_t at = column_at(t, step.column);
        std::vector<std::string> implicit;
        for (const Constraint& c : t.constraints()) {
            if (!c.mentions(step.column))
                continue;
            if (c.columns.size() > 1)
                throw Error(fmt::format("column {} is part of multi-column constraint {}", step.column, c.name));
            implicit.push_back(c.name);
        }
        for (const auto& n : implicit)
            t.drop_constraint(n);
        t.drop_column(step.column);
        for (Row& row : s_.data(step.table).rows)
            row.erase(row.begin() + static_cast<std::ptrdiff_t>(at));
    }

    void operator()(const ModifyColumnStep& step)
    {
        Table& t = s_.schema.table(step.table);
        const Column& column = t.columns()[column_at(t, step.column)];
        std::string name = column.name;
        switch (step.change) {
        case ColumnChange::SetType:
            t.set_column_type(name, step.type);
            break;
        case ColumnChange::SetDefault: {
            if (!literal_value(step.literal, column.type))
                throw Error("default " + step.literal + " does not fit " + column.type.describe());
            drop_column_constraints(t, name, ConstraintKind::Default);
            Constraint c = column_constraint(ConstraintKind::Default, t, name, step.constraint_name);
            c.default_literal = step.literal;
            t.add_constraint(std::move(c));
            break;
        }
        case ColumnChange::DropDefault:
            drop_column_constraints(t, name, ConstraintKind::Default, step.constraint_name);
            break;
        case ColumnChange::SetNotNull:
            t.add_constraint(column_constraint(ConstraintKind::NotNull, t, name, step.constraint_name));
            break;
        case ColumnChange::DropNotNull:
            drop_column_constraints(t, name, ConstraintKind::NotNull, step.constraint_name);
            break;
        }
    }

    void operator()(const RenameColumnStep& step)
    {
        Table& t = s_.schema.table(step.table);
        column_at(t, step.from);
        if (t.find_column(step.to))
            throw NameCollision(t.name() + "." + step.to);
        std::string old_name = t.find_column(step.from)->name;
        t.rename_column(old_name, step.to);
        for (Table& other : s_.schema.tables) {
            if (&other == &t)
                continue;
            std::vector<Constraint> updates;
            for (const Constraint& c : other.constraints()) {
                if (c.kind != ConstraintKind::ForeignKey || !same_identifier(c.referenced_table, t.name()))
                    continue;
                Constraint renamed = c;
                for (auto& col : renamed.referenced_columns) {
                    if (same_identifier(col, old_name))
                        col = step.to;
                }
                if (!(renamed == c))
                    updates.push_back(std::move(renamed));
            }
            for (auto& c : updates) {
                std::string n = c.name;
                other.replace_constraint(n, std::move(c));
            }
        }
    }

    void operator()(const DropTableStep& step)
    {
        const Table& t = s_.schema.table(step.table);
        std::string key = to_upper(t.name());
        std::erase_if(s_.schema.tables, [&](const Table& x) { return same_identifier(x.name(), key); });
        s_.tables.erase(key);
    }

    void operator()(const AddConstraintStep& step)
    {
        Table& t = s_.schema.table(step.table);
        for (const auto& c : step.constraint.columns)
            column_at(t, c);
        t.add_constraint(step.constraint);
    }

    void operator()(const DropConstraintStep& step)
    {
        Table& t = s_.schema.table(step.table);
        if (!t.find_constraint(step.constraint.name))
            throw ConstraintNotFound(t.name(), step.constraint.name);
        t.drop_constraint(step.constraint.name);
    }

    void operator()(const UpdateDataStep& step)
    {
        const Table& t = s_.schema.table(step.table);
        auto& rows = s_.data(step.table).rows;
        if (auto* concat = std::get_if<ConcatenateUpdate>(&step.update)) {
            std::size_t target = column_at(t, concat->target);
            std::vector<std::size_t> sources;
            for (const auto& c : concat->sources)
                sources.push_back(column_at(t, c));
            for (Row& row : rows) {
                std::string joined;
                for (std::size_t i = 0; i < sources.size(); ++i) {
                    if (i)
                        joined += concat->delimiter;
                    if (!is_null(row[sources[i]]))
                        joined += display(row[sources[i]]);
                }
                row[target] = coerce(joined, t.columns()[target].type);
            }
        } else if (auto* fill = std::get_if<FillNullsUpdate>(&step.update)) {
            std::size_t at = column_at(t, fill->column);
            auto v = literal_value(fill->literal, t.columns()[at].type);
            if (!v)
                throw Error("fill value " + fill->literal + " does not fit " + t.columns()[at].type.describe());
            for (Row& row : rows) {
                if (is_null(row[at]))
                    row[at] = coerce(*v, t.columns()[at].type);
            }
        } else {
            auto payload = parse_update_payload(std::get<ExpressionUpdate>(step.update).payload);
            std::vector<std::size_t> targets;
            for (const auto& a : payload.assignments)
                targets.push_back(column_at(t, a.column));
            for (Row& row : rows) {
                RowResolver resolve = [&](const ColumnRef& ref) -> std::optional<Value> {
                    if (!ref.table.empty() && !same_identifier(ref.table, t.name()))
                        return std::nullopt;
                    auto i = t.column_index(ref.column);
                    if (!i)
                        return std::nullopt;
                    return row[*i];
                };
                if (payload.where && payload.where->test(resolve) != true)
                    continue;
                std::vector<Value> values;
                for (const auto& a : payload.assignments)
                    values.push_back(a.value.evaluate(resolve));
                for (std::size_t i = 0; i < targets.size(); ++i)
                    row[targets[i]] = coerce(values[i], t.columns()[targets[i]].type);
            }
        }
    }

    void operator()(const CopyDataStep& step)
    {
        const Table& source = s_.schema.table(step.source_table);
        const Table& target = s_.schema.table(step.target_table);
        std::size_t from = column_at(source, step.source_column);
        std::size_t to = column_at(target, step.target_column);
        Expression condition = parse_expression(step.condition);
        const auto& source_rows = s_.data(source.name()).rows;
        auto& target_rows = s_.data(target.name()).rows;
        for (std::size_t r = 0; r < target_rows.size(); ++r) {
            Row& trow = target_rows[r];
            std::vector<Value> found;
            for (const Row& srow : source_rows) {
                // Bare names resolve to the subquery's table first, as in SQL.
                RowResolver resolve = [&](const ColumnRef& ref) -> std::optional<Value> {
                    bool any = ref.table.empty();
                    if (any || same_identifier(ref.table, source.name())) {
                        if (auto i = source.column_index(ref.column))
                            return srow[*i];
                    }
                    if (any || same_identifier(ref.table, target.name())) {
                        if (auto i = target.column_index(ref.column))
                            return trow[*i];
                    }
                    return std::nullopt;
                };
                if (condition.test(resolve) != true)
                    continue;
                const Value& v = srow[from];
                bool seen = std::any_of(found.begin(), found.end(),
                                        [&](const Value& x) { return compare_values(x, v) == 0; });
                if (!seen)
                    found.push_back(v);
            }
            if (found.size() > 1)
                throw Error(fmt::format("migration condition matches {} distinct values for {} row {}", found.size(),
                                        target.name(), r + 1));
            trow[to] = found.empty() ? Value{} : coerce(found.front(), target.columns()[to].type);
        }
    }

    void operator()(const VersionRecordStep& step)
    {
        const VersionEntry& e = step.entry;
        check_entry(e);
        entries_.push_back(e);
        if (!s_.schema.find_table(kLogTableName))
            return;
        auto text = [](const std::optional<std::string>& v) { return v ? Value(*v) : Value{}; };
        s_.data(kLogTableName)
            .rows.push_back({Value(e.owner), Value(e.constraint_name), Value(std::string(1, e.constraint_type)),
                             Value(e.table_name), text(e.r_owner), text(e.r_constraint_name),
                             Value(DateTime{e.new_modification_date}), text(e.new_constraint_name),
                             text(e.new_table_name)});
    }

private:
    DataStore& s_;
    std::vector<VersionEntry>& entries_;
};

std::string script_header(const Plan& plan)
{
    return fmt::format("-- refactoring: {} @ {}\n", to_string(kind_of(plan.request)), iso8601(plan.timestamp));
}

} // namespace

ExecutionResult apply_plan(const Plan& plan, const DataStore& store, const Dialect& dialect, const ApplyOptions& options)
{
    ExecutionResult result;
    result.new_store = store;
    StepRunner runner(result.new_store, result.version_entries);
    for (std::size_t i = 0; i < plan.steps.size(); ++i) {
        try {
            if (options.fail_at_step == i)
                throw Error("injected failure");
            std::visit(runner, plan.steps[i].op);
            auto problems = conformance_problems(result.new_store);
            if (!problems.empty())
                throw Error(problems.front());
        } catch (const std::exception& e) {
            throw ExecutionAborted(StepFailure(i, e.what()));
        }
        ++result.applied_steps;
    }
    result.script = script_only(plan, dialect);
    return result;
}

std::string script_only(const Plan& plan, const Dialect& dialect)
{
    if (plan.steps.empty())
        return {};
    std::string out = script_header(plan);
    for (const Step& step : plan.steps)
        out += dialect.emit(step) + ";\n";
    return out;
}

std::pair<DataStore, std::string> create_backup(const DataStore& store, std::string_view table, Timestamp ts,
                                                std::size_t max_length)
{
    const Table& source = store.schema.table(table);
    std::string name = backup_name(source.name(), ts, max_length);
    DataStore copy = store;
    copy_table(copy, source, name);
    return {std::move(copy), name};
}

} // namespace refactordb
