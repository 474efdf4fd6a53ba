// SPDX-License-Identifier: Apache-2.0

#include "refactordb/refactorings.hpp"

#include "refactordb/dialect.hpp"
#include "refactordb/executor.hpp"
#include "refactordb/expression.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <exception>
#include <set>

namespace refactordb {

namespace {

constexpr std::size_t kMaxTextLength = 4000;

std::string join(const std::vector<std::string>& items)
{
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i)
        out += (i ? ", " : "") + items[i];
    return out;
}

bool has_column(const std::vector<std::string>& list, std::string_view column)
{
    return std::any_of(list.begin(), list.end(), [&](const std::string& c) { return same_identifier(c, column); });
}

bool is_key_member(const Table& table, std::string_view column)
{
    for (const Constraint& c : table.constraints()) {
        if ((c.kind == ConstraintKind::PrimaryKey || c.kind == ConstraintKind::Unique ||
             c.kind == ConstraintKind::ForeignKey) &&
            c.mentions(column))
            return true;
    }
    return false;
}

/// Accumulates guards and steps for one request.
class Draft {
public:
    Draft(const Schema& schema, const PlanContext& context, const DataStore* data)
        : schema_(schema), context_(context), data_(data)
    {
        owner_ = !context.owner.empty() ? context.owner : schema.owner;
    }

    const Schema& schema() const { return schema_; }
    const DataStore* data() const { return data_; }
    Timestamp timestamp() const { return context_.timestamp; }
    bool missing() const { return static_cast<bool>(missing_); }

    void guard(std::string name, bool passed, std::string detail = {})
    {
        guards_.push_back({std::move(name), passed, std::move(detail)});
    }

    const Table* table(std::string_view name)
    {
        const Table* t = schema_.find_table(name);
        if (!t)
            referent_missing("table exists", std::string(name), TableNotFound(std::string(name)));
        return t;
    }

    const Column* column(const Table* table, std::string_view name)
    {
        if (!table)
            return nullptr;
        const Column* c = table->find_column(name);
        if (!c)
            referent_missing("column exists", table->name() + "." + std::string(name),
                             ColumnNotFound(table->name(), std::string(name)));
        return c;
    }

    const Constraint* constraint(const Table* table, std::string_view name)
    {
        if (!table)
            return nullptr;
        const Constraint* c = table->find_constraint(name);
        if (!c)
            referent_missing("constraint exists", std::string(name),
                             ConstraintNotFound(table->name(), std::string(name)));
        return c;
    }

    void step(StepOperation op) { steps_.push_back(Step{std::move(op)}); }

    void backup(const Table& table, std::set<std::string>& taken)
    {
        std::string name = backup_name(table.name(), timestamp(), kPortableIdentifierLength);
        bool fresh = !schema_.find_table(name) && taken.insert(to_upper(name)).second;
        guard("backup name free", fresh, fresh ? name : name + " already exists");
        step(BackupStep{table.name(), name});
    }

    /// VersionRecord for a constraint that is removed.
    void record_drop(const Constraint& c, const std::string& table)
    {
        if (auto entry = base_entry(c, table))
            step(VersionRecordStep{*entry});
    }

    /// VersionRecord for a constraint that is created or redefined.
    void record_new(const Constraint& c, const std::string& table)
    {
        if (auto entry = base_entry(c, table)) {
            entry->new_constraint_name = c.name;
            entry->new_table_name = table;
            step(VersionRecordStep{*entry});
        }
    }

    /// VersionRecords for the single-column constraints a DropColumn removes.
    void record_column_drop(const Table& table, std::string_view column)
    {
        for (const Constraint& c : table.constraints()) {
            if (c.mentions(column) && c.columns.size() == 1)
                record_drop(c, table.name());
        }
    }

    Plan finish(RefactoringRequest request, bool throw_on_failure)
    {
        Plan plan;
        plan.request = std::move(request);
        plan.timestamp = timestamp();
        plan.steps = std::move(steps_);
        bool all_passed = std::all_of(guards_.begin(), guards_.end(), [](const GuardResult& g) { return g.passed; });
        if (all_passed && !missing_ && data_) {
            try {
                apply_plan(plan, *data_, oraclelike());
                guard("applies cleanly to supplied data", true);
            } catch (const StepFailure& e) {
                guard("applies cleanly to supplied data", false,
                      fmt::format("step {} ({}): {}", e.step_index() + 1,
                                  to_string(plan.steps[e.step_index()].kind()), e.cause()));
            }
        }
        plan.guards = guards_;
        if (throw_on_failure) {
            if (missing_)
                std::rethrow_exception(missing_);
            std::vector<GuardResult> failed;
            for (const auto& g : guards_) {
                if (!g.passed)
                    failed.push_back(g);
            }
            if (!failed.empty())
                throw GuardFailure(std::move(failed));
        }
        return plan;
    }

private:
    template <class E>
    void referent_missing(std::string guard_name, std::string what, E error)
    {
        guard(std::move(guard_name), false, what + " not found");
        if (!missing_)
            missing_ = std::make_exception_ptr(std::move(error));
    }

    std::optional<VersionEntry> base_entry(const Constraint& c, const std::string& table) const
    {
        auto code = constraint_type_code(c.kind);
        if (!code)
            return std::nullopt;
        VersionEntry e;
        e.owner = owner_;
        e.constraint_name = c.name;
        e.constraint_type = *code;
        e.table_name = table;
        e.new_modification_date = timestamp();
        if (c.kind == ConstraintKind::ForeignKey) {
            e.r_owner = c.referenced_owner.value_or(owner_);
            const Constraint* key = referenced_key(schema_, c);
            e.r_constraint_name = key ? key->name : std::string();
        }
        return e;
    }

    const Schema& schema_;
    const PlanContext& context_;
    const DataStore* data_;
    std::string owner_;
    std::vector<GuardResult> guards_;
    std::vector<Step> steps_;
    std::exception_ptr missing_;
};

/// Guard that dropping `column` strands no foreign key and splits no
/// multi-column constraint.
void droppable_column_guards(Draft& d, const Table& table, const std::string& column, bool drops_shared_constraints)
{
    std::vector<std::string> inbound;
    for (const Constraint& c : table.constraints()) {
        if ((c.kind == ConstraintKind::PrimaryKey || c.kind == ConstraintKind::Unique) && c.mentions(column)) {
            for (const auto& fk : inbound_foreign_keys(d.schema(), table.name(), c))
                inbound.push_back(fmt::format("{} on {} depends on {}", fk.constraint.name, fk.owning_table, c.name));
        }
    }
    d.guard("no inbound foreign key", inbound.empty(), join(inbound));
    if (!drops_shared_constraints) {
        std::vector<std::string> shared;
        for (const Constraint& c : table.constraints()) {
            if (c.mentions(column) && c.columns.size() > 1)
                shared.push_back(c.name);
        }
        d.guard("not part of a multi-column constraint", shared.empty(),
                shared.empty() ? std::string() : column + " is part of " + join(shared));
    }
    d.guard("not the only column", table.columns().size() > 1,
            table.columns().size() > 1 ? std::string() : "a table must keep at least one column");
}

std::optional<std::string> new_identifier(Draft& d, const std::string& text)
{
    auto name = canonical_identifier(text);
    d.guard("legal identifier", name.has_value(), name ? std::string() : text + " is not a legal identifier");
    if (!name)
        return std::nullopt;
    bool fits = enforce_identifier(*name, kPortableIdentifierLength) == *name;
    d.guard("identifier within length limit", fits,
            fits ? std::string() : fmt::format("{} exceeds {} characters", *name, kPortableIdentifierLength));
    return name;
}

//===----------------------------------------------------------------------===//
// Planners
//===----------------------------------------------------------------------===//

void draft(Draft& d, const DropColumnRequest& r)
{
    const Table* t = d.table(r.table);
    const Column* c = d.column(t, r.column);
    d.guard("user confirmed", r.confirmed, r.confirmed ? std::string() : "drop not confirmed");
    if (!c)
        return;
    droppable_column_guards(d, *t, c->name, true);
    std::set<std::string> taken;
    if (r.backup)
        d.backup(*t, taken);
    for (const Constraint& k : t->constraints()) {
        if (k.mentions(c->name) && k.columns.size() > 1) {
            d.step(DropConstraintStep{t->name(), k});
            d.record_drop(k, t->name());
        }
    }
    d.step(DropColumnStep{t->name(), c->name});
    d.record_column_drop(*t, c->name);
}

void draft(Draft& d, const DropTableRequest& r)
{
    const Table* t = d.table(r.table);
    if (!t)
        return;
    std::vector<std::string> inbound;
    for (const Constraint& k : t->constraints()) {
        if (k.kind != ConstraintKind::PrimaryKey && k.kind != ConstraintKind::Unique)
            continue;
        for (const auto& fk : inbound_foreign_keys(d.schema(), t->name(), k)) {
            if (!same_identifier(fk.owning_table, t->name()))
                inbound.push_back(fmt::format("{} on {} depends on {}", fk.constraint.name, fk.owning_table, k.name));
        }
    }
    d.guard("no inbound foreign key", inbound.empty(), join(inbound));
    std::set<std::string> taken;
    if (r.backup)
        d.backup(*t, taken);
    d.step(DropTableStep{t->name()});
    for (const Constraint& k : t->constraints())
        d.record_drop(k, t->name());
}

void draft(Draft& d, const MergeColumnsRequest& r)
{
    const Table* t = d.table(r.table);
    std::vector<const Column*> sources;
    for (const auto& name : r.columns)
        sources.push_back(d.column(t, name));
    d.guard("at least two columns", r.columns.size() >= 2,
            r.columns.size() >= 2 ? std::string() : "merging needs two or more columns");
    std::set<std::string> distinct;
    for (const auto& name : r.columns)
        distinct.insert(to_upper(name));
    d.guard("duplicate source column", distinct.size() == r.columns.size(),
            distinct.size() == r.columns.size() ? std::string() : "a column is listed twice");
    if (!t || d.missing() || sources.empty())
        return;
    const Column& target = *sources.front();

    if (r.mode == MergeMode::Concatenate) {
        bool has_delimiter = r.delimiter && !r.delimiter->empty();
        d.guard("delimiter required", has_delimiter, has_delimiter ? std::string() : "concatenation needs a delimiter");
        std::vector<std::string> non_text;
        for (const Column* c : sources) {
            if (c->type.base != TypeFamily::VarcharText)
                non_text.push_back(c->name);
        }
        d.guard("text-typed columns", non_text.empty(),
                non_text.empty() ? std::string() : "not text: " + join(non_text));
        bool key = is_key_member(*t, target.name);
        d.guard("target not a key column", !key,
                key ? target.name + " belongs to a primary, unique or foreign key" : std::string());
        std::size_t widened = 0;
        for (const Column* c : sources)
            widened += static_cast<std::size_t>(c->type.length.value_or(0));
        if (has_delimiter)
            widened += (sources.size() - 1) * text_length(*r.delimiter);
        d.guard("widened length within limit", widened <= kMaxTextLength,
                fmt::format("{} of {} characters", widened, kMaxTextLength));
        if (!non_text.empty())
            return;

        std::set<std::string> taken;
        if (r.backup)
            d.backup(*t, taken);
        if (widened > static_cast<std::size_t>(target.type.length.value_or(0)))
            d.step(ModifyColumnStep{t->name(), target.name, ColumnChange::SetType,
                                    DataType::varchar(static_cast<int>(widened)), {}, {}});
        std::vector<std::string> names;
        for (const Column* c : sources)
            names.push_back(c->name);
        d.step(UpdateDataStep{t->name(), ConcatenateUpdate{target.name, names, r.delimiter.value_or("")}});
    } else {
        bool has_condition = r.update_condition && !r.update_condition->empty();
        d.guard("update condition required", has_condition,
                has_condition ? std::string() : "merging needs the UPDATE payload");
        if (!has_condition)
            return;
        std::optional<UpdatePayload> payload;
        try {
            payload = parse_update_payload(*r.update_condition);
            d.guard("update condition parses", true);
        } catch (const SyntaxError& e) {
            d.guard("update condition parses", false, e.what());
            return;
        }
        std::vector<std::string> unknown;
        std::vector<std::string> other_targets;
        auto check = [&](const ColumnRef& ref) {
            bool ok = (ref.table.empty() || same_identifier(ref.table, t->name())) && t->find_column(ref.column);
            if (!ok)
                unknown.push_back(ref.table.empty() ? ref.column : ref.table + "." + ref.column);
        };
        for (const auto& a : payload->assignments) {
            check({{}, a.column});
            if (!same_identifier(a.column, target.name))
                other_targets.push_back(a.column);
            for (const auto& ref : a.value.column_refs())
                check(ref);
        }
        if (payload->where) {
            for (const auto& ref : payload->where->column_refs())
                check(ref);
        }
        d.guard("update condition references existing columns", unknown.empty(), join(unknown));
        d.guard("update condition assigns only the target column", other_targets.empty(),
                other_targets.empty() ? std::string() : "assigns " + join(other_targets));
        std::set<std::string> taken;
        if (r.backup)
            d.backup(*t, taken);
        d.step(UpdateDataStep{t->name(), ExpressionUpdate{*r.update_condition}});
    }

    std::set<std::string> dropped;
    for (std::size_t i = 1; i < sources.size(); ++i) {
        const Column& c = *sources[i];
        if (same_identifier(c.name, target.name) || !dropped.insert(to_upper(c.name)).second)
            continue;
        droppable_column_guards(d, *t, c.name, false);
        d.step(DropColumnStep{t->name(), c.name});
        d.record_column_drop(*t, c.name);
    }
}

void draft(Draft& d, const MergeTablesRequest& r)
{
    const Table* target = d.table(r.target_table);
    const Table* source = d.table(r.source_table);
    std::vector<const Column*> moved;
    for (const auto& name : r.columns)
        moved.push_back(d.column(source, name));
    if (!target || !source || d.missing())
        return;
    bool same = same_identifier(target->name(), source->name());
    d.guard("distinct tables", !same, same ? "both tables are " + target->name() : std::string());
    std::set<std::string> distinct;
    std::vector<std::string> present;
    for (const Column* c : moved) {
        distinct.insert(to_upper(c->name));
        if (target->find_column(c->name))
            present.push_back(c->name);
    }
    d.guard("duplicate column", distinct.size() == moved.size(),
            distinct.size() == moved.size() ? std::string() : "a column is listed twice");
    d.guard("column absent in target", present.empty(),
            present.empty() ? std::string() : join(present) + " already in " + target->name());

    std::vector<std::string> moved_names;
    for (const Column* c : moved)
        moved_names.push_back(c->name);

    // Column constraints travel inside AddColumn; unnamed ones get fresh
    // synthetic names on the target, named ones get a timestamped name.
    Table shadow = *target;
    std::set<std::string> new_names;
    std::vector<std::string> clashes;
    auto rename = [&](const Constraint& k) {
        Constraint copy = k;
        if (k.system_named) {
            copy.name = shadow.next_synthetic_name(k.kind);
        } else {
            copy.name = versioned_constraint_name(k.name, d.timestamp(), kPortableIdentifierLength);
        }
        copy.referenced_owner = k.referenced_owner;
        bool free = !new_names.count(to_upper(copy.name));
        for (const Table& t : d.schema().tables) {
            if (t.find_constraint(copy.name))
                free = false;
        }
        if (!free)
            clashes.push_back(copy.name);
        new_names.insert(to_upper(copy.name));
        shadow.add_constraint(copy);
        return copy;
    };

    std::vector<std::pair<const Column*, std::vector<Constraint>>> columns;
    for (const Column* c : moved) {
        std::vector<Constraint> inline_constraints;
        for (const Constraint& k : source->constraints()) {
            if ((k.kind == ConstraintKind::NotNull || k.kind == ConstraintKind::Default) && k.mentions(c->name))
                inline_constraints.push_back(rename(k));
        }
        columns.emplace_back(c, std::move(inline_constraints));
    }

    std::vector<Constraint> imported;
    std::vector<std::string> spanning;
    bool pk_conflict = false;
    for (const Constraint& k : source->constraints()) {
        if (k.kind == ConstraintKind::NotNull || k.kind == ConstraintKind::Default)
            continue;
        bool touches = std::any_of(moved_names.begin(), moved_names.end(),
                                   [&](const std::string& m) { return k.mentions(m); });
        if (!touches)
            continue;
        bool contained = std::all_of(k.columns.begin(), k.columns.end(),
                                     [&](const std::string& col) { return has_column(moved_names, col); });
        if (!contained) {
            spanning.push_back(k.name);
            continue;
        }
        if (k.kind == ConstraintKind::PrimaryKey && target->primary_key())
            pk_conflict = true;
        imported.push_back(rename(k));
    }
    d.guard("constraints importable", spanning.empty(),
            spanning.empty() ? std::string() : join(spanning) + " spans columns that are not moved");
    d.guard("target already has primary key", !pk_conflict,
            pk_conflict ? target->name() + " already has " + target->primary_key()->name : std::string());
    d.guard("constraint names free", clashes.empty(), join(clashes));

    for (const auto& [column, inline_constraints] : columns) {
        d.step(AddColumnStep{target->name(), column->name, column->type, inline_constraints});
        for (const Constraint& k : inline_constraints)
            d.record_new(k, target->name());
    }
    for (const Constraint& k : imported) {
        d.step(AddConstraintStep{target->name(), k});
        d.record_new(k, target->name());
    }
}

void draft(Draft& d, const MoveColumnRequest& r)
{
    const Table* source = d.table(r.source_table);
    const Table* target = d.table(r.target_table);
    const Column* c = d.column(source, r.column);
    bool has_condition = !r.condition.empty();
    d.guard("migration condition required", has_condition,
            has_condition ? std::string() : "moving needs a condition joining the tables");
    if (!source || !target || !c)
        return;
    bool same = same_identifier(source->name(), target->name());
    d.guard("distinct tables", !same, same ? "both tables are " + source->name() : std::string());
    bool present = target->find_column(c->name) != nullptr;
    d.guard("column absent in target", !present, present ? c->name + " already in " + target->name() : std::string());
    bool in_pk = source->primary_key() && source->primary_key()->mentions(c->name);
    d.guard("column not in primary key", !in_pk, in_pk ? c->name + " belongs to " + source->primary_key()->name : "");
    droppable_column_guards(d, *source, c->name, false);
    if (has_condition) {
        try {
            Expression condition = parse_expression(r.condition);
            d.guard("migration condition parses", condition.is_predicate(),
                    condition.is_predicate() ? std::string() : "the condition is not a predicate");
            std::vector<std::string> unknown;
            for (const auto& ref : condition.column_refs()) {
                bool ok;
                if (ref.table.empty())
                    ok = source->find_column(ref.column) || target->find_column(ref.column) ||
                         same_identifier(ref.column, c->name);
                else if (same_identifier(ref.table, source->name()))
                    ok = source->find_column(ref.column) != nullptr;
                else if (same_identifier(ref.table, target->name()))
                    ok = target->find_column(ref.column) || same_identifier(ref.column, c->name);
                else
                    ok = false;
                if (!ok)
                    unknown.push_back(ref.table.empty() ? ref.column : ref.table + "." + ref.column);
            }
            d.guard("migration condition references existing columns", unknown.empty(), join(unknown));
        } catch (const SyntaxError& e) {
            d.guard("migration condition parses", false, e.what());
        }
    }
    std::set<std::string> taken;
    d.step(AddColumnStep{target->name(), c->name, c->type, {}});
    if (r.backup)
        d.backup(*target, taken);
    d.step(CopyDataStep{source->name(), c->name, target->name(), c->name, r.condition});
    if (r.backup)
        d.backup(*source, taken);
    d.step(DropColumnStep{source->name(), c->name});
    d.record_column_drop(*source, c->name);
}

void draft(Draft& d, const RenameColumnRequest& r)
{
    const Table* t = d.table(r.table);
    const Column* c = d.column(t, r.old_name);
    auto name = new_identifier(d, r.new_name);
    if (!c || !name)
        return;
    bool free = !t->find_column(*name);
    d.guard("new name free", free, free ? std::string() : *name + " already exists in " + t->name());
    d.step(RenameColumnStep{t->name(), c->name, *name});
    for (const Constraint& k : t->constraints()) {
        if (k.mentions(c->name))
            d.record_new(k, t->name());
    }
    for (const Table& other : d.schema().tables) {
        if (&other == t)
            continue;
        for (const Constraint& k : other.constraints()) {
            if (k.kind == ConstraintKind::ForeignKey && same_identifier(k.referenced_table, t->name()) &&
                has_column(k.referenced_columns, c->name))
                d.record_new(k, other.name());
        }
    }
}

void draft(Draft& d, const DropConstraintRequest& r)
{
    const Table* t = d.table(r.table);
    const Constraint* k = d.constraint(t, r.constraint);
    if (!k)
        return;
    std::vector<std::string> dependents;
    if (k->kind == ConstraintKind::PrimaryKey || k->kind == ConstraintKind::Unique) {
        for (const auto& fk : inbound_foreign_keys(d.schema(), t->name(), *k))
            dependents.push_back(fmt::format("{} on {}", fk.constraint.name, fk.owning_table));
    }
    d.guard("no dependent foreign key", dependents.empty(),
            dependents.empty() ? std::string() : "depended on by " + join(dependents));
    std::set<std::string> taken;
    if (r.backup)
        d.backup(*t, taken);
    d.step(DropConstraintStep{t->name(), *k});
    d.record_drop(*k, t->name());
}

void draft(Draft& d, const IntroduceDefaultValueRequest& r)
{
    const Table* t = d.table(r.table);
    const Column* c = d.column(t, r.column);
    if (!c)
        return;
    auto problem = literal_problem(r.literal, c->type);
    d.guard("literal fits column type", problem.empty(), problem);
    if (!problem.empty())
        return;
    std::string name;
    for (const Constraint& k : t->constraints()) {
        if (k.kind == ConstraintKind::Default && k.mentions(c->name))
            name = k.name;
    }
    if (name.empty())
        name = t->next_synthetic_name(ConstraintKind::Default);
    d.step(ModifyColumnStep{t->name(), c->name, ColumnChange::SetDefault, {}, r.literal, name});
}

void draft(Draft& d, const MakeColumnNonNullableRequest& r)
{
    const Table* t = d.table(r.table);
    const Column* c = d.column(t, r.column);
    if (!c)
        return;
    if (!c->nullable) {
        d.guard("already non-nullable", true, "warning: " + c->name + " is already non-nullable; nothing to do");
        return;
    }
    if (r.fill_value) {
        auto problem = literal_problem(*r.fill_value, c->type);
        d.guard("fill value fits column type", problem.empty(), problem);
    }
    std::size_t nulls = 0;
    if (d.data()) {
        if (const auto it = d.data()->tables.find(to_upper(t->name())); it != d.data()->tables.end()) {
            std::size_t at = *t->column_index(c->name);
            for (const Row& row : it->second.rows) {
                if (at < row.size() && is_null(row[at]))
                    ++nulls;
            }
        }
        d.guard("null rows present: " + std::to_string(nulls), nulls == 0 || r.fill_value.has_value(),
                nulls && !r.fill_value ? "supply a fill value" : std::string());
    }
    if (r.fill_value && (!d.data() || nulls > 0)) {
        std::set<std::string> taken;
        d.backup(*t, taken);
        d.step(UpdateDataStep{t->name(), FillNullsUpdate{c->name, *r.fill_value}});
    }
    Constraint nn;
    nn.kind = ConstraintKind::NotNull;
    nn.name = t->next_synthetic_name(ConstraintKind::NotNull);
    nn.system_named = true;
    nn.columns = {c->name};
    nn.level = ConstraintLevel::ColumnLevel;
    d.step(ModifyColumnStep{t->name(), c->name, ColumnChange::SetNotNull, {}, {}, nn.name});
    d.record_new(nn, t->name());
}

void draft(Draft& d, const IntroduceNewColumnRequest& r)
{
    const Table* t = d.table(r.table);
    auto name = new_identifier(d, r.column);
    if (!t || !name)
        return;
    bool free = !t->find_column(*name);
    d.guard("duplicate name", free, free ? std::string() : *name + " already exists in " + t->name());
    auto type_problem = r.type.validity_problem();
    d.guard("type is valid", type_problem.empty(), type_problem);
    if (r.default_value && type_problem.empty()) {
        auto problem = literal_problem(*r.default_value, r.type);
        d.guard("default fits column type", problem.empty(), problem);
    }
    if (!r.nullable && !r.default_value && d.data()) {
        std::size_t rows = 0;
        if (auto it = d.data()->tables.find(to_upper(t->name())); it != d.data()->tables.end())
            rows = it->second.rows.size();
        d.guard("NOT NULL on a populated table requires a default", rows == 0,
                rows ? fmt::format("{} has {} rows", t->name(), rows) : std::string());
    }
    Table shadow = *t;
    std::vector<Constraint> inline_constraints;
    if (r.default_value) {
        Constraint df;
        df.kind = ConstraintKind::Default;
        df.name = shadow.next_synthetic_name(ConstraintKind::Default);
        df.system_named = true;
        df.columns = {*name};
        df.default_literal = *r.default_value;
        df.level = ConstraintLevel::ColumnLevel;
        shadow.add_constraint(df);
        inline_constraints.push_back(std::move(df));
    }
    if (!r.nullable) {
        Constraint nn;
        nn.kind = ConstraintKind::NotNull;
        nn.name = shadow.next_synthetic_name(ConstraintKind::NotNull);
        nn.system_named = true;
        nn.columns = {*name};
        nn.level = ConstraintLevel::ColumnLevel;
        inline_constraints.push_back(std::move(nn));
    }
    d.step(AddColumnStep{t->name(), *name, r.type, inline_constraints});
    for (const Constraint& k : inline_constraints)
        d.record_new(k, t->name());
}

Plan build(const RefactoringRequest& request, const Schema& schema, const PlanContext& context,
           const DataStore* data, bool throw_on_failure)
{
    if (auto missing = missing_params(request); !missing.empty())
        throw IncompleteRequest(std::move(missing));
    Draft d(schema, context, data);
    std::visit([&](const auto& r) { draft(d, r); }, request);
    return d.finish(request, throw_on_failure);
}

} // namespace

PlanContext PlanContext::now()
{
    return {std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()), {}};
}

Plan plan_refactoring(const RefactoringRequest& request, const Schema& schema, const PlanContext& context,
                      const DataStore* data)
{
    return build(request, schema, context, data, true);
}

std::vector<GuardResult> validate_guards(const RefactoringRequest& request, const Schema& schema,
                                         const DataStore* data, const PlanContext& context)
{
    return build(request, schema, context, data, false).guards;
}

Plan plan_drop_column(const Schema& s, const DropColumnRequest& r, const PlanContext& c, const DataStore* d)
{
    return plan_refactoring(r, s, c, d);
}

Plan plan_drop_table(const Schema& s, const DropTableRequest& r, const PlanContext& c, const DataStore* d)
{
    return plan_refactoring(r, s, c, d);
}

Plan plan_merge_columns(const Schema& s, const MergeColumnsRequest& r, const PlanContext& c, const DataStore* d)
{
    return plan_refactoring(r, s, c, d);
}

Plan plan_merge_tables(const Schema& s, const MergeTablesRequest& r, const PlanContext& c, const DataStore* d)
{
    return plan_refactoring(r, s, c, d);
}

Plan plan_move_column(const Schema& s, const MoveColumnRequest& r, const PlanContext& c, const DataStore* d)
{
    return plan_refactoring(r, s, c, d);
}

Plan plan_rename_column(const Schema& s, const RenameColumnRequest& r, const PlanContext& c, const DataStore* d)
{
    return plan_refactoring(r, s, c, d);
}

Plan plan_drop_constraint(const Schema& s, const DropConstraintRequest& r, const PlanContext& c, const DataStore* d)
{
    return plan_refactoring(r, s, c, d);
}

Plan plan_introduce_default_value(const Schema& s, const IntroduceDefaultValueRequest& r, const PlanContext& c,
                                  const DataStore* d)
{
    return plan_refactoring(r, s, c, d);
}

Plan plan_make_column_non_nullable(const Schema& s, const MakeColumnNonNullableRequest& r, const PlanContext& c,
                                   const DataStore* d)
{
    return plan_refactoring(r, s, c, d);
}

Plan plan_introduce_new_column(const Schema& s, const IntroduceNewColumnRequest& r, const PlanContext& c,
                               const DataStore* d)
{
    return plan_refactoring(r, s, c, d);
}

} // namespace refactordb
