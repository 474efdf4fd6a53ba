// SPDX-License-Identifier: Apache-2.0

#include "refactordb/cli.hpp"

#include "refactordb/catalog.hpp"
#include "refactordb/ddl_parser.hpp"
#include "refactordb/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace refactordb {

//===----------------------------------------------------------------------===//
// Session
//===----------------------------------------------------------------------===//

namespace {

std::optional<std::filesystem::path> env_schema_dir()
{
    if (const char* dir = std::getenv("REFACTORDB_SCHEMA_DIR"); dir && *dir)
        return std::filesystem::path(dir);
    return std::nullopt;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError(path.string(), "cannot open for writing");
    out << text;
    if (!out)
        throw IoError(path.string(), "write failed");
}

} // namespace

Session::Session(const CliConfig& config)
    : config_(config), dialect_(config.dialect ? config.dialect : &oraclelike()), owner_(to_upper(config.owner))
{
    if (config.catalog_db) {
        SqliteCatalogAdapter adapter(*config.catalog_db);
        Schema schema = load_from_catalog(adapter, owner_);
        store_ = load_catalog_data(adapter, schema);
    } else {
        auto dir = config.schema_dir ? config.schema_dir : env_schema_dir();
        bool explicit_dir = dir.has_value();
        if (!dir)
            dir = std::filesystem::path("schema");
        if (std::filesystem::is_directory(*dir)) {
            store_ = make_store(load_from_scripts(script_files(*dir)));
        } else if (explicit_dir) {
            throw IoError(dir->string(), "not a directory");
        }
    }
    if (store_.schema.owner.empty())
        store_.schema.owner = owner_;
    if (config.fixture)
        seed_fixture();
    ensure_log_table();
}

void Session::set_owner(std::string owner)
{
    owner_ = to_upper(owner);
}

void Session::ensure_log_table()
{
    if (store_.schema.find_table(kLogTableName))
        return;
    Table log = log_table_model();
    store_.tables[to_upper(log.name())];
    store_.schema.tables.push_back(std::move(log));
}

PlanContext Session::context() const
{
    PlanContext context = config_.fixed_timestamp ? PlanContext{*config_.fixed_timestamp, {}} : PlanContext::now();
    context.owner = owner_;
    return context;
}

Plan Session::plan(const RefactoringRequest& request) const
{
    return plan_refactoring(request, store_.schema, context(), &store_);
}

std::vector<GuardResult> Session::guards(const RefactoringRequest& request) const
{
    return validate_guards(request, store_.schema, &store_, context());
}

ExecutionResult Session::apply(const Plan& plan)
{
    ExecutionResult result = apply_plan(plan, store_, *dialect_);
    store_ = result.new_store;
    script_ += result.script;
    log_.insert(log_.end(), result.version_entries.begin(), result.version_entries.end());
    return result;
}

std::vector<std::string> Session::seed_fixture()
{
    DataStore fixture = fixture_store(owner_);
    std::vector<std::string> created;
    for (const Table& t : fixture.schema.tables) {
        if (store_.schema.find_table(t.name()))
            continue;
        store_.schema.tables.push_back(t);
        store_.tables[to_upper(t.name())] = fixture.data(t.name());
        created.push_back(t.name());
    }
    return created;
}

void Session::write_outputs() const
{
    if (config_.out_script)
        write_file(*config_.out_script, script_);
    if (config_.out_log)
        write_file(*config_.out_log, format_log_mirror(log_));
}

//===----------------------------------------------------------------------===//
// Menu and tables
//===----------------------------------------------------------------------===//

std::string render_menu()
{
    return "Choose Refactoring by entering the number\n"
           "\n"
           "Structural Refactoring\n"
           "\n"
           "1. Drop Column\n"
           "2. Drop Table\n"
           "3. Move Column\n"
           "4. Merge Columns : for single table only\n"
           "5. Merge Tables\n"
           "6. Rename Column\n"
           "\n"
           "Referential Integrity Refactoring\n"
           "\n"
           "24. Drop Constraint\n"
           "\n"
           "Data Quality Refactoring\n"
           "\n"
           "31. Introduce Default Value\n"
           "32. Make Column Non Nullable\n"
           "\n"
           "Data Transformations\n"
           "\n"
           "41. Add New Column\n"
           "\n"
           "HouseKeeping\n"
           "\n"
           "91. create tables to test\n"
           "92. Display constraints on table\n"
           "93. Display table schema\n"
           "94. Display table\n"
           "99. exit\n"
           "\n";
}

namespace {

std::string column_table(const Schema& schema, const std::vector<std::string>& tables)
{
    std::string out = "[0]TABLE_NAME\t[1]COLUMN_NAME\t[3]TYPE_NAME\t[4]COLUMN_SIZE\t[5]DECIMAL_DIGITS\t[7]COLUMN_DEF\t"
                      "[8]ORDINAL_POSITION\t[9]IS_NULLABLE\n";
    for (const auto& name : tables) {
        for (const TableDescriptionRow& r : describe_table(schema, name)) {
            out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", r.table_name, r.column_name, r.type_name,
                               r.column_size, r.decimal_digits ? std::to_string(*r.decimal_digits) : "null",
                               r.column_def.value_or("null"), r.ordinal_position, r.is_nullable);
        }
    }
    return out;
}

std::string row_count_table(const DataStore& store, const std::vector<std::string>& tables)
{
    std::string out = "[0]TABLENAME\t[1]NoOfRows\n";
    for (const auto& [name, count] : table_row_counts(store, tables))
        out += fmt::format("{}\t{}\n", name, count);
    return out;
}

std::string constraint_table(const Table& table, const Dialect& dialect)
{
    std::string out = "[0]Column Name\t[1]Row found at\t[2] Table Name\t[3] Constraint String\n";
    for (const auto& r : extract_constraint_strings(table, dialect))
        out += fmt::format("{}\t{}\t{}\t{}\n", r.column_name, r.row_index, r.table_name, r.constraint_string);
    return out;
}

std::string data_table(const DataStore& store, const Table& table)
{
    std::string out;
    for (std::size_t i = 0; i < table.columns().size(); ++i)
        out += fmt::format("{}[{}]{}", i ? "\t" : "", i, table.columns()[i].name);
    out += "\n";
    for (const Row& row : store.data(table.name()).rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "\t" : "") + display(row[i]);
        out += "\n";
    }
    return out;
}

std::string banner_time(Timestamp ts)
{
    static constexpr const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr", "May", "Jun",
                                              "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    auto day = std::chrono::floor<std::chrono::days>(ts);
    std::chrono::year_month_day ymd(day);
    std::chrono::hh_mm_ss time(ts - day);
    return fmt::format("{:02} - {} - {} {:02}:{:02}:{:02}", static_cast<unsigned>(ymd.day()),
                       kMonths[static_cast<unsigned>(ymd.month()) - 1], static_cast<int>(ymd.year()),
                       time.hours().count(), time.minutes().count(), time.seconds().count());
}

bool is_yes(std::string_view answer)
{
    return !answer.empty() && (answer.front() == 'Y' || answer.front() == 'y');
}

std::string trim(std::string_view text)
{
    auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string_view::npos)
        return {};
    auto end = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(begin, end - begin + 1));
}

/// Identifier typed by the user; falls back to the raw text so that guards
/// report the name as given.
std::string typed_name(std::string_view text)
{
    auto name = canonical_identifier(text);
    return name ? *name : trim(text);
}

struct EndOfInput {};

//===----------------------------------------------------------------------===//
// Wizard
//===----------------------------------------------------------------------===//

class Wizard {
public:
    Wizard(Session& session, std::istream& in, std::ostream& out, std::string* transcript, bool echo)
        : session_(session), in_(in), out_(out), transcript_(transcript), echo_(echo)
    {
    }

    void say(std::string_view text)
    {
        out_ << text;
        if (transcript_)
            transcript_->append(text);
    }

    /// Prompt on its own line, or followed by the response when `inline_prompt`.
    std::string ask(std::string_view prompt, bool inline_prompt = true)
    {
        say(prompt);
        if (!inline_prompt)
            say("\n");
        out_.flush();
        std::string line;
        if (!std::getline(in_, line))
            throw EndOfInput{};
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (transcript_)
            transcript_->append(line + "\n");
        if (echo_)
            out_ << line << "\n";
        return line;
    }

    std::string ask_secret(std::string_view prompt)
    {
        say(prompt);
        say("\n");
        out_.flush();
        std::string line;
        if (!std::getline(in_, line))
            throw EndOfInput{};
        if (transcript_)
            transcript_->append("\n");
        if (echo_)
            out_ << "\n";
        return line;
    }

    void login(const CliConfig& config)
    {
        Timestamp now = config.fixed_timestamp ? *config.fixed_timestamp : PlanContext::now().timestamp;
        say(banner_time(now) + "\n\n");
        std::string technology =
            trim(ask("Enter Choice for the Database Technology Else press enter to choose Oracle for default", false));
        if (!technology.empty()) {
            std::string key = to_upper(technology);
            const Dialect* d = key == "ORACLE" ? &oraclelike() : find_dialect(trim(technology));
            if (!d) {
                for (const Dialect* candidate : {&oraclelike(), &ansi()}) {
                    if (same_identifier(candidate->name(), key))
                        d = candidate;
                }
            }
            if (d)
                session_.set_dialect(*d);
            else
                say("unknown database technology, keeping " + std::string(session_.dialect().name()) + "\n");
        }
        say("\n");
        std::string user = trim(ask("Enter the username. Press Enter to use default", false));
        if (!user.empty())
            session_.set_owner(user);
        say("\n");
        ask_secret("Enter the password. Press Enter to use default");
        say("\n");
        std::string lower = session_.owner();
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
        say(fmt::format("Driver : {}\nconnect made by : userid {}\n\n", session_.dialect().name(), lower));
    }

    /// False on 99.
    bool turn()
    {
        say(render_menu());
        std::string choice = trim(ask("Type : "));
        say("\n");
        try {
            if (choice == "99") {
                say("99. exit\n");
                return false;
            }
            if (choice == "1")
                drop_column();
            else if (choice == "2")
                drop_table();
            else if (choice == "3")
                move_column();
            else if (choice == "4")
                merge_columns();
            else if (choice == "5")
                merge_tables();
            else if (choice == "6")
                rename_column();
            else if (choice == "24")
                drop_constraint();
            else if (choice == "31")
                introduce_default();
            else if (choice == "32")
                make_non_nullable();
            else if (choice == "41")
                add_column();
            else if (choice == "91")
                create_test_tables();
            else if (choice == "92")
                show_constraints();
            else if (choice == "93")
                show_schema();
            else if (choice == "94")
                show_table();
            else
                say("invalid choice\n\n");
        } catch (const EndOfInput&) {
            throw;
        } catch (const std::exception& e) {
            say(std::string("error: ") + e.what() + "\n\n");
        }
        return true;
    }

private:
    std::string table_prompt(std::string_view prompt = "enter the Tablename :") { return typed_name(ask(prompt)); }

    bool backup_prompt()
    {
        return is_yes(ask("Do you want a backup of the table? Press Y for Yes, N for No : "));
    }

    void propose(const RefactoringRequest& request)
    {
        std::vector<GuardResult> guards;
        try {
            guards = session_.guards(request);
        } catch (const IncompleteRequest& e) {
            say(std::string(e.what()) + "\n\n");
            return;
        }
        bool ok = std::all_of(guards.begin(), guards.end(), [](const GuardResult& g) { return g.passed; });
        say(fmt::format("Value of update function is {}\n\n", ok ? "true" : "false"));
        if (!ok) {
            for (const auto& g : guards) {
                if (!g.passed)
                    say(fmt::format("guard failed: {}{}{}\n", g.guard_name, g.detail.empty() ? "" : ": ", g.detail));
            }
            say("\n");
            return;
        }
        Plan plan = session_.plan(request);
        for (const auto& g : plan.guards) {
            if (g.detail.rfind("warning", 0) == 0)
                say(g.detail + "\n");
        }
        if (plan.steps.empty()) {
            say("No changes needed.\n\n");
            return;
        }
        for (const Step& step : plan.steps)
            say(session_.dialect().emit(step) + "\n");
        say("\n");
        std::string answer = ask("Do you wish to continue with the changes? Press Y for Yes, N for No : ");
        say("\n");
        if (!is_yes(answer)) {
            say("No changes made.\n\n");
            return;
        }
        try {
            ExecutionResult result = session_.apply(plan);
            say(fmt::format("{} statement(s) applied.\n\n", result.applied_steps));
        } catch (const ExecutionAborted& e) {
            say(fmt::format("Execution stopped at step {}: {}. No changes made.\n\n", e.step_index() + 1, e.cause()));
        }
    }

    void drop_column()
    {
        say("1. Drop Column\n\n");
        DropColumnRequest r;
        r.table = table_prompt();
        r.column = typed_name(ask("enter the column name to drop :"));
        r.backup = backup_prompt();
        say("\n");
        propose(r);
    }

    void drop_table()
    {
        say("2. Drop Table\n\n");
        DropTableRequest r;
        r.table = table_prompt();
        r.backup = backup_prompt();
        say("\n");
        propose(r);
    }

    void move_column()
    {
        say("3. Move Column\n\n");
        MoveColumnRequest r;
        r.source_table = table_prompt("enter the Tablename to move the column from :");
        r.target_table = table_prompt("enter the Tablename to move the column to :");
        r.column = typed_name(ask("enter the column name :"));
        r.condition = trim(ask("enter the condition matching rows of the two tables :"));
        r.backup = backup_prompt();
        say("\n");
        propose(r);
    }

    void merge_columns()
    {
        say("4. Merge Columns : for single table only\n\n");
        MergeColumnsRequest r;
        r.table = table_prompt();
        say("The FIRST COLUMN that you enter WILL BE MODIFIED .\n\n");
        do {
            r.columns.push_back(typed_name(ask("enter the column name :")));
        } while (is_yes(ask("Continue entering more column names", false)));
        std::string mode = trim(ask("Press M to merge or C to concatenate : "));
        if (!mode.empty() && (mode.front() == 'M' || mode.front() == 'm')) {
            r.mode = MergeMode::Merge;
            r.update_condition = trim(ask("enter the update statement SET clause :"));
        } else {
            r.mode = MergeMode::Concatenate;
            r.delimiter = ask("enter the delimiter :");
        }
        r.backup = backup_prompt();
        say("\n");
        propose(r);
    }

    void merge_tables()
    {
        say("5. Merge Tables\n\n");
        say("you can merge between 2 tables .The FIRST TABLE that you enter WILL BE BE MODIFIED .\n\n");
        MergeTablesRequest r;
        r.target_table = table_prompt("enter the 1 Tablename :");
        r.source_table = table_prompt("enter the 2 Tablename :");
        say("\n");
        const Schema& schema = session_.store().schema;
        const Table* target = schema.find_table(r.target_table);
        const Table* source = schema.find_table(r.source_table);
        if (target && source) {
            say("Details entered for tables in function to Merge column\n\n");
            say(column_table(schema, {target->name(), source->name()}) + "\n");
        }
        say("Unless stated otherwise, Press Y for YES, Press N for No.\n\n");
        do {
            r.columns.push_back(typed_name(ask(
                "Type the column name that you would like to shift to table " + (target ? target->name() : r.target_table),
                false)));
            say("\n");
        } while (is_yes(ask("Continue entering more column names", false)));
        say("\n");
        if (target && source) {
            say("Details entered for tables in function to Merge column\n\n");
            say(row_count_table(session_.store(), {target->name(), source->name()}) + "\n");
            say("Details entered for tables in function to Merge column\n\n");
            say(render_create_table(*source, session_.dialect()) + "\n\n");
            say("Details entered for tables in function extract constraints\n\n");
            say(constraint_table(*source, session_.dialect()) + "\n");
        }
        propose(r);
    }

    void rename_column()
    {
        say("6. Rename Column\n\n");
        RenameColumnRequest r;
        r.table = table_prompt();
        r.old_name = typed_name(ask("enter the column name to rename :"));
        r.new_name = trim(ask("enter the new column name :"));
        say("\n");
        propose(r);
    }

    void drop_constraint()
    {
        say("24. Drop Constraint\n\n");
        DropConstraintRequest r;
        r.table = table_prompt();
        if (const Table* t = session_.store().schema.find_table(r.table)) {
            say("\nDetails entered for tables in function extract constraints\n\n");
            say(constraint_table(*t, session_.dialect()) + "\n");
        }
        r.constraint = typed_name(ask("enter the constraint name to drop :"));
        r.backup = backup_prompt();
        say("\n");
        propose(r);
    }

    void introduce_default()
    {
        say("31. Introduce Default Value\n\n");
        IntroduceDefaultValueRequest r;
        r.table = table_prompt();
        r.column = typed_name(ask("enter the column name :"));
        r.literal = trim(ask("enter the default value :"));
        say("\n");
        propose(r);
    }

    void make_non_nullable()
    {
        say("32. Make Column Non Nullable\n\n");
        MakeColumnNonNullableRequest r;
        r.table = table_prompt();
        r.column = typed_name(ask("enter the column name :"));
        std::string fill = trim(ask("enter the value for rows holding null. Press Enter for none :"));
        if (!fill.empty())
            r.fill_value = fill;
        say("\n");
        propose(r);
    }

    void add_column()
    {
        say("41. Add New Column\n\n");
        IntroduceNewColumnRequest r;
        r.table = table_prompt();
        r.column = trim(ask("enter the new column name :"));
        std::string type = trim(ask("enter the data type :"));
        try {
            r.type = parse_data_type(type);
        } catch (const Error& e) {
            say(std::string("invalid data type: ") + e.what() + "\n\n");
            return;
        }
        r.nullable = !is_yes(ask("Should the column reject nulls? Press Y for Yes, N for No : "));
        std::string def = trim(ask("enter the default value. Press Enter for none :"));
        if (!def.empty())
            r.default_value = def;
        say("\n");
        propose(r);
    }

    void create_test_tables()
    {
        say("91. create tables to test\n\n");
        auto created = session_.seed_fixture();
        if (created.empty())
            say("test tables already present\n");
        for (const auto& name : created)
            say("created table " + name + "\n");
        say("\n");
    }

    void show_constraints()
    {
        say("92. Display constraints on table\n");
        std::string name = table_prompt();
        const Table& t = session_.store().schema.table(name);
        say("\nDetails entered for tables in function extract constraints\n\n");
        say(constraint_table(t, session_.dialect()) + "\n");
    }

    void show_schema()
    {
        say("93. Display table Schema\n");
        std::string name = typed_name(ask("", true));
        auto rows = describe_table(session_.store().schema, name);
        say("Table description\ncolumn names :\n\n");
        say(format_description(rows) + "\n");
    }

    void show_table()
    {
        say("94. Display table\n");
        std::string name = table_prompt();
        const Table& t = session_.store().schema.table(name);
        say("\n" + data_table(session_.store(), t) + "\n");
    }

    Session& session_;
    std::istream& in_;
    std::ostream& out_;
    std::string* transcript_;
    bool echo_;
};

} // namespace

int run_interactive(const CliConfig& config, std::istream& in, std::ostream& out, std::string* transcript)
{
    std::optional<Session> session;
    try {
        session.emplace(config);
    } catch (const std::exception& e) {
        out << "cannot load schema: " << e.what() << "\n";
        if (transcript)
            transcript->append(std::string("cannot load schema: ") + e.what() + "\n");
        return kExitInput;
    }
    Wizard wizard(*session, in, out, transcript, config.echo_input);
    try {
        wizard.login(config);
        while (wizard.turn()) {
        }
    } catch (const EndOfInput&) {
        wizard.say("\nend of input\n");
    }
    try {
        session->write_outputs();
    } catch (const IoError& e) {
        out << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}

//===----------------------------------------------------------------------===//
// Batch
//===----------------------------------------------------------------------===//

namespace {

std::vector<std::string> split_words(std::string_view line)
{
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
        if (i >= line.size())
            break;
        std::string word;
        bool quoted_any = false;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
            if (line[i] == '"') {
                quoted_any = true;
                ++i;
                for (;;) {
                    if (i >= line.size())
                        throw std::invalid_argument("unterminated quote");
                    if (line[i] == '"') {
                        if (i + 1 < line.size() && line[i + 1] == '"') {
                            word += '"';
                            i += 2;
                            continue;
                        }
                        ++i;
                        break;
                    }
                    word += line[i++];
                }
            } else {
                word += line[i++];
            }
        }
        if (!word.empty() || quoted_any)
            words.push_back(std::move(word));
    }
    return words;
}

bool parse_bool(const std::string& key, const std::string& value)
{
    std::string v = to_upper(value);
    if (v == "Y" || v == "YES" || v == "TRUE" || v == "1")
        return true;
    if (v == "N" || v == "NO" || v == "FALSE" || v == "0")
        return false;
    throw std::invalid_argument(key + ": expected yes or no, got " + value);
}

std::vector<std::string> parse_list(const std::string& value)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(value);
    while (std::getline(in, item, ','))
        out.push_back(trim(item));
    return out;
}

class Params {
public:
    explicit Params(std::map<std::string, std::string> values) : values_(std::move(values)) {}

    std::string text(const std::string& key)
    {
        used_.insert(key);
        auto it = values_.find(key);
        return it == values_.end() ? std::string() : it->second;
    }

    std::optional<std::string> optional_text(const std::string& key)
    {
        used_.insert(key);
        auto it = values_.find(key);
        if (it == values_.end())
            return std::nullopt;
        return it->second;
    }

    bool flag(const std::string& key, bool fallback)
    {
        auto v = optional_text(key);
        return v ? parse_bool(key, *v) : fallback;
    }

    void finish() const
    {
        for (const auto& [key, value] : values_) {
            if (!used_.count(key))
                throw std::invalid_argument("unknown key: " + key);
        }
    }

private:
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

RefactoringRequest build_request(RefactoringKind kind, Params& p)
{
    switch (kind) {
    case RefactoringKind::DropColumn:
        return DropColumnRequest{p.text("table"), p.text("column"), p.flag("backup", false), p.flag("confirmed", true)};
    case RefactoringKind::DropTable:
        return DropTableRequest{p.text("table"), p.flag("backup", false)};
    case RefactoringKind::MergeColumns: {
        MergeColumnsRequest r;
        r.table = p.text("table");
        r.columns = parse_list(p.text("columns"));
        auto mode = p.optional_text("mode");
        if (mode && same_identifier(*mode, "merge"))
            r.mode = MergeMode::Merge;
        else if (mode && !same_identifier(*mode, "concatenate"))
            throw std::invalid_argument("mode: expected merge or concatenate, got " + *mode);
        r.delimiter = p.optional_text("delimiter");
        r.update_condition = p.optional_text("update_condition");
        r.backup = p.flag("backup", false);
        return r;
    }
    case RefactoringKind::MergeTables:
        return MergeTablesRequest{p.text("target_table"), p.text("source_table"), parse_list(p.text("columns"))};
    case RefactoringKind::MoveColumn:
        return MoveColumnRequest{p.text("source_table"), p.text("target_table"), p.text("column"),
                                 p.text("condition"), p.flag("backup", false)};
    case RefactoringKind::RenameColumn:
        return RenameColumnRequest{p.text("table"), p.text("old_name"), p.text("new_name")};
    case RefactoringKind::DropConstraint:
        return DropConstraintRequest{p.text("table"), p.text("constraint"), p.flag("backup", false)};
    case RefactoringKind::IntroduceDefaultValue:
        return IntroduceDefaultValueRequest{p.text("table"), p.text("column"), p.text("literal")};
    case RefactoringKind::MakeColumnNonNullable:
        return MakeColumnNonNullableRequest{p.text("table"), p.text("column"), p.optional_text("fill_value")};
    case RefactoringKind::IntroduceNewColumn: {
        IntroduceNewColumnRequest r;
        r.table = p.text("table");
        r.column = p.text("column");
        r.type = parse_data_type(p.text("type"));
        r.nullable = p.flag("nullable", true);
        r.default_value = p.optional_text("default_value");
        return r;
    }
    }
    throw std::invalid_argument("unknown refactoring kind");
}

} // namespace

std::optional<RefactoringRequest> parse_batch_line(std::string_view line)
{
    std::string text = trim(line);
    if (text.empty() || text.front() == '#')
        return std::nullopt;
    auto words = split_words(text);
    auto kind = parse_refactoring_kind(words.front());
    if (!kind)
        throw std::invalid_argument("unknown refactoring kind: " + words.front());
    std::map<std::string, std::string> values;
    for (std::size_t i = 1; i < words.size(); ++i) {
        auto eq = words[i].find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("expected key=value, got " + words[i]);
        std::string key = words[i].substr(0, eq);
        std::transform(key.begin(), key.end(), key.begin(), [](unsigned char c) { return std::tolower(c); });
        if (!values.emplace(key, words[i].substr(eq + 1)).second)
            throw std::invalid_argument("duplicate key: " + key);
    }
    Params params(std::move(values));
    RefactoringRequest request;
    try {
        request = build_request(*kind, params);
    } catch (const Error& e) {
        throw std::invalid_argument(e.what());
    }
    params.finish();
    return request;
}

int run_batch(const std::filesystem::path& batch_file, const CliConfig& config, std::ostream& out, std::ostream& err)
{
    std::ifstream in(batch_file, std::ios::binary);
    if (!in) {
        err << batch_file.string() << ": cannot open\n";
        return kExitInput;
    }
    std::optional<Session> session;
    try {
        session.emplace(config);
    } catch (const std::exception& e) {
        err << "cannot load schema: " << e.what() << "\n";
        return kExitInput;
    }

    int status = kExitOk;
    std::string line;
    std::size_t number = 0;
    while (status == kExitOk && std::getline(in, line)) {
        ++number;
        std::string where = fmt::format("{}:{}", batch_file.string(), number);
        std::optional<RefactoringRequest> request;
        try {
            request = parse_batch_line(line);
        } catch (const std::exception& e) {
            err << where << ": " << e.what() << "\n";
            status = kExitInput;
            break;
        }
        if (!request)
            continue;
        std::string kind(to_string(kind_of(*request)));
        try {
            Plan plan = session->plan(*request);
            session->apply(plan);
        } catch (const IncompleteRequest& e) {
            err << where << ": " << kind << ": " << e.what() << "\n";
            status = kExitInput;
        } catch (const GuardFailure& e) {
            err << where << ": " << kind << ": guard failure\n";
            for (const auto& g : e.failed())
                err << "  " << g.guard_name << (g.detail.empty() ? "" : ": ") << g.detail << "\n";
            status = kExitGuard;
        } catch (const ExecutionAborted& e) {
            err << where << ": " << kind << ": " << e.what() << "\n";
            status = kExitExecution;
        } catch (const Error& e) {
            // Missing tables, columns and constraints are guard failures.
            err << where << ": " << kind << ": " << e.what() << "\n";
            status = kExitGuard;
        }
    }
    try {
        session->write_outputs();
    } catch (const IoError& e) {
        err << e.what() << "\n";
        return kExitInput;
    }
    if (!config.out_script)
        out << session->script();
    return status;
}

} // namespace refactordb
