// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "generators.hpp"
#include "support.hpp"

#include "refactordb/catalog.hpp"
#include "refactordb/cli.hpp"
#include "refactordb/ddl_parser.hpp"
#include "refactordb/errors.hpp"
#include "refactordb/executor.hpp"
#include "refactordb/refactorings.hpp"

#include <filesystem>

using namespace refactordb;
namespace fs = std::filesystem;

namespace {

PlanContext reference_context()
{
    return {testsupport::reference_time(), "SCOTT"};
}

/// Independent table of the catalog codes for each type family.
struct TypeCodes {
    int data_type;
    std::string type_name;
};

TypeCodes codes(const DataType& type)
{
    switch (type.base) {
    case TypeFamily::FixedNumber:
        return {3, "NUMBER"};
    case TypeFamily::VarcharText:
        return {12, "VARCHAR2"};
    case TypeFamily::Date:
        return {91, "DATE"};
    }
    return {0, ""};
}

fs::path scratch_dir(const std::string& name)
{
    fs::path dir = fs::temp_directory_path() / ("refactordb_catalog_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void check_same_tables(const Schema& a, const Schema& b)
{
    REQUIRE(a.tables.size() == b.tables.size());
    for (std::size_t i = 0; i < a.tables.size(); ++i) {
        CAPTURE(a.tables[i].name());
        CHECK(equivalent(a.tables[i], b.tables[i]));
    }
}

} // namespace

TEST_CASE("load_from_scripts reads the corpus directory")
{
    auto files = script_files(testsupport::corpus_dir());
    CHECK(files.size() == 7);
    CHECK(std::is_sorted(files.begin(), files.end()));
    ScriptLoad load = load_scripts(files);
    CHECK(load.schema.tables.size() == 10);
    CHECK(fs::path(load.source_of.at("TESTNULL")).filename() == "07_check.sql");
    CHECK(load_from_scripts({}).tables.empty());
}

TEST_CASE("duplicate tables across files load and then fail validation")
{
    fs::path dir = scratch_dir("dup");
    std::ofstream(dir / "a.sql") << "CREATE TABLE T (A NUMBER);";
    std::ofstream(dir / "b.sql") << "CREATE TABLE T (B NUMBER);";
    Schema s = load_from_scripts(script_files(dir));
    CHECK(s.tables.size() == 2);
    CHECK(validate_schema(s).size() == 1);
}

TEST_CASE("script loading errors name the file")
{
    CHECK_THROWS_AS(load_from_scripts({"/nonexistent/x.sql"}), IoError);
    CHECK_THROWS_AS(script_files("/nonexistent/dir"), IoError);
    fs::path dir = scratch_dir("bad");
    std::ofstream(dir / "bad.sql") << "CREATE TABLE T (A NUMBER);\nCREATE TABLE U (;";
    try {
        load_from_scripts(script_files(dir));
        FAIL("accepted");
    } catch (const ScriptError& e) {
        CHECK(fs::path(e.source()).filename() == "bad.sql");
        CHECK(e.statement_index() == 2);
    }
}

TEST_CASE("SQLite catalog loads the same schema as the scripts")
{
    Schema scripts = testsupport::corpus();
    SqliteCatalogAdapter db(":memory:");
    seed_catalog(db, scripts, oraclelike());
    CHECK(db.list_tables().size() == scripts.tables.size());
    Schema catalog = load_from_catalog(db, "SCOTT");
    CHECK(catalog.owner == "SCOTT");
    check_same_tables(catalog, scripts);
    CHECK(validate_schema(catalog).empty());
}

TEST_CASE("SUPPLIERS through SQLite equals SUPPLIERS from a script")
{
    fs::path dir = scratch_dir("supp");
    std::string ddl = render_create_table(fixture_store().schema.table("SUPPLIERS"), oraclelike());
    std::ofstream(dir / "s.sql") << ddl << ";\n";
    SqliteCatalogAdapter db(":memory:");
    db.execute(ddl);
    check_same_tables(load_from_catalog(db, "SCOTT"), load_from_scripts(script_files(dir)));
    CHECK(db.get_table_ddl(ObjectType::Table, "suppliers", "SCOTT") == ddl);
}

TEST_CASE("source equivalence over generated schemas")
{
    gen::Rng rng(99);
    for (int i = 0; i < 60; ++i) {
        Schema s = gen::world(rng).schema;
        std::string script;
        for (const Table& t : s.tables)
            script += render_create_table(t, oraclelike()) + ";\n";
        SqliteCatalogAdapter db(":memory:");
        seed_catalog(db, s, oraclelike());
        check_same_tables(load_from_catalog(db, "SCOTT"), parse_script(script));
    }
}

TEST_CASE("catalog rows come back with their types")
{
    DataStore store = fixture_store();
    SqliteCatalogAdapter db(":memory:");
    seed_catalog(db, store.schema, oraclelike(), &store);
    CHECK(db.row_count("EMP") == 9);
    CHECK(db.row_count("EMP24JAN09120206") == 9);
    DataStore back = load_catalog_data(db, load_from_catalog(db, "SCOTT"));
    for (const Table& t : store.schema.tables) {
        CAPTURE(t.name());
        CHECK(back.data(t.name()) == store.data(t.name()));
    }
}

TEST_CASE("catalog adapter failures")
{
    MemoryCatalogAdapter empty;
    CHECK(load_from_catalog(empty, "SCOTT").tables.empty());

    MemoryCatalogAdapter broken;
    broken.add_table("GOOD", "CREATE TABLE GOOD (A NUMBER)");
    broken.add_table("BROKEN", "CREATE TABLE BROKEN (A NUMBER");
    try {
        load_from_catalog(broken, "SCOTT");
        FAIL("accepted");
    } catch (const AdapterError& e) {
        CHECK(e.table() == "BROKEN");
        CHECK(std::string(e.what()).find("expected") != std::string::npos);
    }
    SqliteCatalogAdapter db(":memory:");
    CHECK_THROWS_AS(db.get_table_ddl(ObjectType::Table, "NOPE", "SCOTT"), AdapterError);
    CHECK_THROWS_AS(db.execute("NOT SQL"), AdapterError);
}

TEST_CASE("describe of the backup after STREET moves in matches the reference description")
{
    DataStore store = fixture_store();
    MergeTablesRequest request{"EMP24JAN09120206", "SUPPLIERS", {"STREET"}};
    Plan plan = plan_merge_tables(store.schema, request, reference_context(), &store);
    DataStore after = apply_plan(plan, store, oraclelike()).new_store;
    std::string text = format_description(describe_table(after.schema, "EMP24JAN09120206"));
    std::string golden = testsupport::read_file(testsupport::source_dir() / "tests" / "golden" /
                                                "describe_emp_backup_street.txt");
    CHECK(text == golden);
}

TEST_CASE("describe of EMPNO and STREET")
{
    const Schema s = fixture_store().schema;
    auto rows = describe_table(s, "EMP");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].column_name == "EMPNO");
    CHECK(rows[0].data_type == 3);
    CHECK(rows[0].type_name == "NUMBER");
    CHECK(rows[0].column_size == 4);
    CHECK(rows[0].decimal_digits == 0);
    CHECK(rows[0].is_nullable == "NO");
    auto supp = describe_table(s, "SUPPLIERS");
    CHECK(supp[2].column_name == "STREET");
    CHECK(supp[2].type_name == "VARCHAR2");
    CHECK(supp[2].column_size == 32);
    CHECK(supp[2].nullable == 1);
    CHECK(supp[2].is_nullable == "YES");
    CHECK_THROWS_AS(describe_table(s, "NOPE"), TableNotFound);

    Schema one;
    one.tables.push_back(parse_create_table("CREATE TABLE T (A DATE)"));
    auto single = describe_table(one, "T");
    REQUIRE(single.size() == 1);
    CHECK(single[0].ordinal_position == 1);
    CHECK(single[0].data_type == 91);
}

TEST_CASE("describe agrees with the model for every generated column")
{
    gen::Rng rng(17);
    for (int i = 0; i < 60; ++i) {
        Schema s = gen::world(rng).schema;
        for (const Table& t : s.tables) {
            auto rows = describe_table(s, t.name());
            REQUIRE(rows.size() == t.columns().size());
            for (std::size_t k = 0; k < rows.size(); ++k) {
                const Column& c = t.columns()[k];
                const auto& r = rows[k];
                CHECK(r.ordinal_position == static_cast<int>(k) + 1);
                CHECK((r.nullable == 0) == (r.is_nullable == "NO"));
                CHECK((r.nullable == 1) == c.nullable);
                CHECK(r.data_type == codes(c.type).data_type);
                CHECK(r.type_name == codes(c.type).type_name);
                CHECK(r.column_def == c.default_value);
                CHECK_FALSE(r.table_cat.has_value());
                CHECK(r.buffer_length == 0);
                CHECK(r.num_prec_radix == 10);
                CHECK(r.sql_data_type == 0);
                CHECK(r.sql_datetime_sub == 0);
                if (c.type.base == TypeFamily::VarcharText) {
                    CHECK(r.column_size == *c.type.length);
                    CHECK_FALSE(r.decimal_digits.has_value());
                }
                if (c.type.base == TypeFamily::FixedNumber && c.type.precision) {
                    CHECK(r.column_size == *c.type.precision);
                    CHECK(r.decimal_digits == c.type.scale.value_or(0));
                }
            }
        }
    }
}

TEST_CASE("describe is unchanged by a plan with no steps")
{
    DataStore store = fixture_store();
    auto before = describe_table(store.schema, "FK3TEMP");
    Plan plan = plan_make_column_non_nullable(store.schema, {"FK3TEMP", "SRNO", {}}, reference_context(), &store);
    REQUIRE(plan.steps.empty());
    DataStore after = apply_plan(plan, store, oraclelike()).new_store;
    CHECK(describe_table(after.schema, "FK3TEMP") == before);
}

TEST_CASE("row counts")
{
    DataStore store = fixture_store();
    auto counts = table_row_counts(store, {"EMP24JAN09120206", "SUPPLIERS"});
    CHECK(counts == std::vector<std::pair<std::string, std::size_t>>{{"EMP24JAN09120206", 9}, {"SUPPLIERS", 6}});
    DataStore empty = make_store(testsupport::corpus());
    CHECK(table_row_counts(empty, {"EMP"}).front().second == 0);
    CHECK_THROWS_AS(table_row_counts(store, {"NOPE"}), TableNotFound);
}

TEST_CASE("column metadata views cannot carry CHECK or FOREIGN KEY")
{
    Schema full = testsupport::corpus();
    Schema meta = reconstruct_from_metadata(full);

    // The surface itself: getColumns rows expose type, default and nullability only.
    auto columns = get_columns(full, "TESTNULL");
    REQUIRE(columns.size() == 6);
    CHECK(columns[2].column_def == "49");
    CHECK_FALSE(columns[0].nullable);
    auto keys = get_primary_keys(full, "PK2TEMP");
    REQUIRE(keys.size() == 2);
    CHECK(keys[1].key_seq == 2);
    CHECK(keys[0].pk_name == "PK_NUMBVALUE");
    CHECK(get_tables(full).size() == full.tables.size());

    const Table& testnull = meta.table("TESTNULL");
    CHECK(testnull.find_constraint("CHECKVAL_CH") == nullptr);
    CHECK(testnull.primary_key() != nullptr);
    CHECK(meta.table("FK2TEMP").find_constraint("FK2TEMP_FK03") == nullptr);
    for (const Table& t : meta.tables) {
        for (const Constraint& c : t.constraints()) {
            CHECK(c.kind != ConstraintKind::Check);
            CHECK(c.kind != ConstraintKind::ForeignKey);
            CHECK(c.kind != ConstraintKind::Unique);
        }
    }
}
