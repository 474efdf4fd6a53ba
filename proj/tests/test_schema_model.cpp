// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "generators.hpp"
#include "support.hpp"

#include "refactordb/cli.hpp"
#include "refactordb/ddl_parser.hpp"
#include "refactordb/errors.hpp"

#include <algorithm>
#include <set>

using namespace refactordb;

namespace {

const Schema& fixture_schema()
{
    static const Schema schema = fixture_store().schema;
    return schema;
}

std::set<std::string> names(const std::vector<DependentConstraint>& deps)
{
    std::set<std::string> out;
    for (const auto& d : deps)
        out.insert(d.owning_table + ":" + d.constraint.name);
    return out;
}

} // namespace

TEST_CASE("identifiers fold to upper case unless quoted")
{
    CHECK(to_upper("street") == "STREET");
    CHECK(same_identifier("Street", "STREET"));
    CHECK_FALSE(same_identifier("STREET", "STREETS"));
    CHECK(canonical_identifier("  street ") == "STREET");
    CHECK(canonical_identifier("\"Mixed Case\"") == "Mixed Case");
    CHECK_FALSE(canonical_identifier("1BAD").has_value());
    CHECK_FALSE(canonical_identifier("").has_value());
    CHECK(quote_identifier("Mixed Case") == "\"Mixed Case\"");
    CHECK(quote_identifier("PLAIN_1") == "PLAIN_1");
}

TEST_CASE("data type validity")
{
    CHECK(DataType::varchar(32).validity_problem().empty());
    CHECK_FALSE(DataType{TypeFamily::VarcharText, {}, {}, {}}.validity_problem().empty());
    CHECK(DataType::number(3, 0).validity_problem().empty());
    CHECK_FALSE(DataType::number(3, 4).validity_problem().empty());
    CHECK(DataType::date().validity_problem().empty());
    CHECK_FALSE(DataType{TypeFamily::Date, 7, {}, {}}.validity_problem().empty());
}

TEST_CASE("literal fit by type")
{
    CHECK(literal_problem("49", DataType::number(3, 0)).empty());
    CHECK_FALSE(literal_problem("1000", DataType::number(3, 0)).empty());
    CHECK_FALSE(literal_problem("1.5", DataType::number(3, 0)).empty());
    CHECK(literal_problem("'abc'", DataType::varchar(3)).empty());
    CHECK_FALSE(literal_problem("'abcd'", DataType::varchar(3)).empty());
    CHECK(literal_problem("DATE '2009-01-24'", DataType::date()).empty());
    CHECK_FALSE(literal_problem("DATE '2009-13-24'", DataType::date()).empty());
    CHECK_FALSE(literal_problem("'x", DataType::varchar(3)).empty());
}

TEST_CASE("the corpus validates")
{
    CHECK(validate_schema(testsupport::corpus()).empty());
    CHECK(validate_schema(fixture_schema()).empty());
}

TEST_CASE("empty schema validates")
{
    CHECK(validate_schema(Schema{}).empty());
}

TEST_CASE("FK2TEMP without PK2TEMP reports the missing table")
{
    Schema s = testsupport::corpus();
    s.tables.erase(std::remove_if(s.tables.begin(), s.tables.end(), [](const Table& t) { return t.name() == "PK2TEMP"; }),
                   s.tables.end());
    auto report = validate_schema(s);
    REQUIRE(report.size() == 1);
    CHECK(report[0].table == "FK2TEMP");
    CHECK(report[0].constraint == "FK_NUMB2VAL2_PK2TEMP_NUMBVL2");
    CHECK(report[0].message == "referenced table PK2TEMP missing");
}

TEST_CASE("validation catches each broken invariant")
{
    Schema s;
    s.tables.push_back(parse_create_table("CREATE TABLE A (X NUMBER, CONSTRAINT K1 UNIQUE (X))"));
    s.tables.push_back(parse_create_table("CREATE TABLE B (Y NUMBER, CONSTRAINT K1 UNIQUE (Y))"));
    s.tables.push_back(parse_create_table("CREATE TABLE a (Z NUMBER)"));
    auto report = validate_schema(s);
    CHECK(report.size() == 2);

    Table t("T");
    t.add_column("A", DataType::number());
    Constraint fk;
    fk.name = "FK_T";
    fk.kind = ConstraintKind::ForeignKey;
    fk.columns = {"A"};
    fk.referenced_table = "T";
    fk.referenced_columns = {"A", "B"};
    t.add_constraint(fk);
    Constraint pk1;
    pk1.name = "PK1";
    pk1.kind = ConstraintKind::PrimaryKey;
    pk1.columns = {"A", "A"};
    t.add_constraint(pk1);
    Constraint pk2 = pk1;
    pk2.name = "PK2";
    pk2.columns = {"NOPE"};
    t.add_constraint(pk2);
    Schema bad;
    bad.tables.push_back(t);
    auto problems = validate_schema(bad);
    std::string all;
    for (const auto& v : problems)
        all += to_string(v) + "\n";
    CAPTURE(all);
    CHECK(problems.size() >= 4);
    CHECK(all.find("PK2") != std::string::npos);
    CHECK(all.find("NOPE") != std::string::npos);
}

TEST_CASE("validate_schema is repeatable")
{
    gen::Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        Schema s = gen::world(rng).schema;
        if (i % 3 == 0)
            s.tables.push_back(s.tables.front());
        CHECK(validate_schema(s) == validate_schema(s));
    }
}

TEST_CASE("find_column")
{
    const Column& street = find_column(fixture_schema(), "SUPPLIERS", "STREET");
    CHECK(street.type == DataType::varchar(32));
    CHECK(street.nullable);
    CHECK(street.ordinal == 3);
    CHECK(&find_column(fixture_schema(), "suppliers", "street") == &street);
    CHECK_THROWS_AS(find_column(fixture_schema(), "SUPPLIERS", "ZIPCODE"), ColumnNotFound);
    CHECK_THROWS_AS(find_column(fixture_schema(), "NOPE", "STREET"), TableNotFound);
    try {
        find_column(fixture_schema(), "SUPPLIERS", "ZIPCODE");
    } catch (const ColumnNotFound& e) {
        CHECK(e.column() == "ZIPCODE");
    }
}

TEST_CASE("dependent constraints of FK3TEMP.SRNO")
{
    auto deps = dependent_constraints(fixture_schema(), "FK3TEMP", "SRNO");
    std::set<std::string> kinds;
    for (const auto& d : deps)
        kinds.insert(std::string(to_string(d.constraint.kind)) + "@" + d.owning_table);
    CHECK(kinds == std::set<std::string>{"NOT_NULL@FK3TEMP", "UNIQUE@FK3TEMP", "FOREIGN_KEY@FK2TEMP"});
    CHECK(names(deps).count("FK3TEMP:UQ_SRNO"));
    CHECK(names(deps).count("FK2TEMP:FK2TEMP_FK03"));
}

TEST_CASE("dependent constraints of SUPPLIERS.CITY are empty")
{
    CHECK(dependent_constraints(fixture_schema(), "SUPPLIERS", "CITY").empty());
    CHECK_THROWS_AS(dependent_constraints(fixture_schema(), "NOPE"), TableNotFound);
}

TEST_CASE("table-wide dependents of PK2TEMP include inbound keys")
{
    auto all = names(dependent_constraints(fixture_schema(), "PK2TEMP"));
    CHECK(all.count("PK2TEMP:PK_NUMBVALUE"));
    CHECK(all.count("PK2TEMP:UQ_NUMB"));
    CHECK(all.count("FK2TEMP:FK_NUMB2VAL2_PK2TEMP_NUMBVL2"));
}

TEST_CASE("column dependents are a subset of table dependents and resolve")
{
    gen::Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        Schema s = gen::world(rng).schema;
        REQUIRE(validate_schema(s).empty());
        for (const Table& t : s.tables) {
            auto all = names(dependent_constraints(s, t.name()));
            for (const Column& c : t.columns()) {
                for (const auto& d : dependent_constraints(s, t.name(), c.name)) {
                    CHECK(all.count(d.owning_table + ":" + d.constraint.name));
                    const Table* owner = s.find_table(d.owning_table);
                    REQUIRE(owner);
                    for (const auto& col : d.constraint.columns)
                        CHECK(owner->find_column(col));
                    if (d.constraint.kind == ConstraintKind::ForeignKey) {
                        const Table* parent = s.find_table(d.constraint.referenced_table);
                        REQUIRE(parent);
                        for (const auto& col : d.constraint.referenced_columns)
                            CHECK(parent->find_column(col));
                    }
                }
            }
        }
    }
}

TEST_CASE("column views follow NOT NULL and DEFAULT constraints")
{
    Table t("T");
    t.add_column("A", DataType::number(3, 0));
    t.add_column("B", DataType::varchar(5));
    CHECK(t.columns()[0].nullable);
    Constraint nn;
    nn.kind = ConstraintKind::NotNull;
    nn.name = t.next_synthetic_name(ConstraintKind::NotNull);
    nn.system_named = true;
    nn.columns = {"A"};
    nn.level = ConstraintLevel::ColumnLevel;
    t.add_constraint(nn);
    CHECK(nn.name == "SYS_T_NN_1");
    CHECK_FALSE(t.columns()[0].nullable);
    CHECK(t.next_synthetic_name(ConstraintKind::NotNull) == "SYS_T_NN_2");

    Constraint df;
    df.kind = ConstraintKind::Default;
    df.name = "SYS_T_DF_1";
    df.columns = {"B"};
    df.default_literal = "'x'";
    df.level = ConstraintLevel::ColumnLevel;
    t.add_constraint(df);
    CHECK(t.columns()[1].default_value == "'x'");

    t.rename_column("B", "C");
    CHECK(t.find_constraint("SYS_T_DF_1")->columns == std::vector<std::string>{"C"});
    t.drop_constraint("SYS_T_NN_1");
    CHECK(t.columns()[0].nullable);
    t.drop_column("A");
    CHECK(t.columns().size() == 1);
    CHECK(t.columns()[0].ordinal == 1);
}

TEST_CASE("primary key members are required")
{
    const Table& t = fixture_schema().table("SUPPLIERS");
    CHECK(t.is_required("SUP_ID"));
    CHECK_FALSE(t.is_required("CITY"));
    CHECK(t.primary_key()->name == "SUPP_PK");
}

TEST_CASE("referenced key of a foreign key on a unique key")
{
    const Schema& s = fixture_schema();
    const Constraint* fk = s.table("FK2TEMP").find_constraint("FK2TEMP_FK03");
    REQUIRE(fk);
    const Constraint* key = referenced_key(s, *fk);
    REQUIRE(key);
    CHECK(key->name == "UQ_SRNO");
    auto inbound = inbound_foreign_keys(s, "FK3TEMP", *key);
    REQUIRE(inbound.size() == 1);
    CHECK(inbound[0].constraint.name == "FK2TEMP_FK03");
}

TEST_CASE("expression renames touch identifiers only")
{
    CHECK(rename_in_expression("checkval > 10 AND 'checkval' <> x", "CHECKVAL", "CV") == "CV > 10 AND 'checkval' <> x");
    // Keywords are identifier tokens too; callers keep the ones naming columns.
    CHECK(expression_identifiers("checkval > 10 OR b IS NULL") ==
          std::vector<std::string>{"CHECKVAL", "OR", "B", "IS", "NULL"});
}
