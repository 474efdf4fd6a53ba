// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "support.hpp"

#include "refactordb/cli.hpp"
#include "refactordb/errors.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace refactordb;
namespace fs = std::filesystem;

namespace {

const std::string kHeader = "\n\n\n";
const std::string kMergeStreet = kHeader + "5\nEMP24JAN09120206\nSUPPLIERS\nSTREET\nn\nY\n99\n";
const std::string kReferenceAlter = "ALTER TABLE EMP24JAN09120206 ADD STREET VARCHAR2(32)";

// The five constraint-string rows of the reference session.
const char* const kReferenceRows[] = {
    "SUP_ID\t1\tSUPPLIERS\tSUP_ID NUMBER(3,0) CONSTRAINT SUPP_PK PRIMARY KEY (SUP_ID)",
    "SUP_NAME\t2\tSUPPLIERS\tSUP_NAME VARCHAR2(32)",
    "STREET\t3\tSUPPLIERS\tSTREET VARCHAR2(32)",
    "CITY\t4\tSUPPLIERS\tCITY VARCHAR2(32)",
    "STATE\t5\tSUPPLIERS\tSTATE VARCHAR2(3)",
};

fs::path scratch(const std::string& name)
{
    fs::path dir = fs::temp_directory_path() / ("refactordb_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

CliConfig fixture_config()
{
    CliConfig config;
    config.fixture = true;
    config.fixed_timestamp = testsupport::reference_time();
    config.schema_dir = testsupport::corpus_dir();
    return config;
}

struct Run {
    int code = 0;
    std::string out;
    std::string transcript;
};

Run interactive(const std::string& input, const CliConfig& config = fixture_config())
{
    std::istringstream in(input);
    std::ostringstream out;
    Run run;
    run.code = run_interactive(config, in, out, &run.transcript);
    run.out = out.str();
    return run;
}

struct BatchRun {
    int code = 0;
    std::string out;
    std::string err;
};

BatchRun batch(const std::string& text, const CliConfig& config = fixture_config())
{
    fs::path dir = scratch("batch");
    fs::path file = dir / "requests.txt";
    std::ofstream(file) << text;
    std::ostringstream out, err;
    BatchRun run;
    run.code = run_batch(file, config, out, err);
    run.out = out.str();
    run.err = err.str();
    return run;
}

bool contains(const std::string& text, const std::string& what)
{
    return text.find(what) != std::string::npos;
}

std::size_t count(const std::string& text, const std::string& what)
{
    std::size_t n = 0;
    for (auto at = text.find(what); at != std::string::npos; at = text.find(what, at + 1))
        ++n;
    return n;
}

/// Exit status of the built binary run through the shell.
int run_binary(const std::string& args)
{
    const char* cli = std::getenv("REFACTORDB_CLI");
    REQUIRE(cli);
    int status = std::system((std::string(cli) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST_CASE("the menu")
{
    std::string menu = render_menu();
    CHECK(contains(menu, "Choose Refactoring by entering the number"));
    auto referential = menu.find("Referential Integrity Refactoring");
    REQUIRE(referential != std::string::npos);
    CHECK(menu.find("24. Drop Constraint") > referential);
    for (const char* item :
         {"1. Drop Column", "2. Drop Table", "3. Move Column", "4. Merge Columns : for single table only",
          "5. Merge Tables", "6. Rename Column", "31. Introduce Default Value", "32. Make Column Non Nullable",
          "41. Add New Column", "91. create tables to test", "92. Display constraints on table",
          "93. Display table schema", "94. Display table", "99. exit"}) {
        CAPTURE(item);
        CHECK(contains(menu, std::string("\n") + item + "\n"));
    }
    for (const char* heading : {"Structural Refactoring", "Data Quality Refactoring", "Data Transformations",
                                "HouseKeeping"})
        CHECK(contains(menu, heading));
    CHECK_FALSE(contains(menu, "\n7. "));
}

TEST_CASE("the reference merge session")
{
    Run run = interactive(kMergeStreet);
    CHECK(run.code == kExitOk);
    CHECK(contains(run.transcript, "\n" + kReferenceAlter + "\n"));
    for (const char* row : kReferenceRows)
        CHECK(contains(run.transcript, std::string("\n") + row + "\n"));
    CHECK(contains(run.transcript, "[0]TABLENAME\t[1]NoOfRows\nEMP24JAN09120206\t9\nSUPPLIERS\t6\n"));
    CHECK(contains(run.transcript, "Do you wish to continue with the changes? Press Y for Yes, N for No : Y"));
    // Back at the menu after the change.
    auto alter = run.transcript.find(kReferenceAlter);
    CHECK(run.transcript.find("Choose Refactoring by entering the number", alter) != std::string::npos);

    Run again = interactive(kMergeStreet);
    CHECK(again.transcript == run.transcript);
    std::string golden = testsupport::read_file(testsupport::source_dir() / "tests" / "golden" /
                                                "merge_tables_transcript.txt");
    CHECK(run.transcript == golden);
}

TEST_CASE("exit and invalid choices")
{
    Run quit = interactive(kHeader + "99\n");
    CHECK(quit.code == kExitOk);
    CHECK(count(quit.transcript, "Choose Refactoring by entering the number") == 1);

    Run seven = interactive(kHeader + "7\n99\n");
    CHECK(seven.code == kExitOk);
    CHECK(contains(seven.transcript, "invalid choice"));
    CHECK(count(seven.transcript, "Choose Refactoring by entering the number") == 2);

    Run words = interactive(kHeader + "merge\n99\n");
    CHECK(contains(words.transcript, "invalid choice"));

    Run eof = interactive(kHeader);
    CHECK(eof.code == kExitOk);
}

TEST_CASE("the header flow and the password")
{
    Run run = interactive("ansi\nalice\nsecret\n99\n");
    CHECK(contains(run.transcript, "Driver : ansi"));
    CHECK(contains(run.transcript, "connect made by : userid alice"));
    CHECK_FALSE(contains(run.transcript, "secret"));
    CHECK_FALSE(contains(run.out, "secret"));
    CHECK(contains(run.transcript, "24 - Jan - 2009 12:02:06"));
}

TEST_CASE("91 then 92 lists both foreign keys of FK2TEMP")
{
    CliConfig config;
    config.fixed_timestamp = testsupport::reference_time();
    config.schema_dir = scratch("empty");
    Run run = interactive(kHeader + "92\nFK2TEMP\n91\n92\nFK2TEMP\n99\n", config);
    CHECK(run.code == kExitOk);
    auto seeded = run.transcript.find("created table FK2TEMP");
    REQUIRE(seeded != std::string::npos);
    std::string after = run.transcript.substr(seeded);
    CHECK(contains(after, "CONSTRAINT FK_NUMB2VAL2_PK2TEMP_NUMBVL2 FOREIGN KEY (NUMB2,VALUE2) REFERENCES PK2TEMP (NUMB,VALUE)"));
    CHECK(contains(after, "CONSTRAINT FK2TEMP_FK03 FOREIGN KEY (SRNO) REFERENCES FK3TEMP (SRNO)"));
    CHECK(contains(run.transcript.substr(0, seeded), "table not found"));
    for (const char* table : {"PK2TEMP", "FK3TEMP", "TESTNULL", "EMP", "SUPPLIERS", "EMP24JAN09120206"})
        CHECK(contains(run.transcript, std::string("created table ") + table + "\n"));
}

TEST_CASE("declining the confirmation changes nothing")
{
    struct Case {
        std::string input;
        std::string table;
    };
    // Each destructive menu entry, answered N at the confirmation.
    std::vector<Case> cases = {
        {"1\nSUPPLIERS\nCITY\nY\nN\n", "SUPPLIERS"},
        {"2\nSUPPLIERS\nY\nN\n", "SUPPLIERS"},
        {"3\nSUPPLIERS\nDEPT\nCITY\nSUPPLIERS.SUP_ID = DEPT.DEPTNO\nY\nN\n", "SUPPLIERS"},
        {"4\nSUPPLIERS\nSTREET\nY\nCITY\nN\nC\n, \nY\nN\n", "SUPPLIERS"},
        {"24\nFK2TEMP\nFK2TEMP_FK03\nY\nN\n", "FK2TEMP"},
        {"32\nSUPPLIERS\nSTREET\n'unknown'\nN\n", "SUPPLIERS"},
    };
    for (const Case& c : cases) {
        CAPTURE(c.input);
        std::string show = "93\n" + c.table + "\n94\n" + c.table + "\n92\n" + c.table + "\n";
        Run run = interactive(kHeader + show + c.input + show + "99\n");
        CHECK(run.code == kExitOk);
        auto prompt = run.transcript.find("Do you wish to continue with the changes?");
        auto declined = run.transcript.find("No changes made.");
        REQUIRE(prompt != std::string::npos);
        REQUIRE(declined != std::string::npos);
        CHECK(prompt < declined);
        std::string before = run.transcript.substr(0, prompt);
        std::string after = run.transcript.substr(declined);
        auto first_show = before.find("Type : 93");
        auto first_end = before.find("Type : ", before.find("Type : 92") + 1);
        auto second_show = after.find("Type : 93");
        auto second_end = after.find("Type : 99");
        REQUIRE(first_show != std::string::npos);
        REQUIRE(second_show != std::string::npos);
        CHECK(before.substr(first_show, first_end - first_show) == after.substr(second_show, second_end - second_show));
    }
}

TEST_CASE("batch lines")
{
    CHECK_FALSE(parse_batch_line("").has_value());
    CHECK_FALSE(parse_batch_line("   # a comment").has_value());
    auto merge = parse_batch_line("MERGE_TABLES target_table=EMP24JAN09120206 source_table=SUPPLIERS columns=STREET,CITY");
    REQUIRE(merge);
    const auto& m = std::get<MergeTablesRequest>(*merge);
    CHECK(m.target_table == "EMP24JAN09120206");
    CHECK(m.columns == std::vector<std::string>{"STREET", "CITY"});

    auto concat = parse_batch_line(R"(MERGE_COLUMNS table=SUPPLIERS columns=STREET,CITY delimiter=", ""x"" " backup=Y)");
    REQUIRE(concat);
    const auto& c = std::get<MergeColumnsRequest>(*concat);
    CHECK(c.delimiter == ", \"x\" ");
    CHECK(c.backup);
    CHECK(c.mode == MergeMode::Concatenate);

    auto add = parse_batch_line("INTRODUCE_NEW_COLUMN table=EMP column=BONUS type=NUMBER(3,0) nullable=N default_value=0");
    REQUIRE(add);
    const auto& a = std::get<IntroduceNewColumnRequest>(*add);
    CHECK(a.type == DataType::number(3, 0));
    CHECK_FALSE(a.nullable);
    CHECK(a.default_value == "0");

    CHECK_THROWS_AS(parse_batch_line("SPLIT_TABLE table=T"), std::invalid_argument);
    CHECK_THROWS_AS(parse_batch_line("DROP_TABLE table"), std::invalid_argument);
    CHECK_THROWS_AS(parse_batch_line("DROP_TABLE table=T table=U"), std::invalid_argument);
    CHECK_THROWS_AS(parse_batch_line("DROP_TABLE table=T colour=red"), std::invalid_argument);
    CHECK_THROWS_AS(parse_batch_line("DROP_TABLE table=T backup=maybe"), std::invalid_argument);
    CHECK_THROWS_AS(parse_batch_line("DROP_TABLE table=\"T"), std::invalid_argument);
}

TEST_CASE("batch merge writes the reference ALTER")
{
    fs::path dir = scratch("outputs");
    CliConfig config = fixture_config();
    config.out_script = dir / "out.sql";
    config.out_log = dir / "log.tsv";
    BatchRun run = batch("# the reference session\nMERGE_TABLES target_table=EMP24JAN09120206 source_table=SUPPLIERS "
                         "columns=STREET\nDROP_CONSTRAINT table=FK2TEMP constraint=FK2TEMP_FK03\n",
                         config);
    CHECK(run.code == kExitOk);
    CHECK(run.err.empty());
    std::string script = testsupport::read_file(dir / "out.sql");
    CHECK(contains(script, kReferenceAlter + ";\n"));
    CHECK(contains(script, "-- refactoring: MERGE_TABLES @ 2009-01-24T12:02:06\n"));
    std::string log = testsupport::read_file(dir / "log.tsv");
    CHECK(log == "SCOTT\tFK2TEMP_FK03\tR\tFK2TEMP\tSCOTT\tUQ_SRNO\t2009-01-24T12:02:06\t\t\n");
}

TEST_CASE("batch exit codes")
{
    BatchRun empty = batch("");
    CHECK(empty.code == kExitOk);
    CHECK(empty.out.empty());

    BatchRun second = batch("INTRODUCE_NEW_COLUMN table=EMP column=ZIP type=VARCHAR2(5)\n"
                            "DROP_TABLE table=PK2TEMP\n");
    CHECK(second.code == kExitGuard);
    CHECK(contains(second.out, "ALTER TABLE EMP ADD ZIP VARCHAR2(5);"));
    CHECK(contains(second.err, ":2: DROP_TABLE"));
    CHECK(contains(second.err, "FK_NUMB2VAL2_PK2TEMP_NUMBVL2"));

    BatchRun missing = batch("DROP_COLUMN table=SUPPLIERS column=ZIPCODE\n");
    CHECK(missing.code == kExitGuard);

    BatchRun malformed = batch("DROP_COLUMN table=SUPPLIERS column=CITY\nNOT_A_KIND x=1\n");
    CHECK(malformed.code == kExitInput);
    CHECK(contains(malformed.err, ":2:"));
    CHECK(contains(malformed.out, "DROP COLUMN CITY"));

    BatchRun incomplete = batch("DROP_COLUMN table=SUPPLIERS\n");
    CHECK(incomplete.code == kExitInput);

    std::ostringstream out, err;
    CHECK(run_batch("/nonexistent/requests.txt", fixture_config(), out, err) == kExitInput);

    CliConfig bad_dir = fixture_config();
    bad_dir.schema_dir = "/nonexistent/schema";
    CHECK(batch("", bad_dir).code == kExitInput);

    CliConfig unwritable = fixture_config();
    unwritable.out_script = "/nonexistent/dir/out.sql";
    CHECK(batch("", unwritable).code == kExitInput);
}

TEST_CASE("batch and interactive emit the same SQL")
{
    fs::path dir = scratch("same");
    CliConfig config = fixture_config();
    config.out_script = dir / "interactive.sql";
    Run run = interactive(kMergeStreet + "", config);
    REQUIRE(run.code == kExitOk);
    config.out_script = dir / "batch.sql";
    BatchRun b = batch("MERGE_TABLES target_table=EMP24JAN09120206 source_table=SUPPLIERS columns=STREET\n", config);
    REQUIRE(b.code == kExitOk);
    std::string from_batch = testsupport::read_file(dir / "batch.sql");
    CHECK_FALSE(from_batch.empty());
    CHECK(from_batch == testsupport::read_file(dir / "interactive.sql"));
}

TEST_CASE("sessions")
{
    Session session(fixture_config());
    CHECK(session.store().schema.find_table("SUPPLIERS"));
    CHECK(session.seed_fixture().empty());
    Plan plan = session.plan(MergeTablesRequest{"EMP24JAN09120206", "SUPPLIERS", {"STREET"}});
    const DataStore before = session.store();
    session.apply(plan);
    CHECK(session.store().schema.table("EMP24JAN09120206").find_column("STREET"));
    CHECK_FALSE(session.store() == before);
    CHECK(contains(session.script(), kReferenceAlter));
    CHECK_THROWS_AS(session.plan(MergeTablesRequest{"EMP24JAN09120206", "SUPPLIERS", {"STREET"}}), GuardFailure);

    CliConfig missing;
    missing.schema_dir = "/nonexistent/schema";
    CHECK_THROWS_AS(Session{missing}, IoError);
}

TEST_CASE("the built binary")
{
    fs::path dir = scratch("binary");
    std::ofstream(dir / "ok.txt") << "MERGE_TABLES target_table=EMP24JAN09120206 source_table=SUPPLIERS columns=STREET\n";
    std::ofstream(dir / "guard.txt") << "DROP_TABLE table=PK2TEMP\n";
    std::string common = "--fixture --fixed-timestamp 2009-01-24T12:02:06 --schema-dir " +
                         testsupport::corpus_dir().string() + " --out-script " + (dir / "out.sql").string();
    CHECK(run_binary(common + " --batch " + (dir / "ok.txt").string()) == 0);
    CHECK(contains(testsupport::read_file(dir / "out.sql"), kReferenceAlter));
    CHECK(run_binary(common + " --batch " + (dir / "guard.txt").string()) == 1);
    CHECK(run_binary(common + " --batch " + (dir / "missing.txt").string()) == 3);
    CHECK(run_binary("--dialect sybase") != 0);
    CHECK(run_binary("--log-table-ddl") == 0);
}
