// SPDX-License-Identifier: Apache-2.0

#include "refactordb/cli.hpp"
#include "refactordb/versioning.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include <unistd.h>

int main(int argc, char** argv)
{
    using namespace refactordb;

    CLI::App app{"Schema refactoring tool"};
    std::string dialect = "oraclelike";
    std::string schema_dir;
    std::string batch;
    std::string out_script;
    std::string out_log;
    std::string fixed_timestamp;
    std::string catalog_db;
    std::string transcript_path;
    std::string owner = "SCOTT";
    bool fixture = false;
    bool log_table_ddl = false;

    app.add_option("--dialect", dialect, "oraclelike or ansi")->check(CLI::IsMember({"oraclelike", "ansi"}));
    app.add_option("--schema-dir", schema_dir, "directory of *.sql CREATE TABLE scripts");
    app.add_option("--batch", batch, "run the requests in FILE without prompts");
    app.add_option("--out-script", out_script, "write the emitted SQL here");
    app.add_option("--out-log", out_log, "write the version-log mirror here");
    app.add_option("--fixed-timestamp", fixed_timestamp, "use this ISO-8601 time instead of the clock");
    app.add_option("--catalog-db", catalog_db, "load the schema from this SQLite database");
    app.add_option("--owner", owner, "schema owner recorded in the version log");
    app.add_option("--transcript", transcript_path, "write the interactive transcript here");
    app.add_flag("--fixture", fixture, "start with the test tables of menu item 91");
    app.add_flag("--log-table-ddl", log_table_ddl, "print the version-log CREATE TABLE and exit");
    CLI11_PARSE(app, argc, argv);

    CliConfig config;
    config.dialect = find_dialect(dialect);
    if (!schema_dir.empty())
        config.schema_dir = schema_dir;
    if (!out_script.empty())
        config.out_script = out_script;
    if (!out_log.empty())
        config.out_log = out_log;
    if (!catalog_db.empty())
        config.catalog_db = catalog_db;
    if (!fixed_timestamp.empty()) {
        config.fixed_timestamp = parse_timestamp(fixed_timestamp);
        if (!config.fixed_timestamp) {
            std::cerr << "--fixed-timestamp: expected YYYY-MM-DDTHH:MM:SS\n";
            return kExitInput;
        }
    }
    config.owner = owner;
    config.fixture = fixture;
    config.echo_input = !isatty(STDIN_FILENO);

    if (log_table_ddl) {
        std::cout << emit_log_table_ddl(*config.dialect) << ";\n";
        return kExitOk;
    }
    if (!batch.empty())
        return run_batch(batch, config, std::cout, std::cerr);

    std::string transcript;
    int status = run_interactive(config, std::cin, std::cout, transcript_path.empty() ? nullptr : &transcript);
    if (!transcript_path.empty()) {
        std::ofstream out(transcript_path, std::ios::binary);
        out << transcript;
        if (!out) {
            std::cerr << transcript_path << ": write failed\n";
            return kExitInput;
        }
    }
    return status;
}
