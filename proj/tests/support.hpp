// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "refactordb/catalog.hpp"
#include "refactordb/schema_model.hpp"
#include "refactordb/versioning.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

inline std::filesystem::path source_dir()
{
    return REFACTORDB_SOURCE_DIR;
}

inline std::filesystem::path corpus_dir()
{
    return source_dir() / "tests" / "fixtures" / "corpus";
}

inline refactordb::Schema corpus()
{
    return refactordb::load_from_scripts(refactordb::script_files(corpus_dir()));
}

inline std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

/// 2009-01-24 12:02:06 UTC, built from calendar fields.
inline refactordb::Timestamp reference_time()
{
    using namespace std::chrono;
    return sys_days{year{2009} / January / 24} + hours{12} + minutes{2} + seconds{6};
}

/// DDMONYYHHMISS computed with the C library, independent of the engine.
inline std::string stamp_oracle(refactordb::Timestamp ts)
{
    std::time_t t = std::chrono::system_clock::to_time_t(ts);
    std::tm parts{};
    gmtime_r(&t, &parts);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%d%b%y%H%M%S", &parts);
    std::string out = buffer;
    for (char& c : out)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

/// Whitespace-canonical form: runs collapse to one space between word
/// characters and vanish next to punctuation.
inline std::string squash(std::string_view text)
{
    auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    std::string out;
    bool space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            space = true;
            continue;
        }
        if (space && !out.empty() && word(out.back()) && word(c))
            out += ' ';
        space = false;
        out += c;
    }
    return out;
}

/// `table|kind|name|columns|detail`, the layout of corpus_inventory.txt.
/// Unnamed constraints show `*`; detail is the reference, default literal
/// or check text.
inline std::string inventory_line(const refactordb::Table& table, const refactordb::Constraint& c)
{
    using refactordb::ConstraintKind;
    auto list = [](const std::vector<std::string>& items) {
        std::string out;
        for (const auto& item : items)
            out += (out.empty() ? "" : ",") + item;
        return out;
    };
    std::string detail;
    if (c.kind == ConstraintKind::ForeignKey)
        detail = c.referenced_table + "(" + list(c.referenced_columns) + ")";
    else if (c.kind == ConstraintKind::Default)
        detail = c.default_literal;
    else if (c.kind == ConstraintKind::Check)
        detail = c.check_expression;
    return table.name() + "|" + std::string(refactordb::to_string(c.kind)) + "|" + (c.system_named ? "*" : c.name) +
           "|" + list(c.columns) + "|" + detail;
}

inline std::vector<std::string> inventory(const refactordb::Schema& schema)
{
    std::vector<std::string> out;
    for (const auto& t : schema.tables) {
        for (const auto& c : t.constraints())
            out.push_back(inventory_line(t, c));
    }
    return out;
}

/// Non-comment lines of tests/fixtures/corpus_inventory.txt.
inline std::vector<std::string> expected_inventory()
{
    std::istringstream in(read_file(source_dir() / "tests" / "fixtures" / "corpus_inventory.txt"));
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line[0] != '#')
            out.push_back(line);
    }
    return out;
}

} // namespace testsupport
