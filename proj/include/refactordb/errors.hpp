// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace refactordb {

/// Root of every error the engine raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TableNotFound : public Error {
public:
    explicit TableNotFound(std::string table)
        : Error("table not found: " + table), table_(std::move(table)) {}
    const std::string& table() const noexcept { return table_; }

private:
    std::string table_;
};

class ColumnNotFound : public Error {
public:
    ColumnNotFound(std::string table, std::string column)
        : Error("column not found: " + table + "." + column), table_(std::move(table)),
          column_(std::move(column)) {}
    const std::string& table() const noexcept { return table_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::string table_;
    std::string column_;
};

class ConstraintNotFound : public Error {
public:
    ConstraintNotFound(std::string table, std::string constraint)
        : Error("constraint not found: " + constraint + " on " + table), constraint_(std::move(constraint)) {}
    const std::string& constraint() const noexcept { return constraint_; }

private:
    std::string constraint_;
};

/// Syntax error with a 1-based line/column of the first offending token.
class SyntaxError : public Error {
public:
    SyntaxError(std::string message, std::size_t line, std::size_t column, std::string expected = {})
        : Error(format(message, line, column, expected)), line_(line), column_(column),
          expected_(std::move(expected)), detail_(std::move(message)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& expected() const noexcept { return expected_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    static std::string format(const std::string& message, std::size_t line, std::size_t column,
                              const std::string& expected)
    {
        std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
        if (!expected.empty())
            out += " (expected " + expected + ")";
        return out;
    }

    std::size_t line_;
    std::size_t column_;
    std::string expected_;
    std::string detail_;
};

/// Recognized SQL that lies outside the supported CREATE TABLE grammar.
class UnsupportedConstruct : public Error {
public:
    UnsupportedConstruct(std::string construct, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": unsupported construct: " + construct),
          construct_(std::move(construct)), line_(line), column_(column) {}
    const std::string& construct() const noexcept { return construct_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string construct_;
    std::size_t line_;
    std::size_t column_;
};

/// A parse error inside a multi-statement script or file.
class ScriptError : public Error {
public:
    ScriptError(std::string source, std::size_t statement_index, const std::string& cause)
        : Error((source.empty() ? std::string() : source + ": ") + "statement " + std::to_string(statement_index) +
                ": " + cause),
          source_(std::move(source)), statement_index_(statement_index) {}
    const std::string& source() const noexcept { return source_; }
    std::size_t statement_index() const noexcept { return statement_index_; }

private:
    std::string source_;
    std::size_t statement_index_;
};

class DialectUnsupportedType : public Error {
public:
    using Error::Error;
};

class DialectUnsupportedStep : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    IoError(std::string path, const std::string& why) : Error(path + ": " + why), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class AdapterError : public Error {
public:
    AdapterError(std::string table, const std::string& cause)
        : Error("catalog adapter failed" + (table.empty() ? std::string() : " on table " + table) + ": " + cause),
          table_(std::move(table)) {}
    const std::string& table() const noexcept { return table_; }

private:
    std::string table_;
};

class NameCollision : public Error {
public:
    explicit NameCollision(std::string name) : Error("name already exists: " + name), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class FieldOverflow : public Error {
public:
    FieldOverflow(std::string field, std::size_t width)
        : Error("value for " + field + " exceeds width " + std::to_string(width)), field_(std::move(field)),
          width_(width) {}
    const std::string& field() const noexcept { return field_; }
    std::size_t width() const noexcept { return width_; }

private:
    std::string field_;
    std::size_t width_;
};

/// One step of a plan could not be applied.
class StepFailure : public Error {
public:
    StepFailure(std::size_t step_index, std::string cause)
        : Error("step " + std::to_string(step_index) + " failed: " + cause), step_index_(step_index),
          cause_(std::move(cause)) {}
    std::size_t step_index() const noexcept { return step_index_; }
    const std::string& cause() const noexcept { return cause_; }

private:
    std::size_t step_index_;
    std::string cause_;
};

/// Raised by apply_plan; the input store is left untouched.
class ExecutionAborted : public StepFailure {
public:
    explicit ExecutionAborted(const StepFailure& failure) : StepFailure(failure) {}
};

} // namespace refactordb
