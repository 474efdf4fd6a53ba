// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"
#include "property_suites.hpp"

#include <iostream>

namespace {

void check(const props::SuiteResult& r)
{
    std::cout << r.summary() << "\n";
    CHECK_MESSAGE(r.ok(), r.summary());
    for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i)
        MESSAGE(r.failures[i]);
}

} // namespace

TEST_CASE("render then parse keeps every table")
{
    check(props::round_trip_suite());
}

TEST_CASE("injected step failures leave the store untouched")
{
    check(props::atomicity_suite());
}

TEST_CASE("concatenation joins sources row by row")
{
    check(props::concatenation_suite());
}

TEST_CASE("plans exist exactly when guards pass")
{
    check(props::guard_soundness_suite());
}

TEST_CASE("emitted identifiers fit the dialect")
{
    check(props::identifier_legality_suite());
}

TEST_CASE("identifier scan skips strings, comments and numbers")
{
    auto ids = props::script_identifiers("-- refactoring: X @ 2009\nUPDATE \"Mixed Case\" SET A_1 = 'it''s B' || 12.5;");
    CHECK(ids == std::vector<std::string>{"UPDATE", "Mixed Case", "SET", "A_1"});
}
