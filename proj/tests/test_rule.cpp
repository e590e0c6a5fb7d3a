#include "doctest.h"

#include "ca2d/errors.hpp"
#include "ca2d/rule.hpp"

using namespace ca2d;

TEST_SUITE("rule") {

TEST_CASE("parses the F3 rule file") {
    RuleSpec r = parse_rule(
        "# additive, up and right neighbours\n"
        "alphabet = 2\n"
        "radius = 1\n"
        "type = linear\n"
        "term = (0,1) 1\n"
        "term = (1,0) 1\n");
    RuleSpec f3 = builtin_rule("F3");
    CHECK(r.q == f3.q);
    CHECK(r.radius == f3.radius);
    REQUIRE(r.terms.size() == 2);
    CHECK(r.terms[0].di == f3.terms[0].di);
    CHECK(r.terms[0].dj == f3.terms[0].dj);
    CHECK(r.terms[1].di == f3.terms[1].di);
    CHECK(r.terms[1].dj == f3.terms[1].dj);
    CHECK(r.hash() == f3.hash());
}

TEST_CASE("identity rule file") {
    RuleSpec r = parse_rule("alphabet = 2\nradius = 0\ntype = linear\nterm = (0,0) 1\n");
    CHECK(r.radius == 0);
    REQUIRE(r.terms.size() == 1);
    CHECK(r.terms[0].coeff == 1);
}

TEST_CASE("duplicate offsets cancel mod q") {
    RuleSpec r = parse_rule(
        "alphabet = 2\nradius = 1\ntype = linear\nterm = (0,1) 1\nterm = (0,1) 1\n");
    CHECK(r.terms.empty()); // constant-0 rule
}

TEST_CASE("duplicate offsets sum mod q") {
    RuleSpec r = parse_rule(
        "alphabet = 5\nradius = 1\ntype = linear\nterm = (1,0) 3\nterm = (1,0) 4\n");
    REQUIRE(r.terms.size() == 1);
    CHECK(r.terms[0].coeff == 2);
}

TEST_CASE("zero coefficients are dropped") {
    RuleSpec r = parse_rule(
        "alphabet = 3\nradius = 1\ntype = linear\nterm = (1,0) 0\nterm = (0,1) 2\n");
    REQUIRE(r.terms.size() == 1);
    CHECK(r.terms[0].dj == 1);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_rule("alphabet = 2\nradius = 1\nbogus\n"),
                         doctest::Contains("line 3"), parse_error);
    CHECK_THROWS_WITH_AS(
        parse_rule("alphabet = 2\nradius = 1\ntype = linear\nterm = (2,0) 1\n"),
        doctest::Contains("outside the rule radius"), parse_error);
    CHECK_THROWS_WITH_AS(
        parse_rule("alphabet = 2\nradius = 1\ntype = linear\nterm = (1,0) 2\n"),
        doctest::Contains("coefficient"), parse_error);
}

TEST_CASE("table rules parse and must be total") {
    // radius 0, q=2: two patterns
    RuleSpec r = parse_rule("alphabet = 2\nradius = 0\ntype = table\nmap = 0 1\nmap = 1 0\n");
    CHECK(r.table.size() == 2);
    CHECK(r.table[0] == 1);
    CHECK(r.table[1] == 0);
    CHECK_THROWS_WITH_AS(parse_rule("alphabet = 2\nradius = 0\ntype = table\nmap = 0 1\n"),
                         doctest::Contains("incomplete table"), parse_error);
}

TEST_CASE("oversized tables are rejected at parse time") {
    // q=2, radius 3: 2^49 patterns
    CHECK_THROWS_WITH_AS(parse_rule("alphabet = 2\nradius = 3\ntype = table\n"),
                         doctest::Contains("2^24"), parse_error);
}

TEST_CASE("builtins match their definitions") {
    RuleSpec f1 = builtin_rule("F1");
    CHECK(f1.radius == 1);
    REQUIRE(f1.terms.size() == 1);
    CHECK(f1.terms[0].di == 1);
    CHECK(f1.terms[0].dj == 0);

    RuleSpec f3 = builtin_rule("F3");
    REQUIRE(f3.terms.size() == 2);

    RuleSpec fk = builtin_rule("Fk", 3);
    CHECK(fk.radius == 3);
    REQUIRE(fk.terms.size() == 2);
    CHECK(fk.terms[0].di == 0);
    CHECK(fk.terms[0].dj == 3);
    CHECK(fk.terms[1].di == 3);
    CHECK(fk.terms[1].dj == 0);

    CHECK_THROWS_AS(builtin_rule("F9"), domain_error);
    CHECK_THROWS_AS(builtin_rule("Fk", 0), domain_error);
}

TEST_CASE("table conversion preserves behavior") {
    RuleSpec f3 = builtin_rule("F3");
    RuleSpec t = rule_to_table(f3);
    CHECK(t.table.size() == 512);
    std::vector<uint8_t> nbhd(9, 0);
    for (int pat = 0; pat < 512; ++pat) {
        for (int pos = 0; pos < 9; ++pos) nbhd[8 - pos] = (pat >> pos) & 1;
        CHECK(apply_rule(f3, nbhd) == apply_rule(t, nbhd));
    }
}

TEST_CASE("composed coefficients honor cancellation over Z_2") {
    // (1 + sigma)^2 = 1 + sigma^2 over GF(2): the middle offset vanishes
    RuleSpec r = parse_rule(
        "alphabet = 2\nradius = 1\ntype = linear\nterm = (0,0) 1\nterm = (1,0) 1\n");
    auto deps = dependence_sets(r, 2);
    REQUIRE(deps.size() == 2);
    CHECK(deps[1].size() == 2);
    CHECK(deps[1].count({0, 0}) == 1);
    CHECK(deps[1].count({2, 0}) == 1);
    CHECK(deps[1].count({1, 0}) == 0);
}

TEST_CASE("canonical hash separates rules") {
    CHECK(builtin_rule("F1").hash() != builtin_rule("F2").hash());
    CHECK(builtin_rule("Fk", 2).hash() != builtin_rule("Fk", 3).hash());
}

} // TEST_SUITE
