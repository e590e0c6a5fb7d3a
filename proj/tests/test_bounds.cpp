#include "doctest.h"

#include <cmath>

#include "ca2d/bounds.hpp"
#include "ca2d/errors.hpp"

using namespace ca2d;

namespace {

const double kPi = std::acos(-1.0);
const double kLog2 = std::log(2.0);

RuleSpec identity_rule() {
    RuleSpec r = parse_rule("alphabet = 2\nradius = 0\ntype = linear\nterm = (0,0) 1\n");
    r.name = "identity";
    return r;
}

// profile with a hand-set lambda curve, for closed-form quadrature checks
DirectionProfile synthetic_profile(int M, double (*lam)(double)) {
    DirectionProfile p;
    p.rule_name = "synthetic";
    p.n = 1;
    for (int k = 0; k <= M; ++k) p.angles.push_back(2 * kPi * k / M);
    for (double t : p.angles) {
        double v = lam(t);
        p.lambda_n.push_back(v);
        p.lambda_hat.push_back(v);
        p.method.push_back(ExtentMethod::exact);
        p.anchor.push_back({0, 0});
    }
    return p;
}

double golden_quadrant(int k) {
    return k * k * (kPi / 8 + 0.25) + std::sqrt(2.0) * k + kPi / 2;
}

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("rectangle factor golden values") {
    DirectionProfile id = profile(identity_rule(), 16, 16, ProfileStrategy::exact);
    CHECK(bound_rectangle(id) == doctest::Approx(1.0));

    DirectionProfile f3 = profile(builtin_rule("F3"), 64, 64, ProfileStrategy::exact);
    CHECK(bound_rectangle(f3) == doctest::Approx(4.0).epsilon(1e-9));

    for (int k : {1, 2, 3}) {
        DirectionProfile fk = profile(builtin_rule("Fk", k), 64, 64, ProfileStrategy::exact);
        CHECK(bound_rectangle(fk) == doctest::Approx(k * k + 2 * k + 1.0).epsilon(1e-9));
    }
}

TEST_CASE("integral factor: identity gives pi, constant 1 gives (2+sqrt2) pi") {
    DirectionProfile id = profile(identity_rule(), 32, 32, ProfileStrategy::exact);
    CHECK(bound_integral(id).value == doctest::Approx(kPi));

    DirectionProfile one = synthetic_profile(64, [](double) { return 1.0; });
    CHECK(bound_integral(one).value == doctest::Approx((2.0 + std::sqrt(2.0)) * kPi));
}

TEST_CASE("quadrant factor matches the worked closed forms") {
    for (int k : {1, 2, 3}) {
        DirectionProfile fk = profile(builtin_rule("Fk", k), 512, 256, ProfileStrategy::exact);
        QuadrantBound qb = bound_integral_quadrant(fk);
        CHECK(std::abs(qb.value - golden_quadrant(k)) <= 0.02 * k * k);
    }
    DirectionProfile id = profile(identity_rule(), 32, 32, ProfileStrategy::exact);
    CHECK(bound_integral_quadrant(id).value == doctest::Approx(kPi / 2));
}

TEST_CASE("quadrant sqrt2 variant dominates the worked evaluation") {
    DirectionProfile f3 = profile(builtin_rule("F3"), 128, 128, ProfileStrategy::exact);
    QuadrantBound qb = bound_integral_quadrant(f3);
    CHECK(qb.value_sqrt2 > qb.value);
}

TEST_CASE("quadrature error estimate brackets grid refinement") {
    DirectionProfile coarse = profile(builtin_rule("F3"), 256, 32, ProfileStrategy::exact);
    DirectionProfile fine = profile(builtin_rule("F3"), 256, 64, ProfileStrategy::exact);
    IntegralBound cb = bound_integral(coarse);
    IntegralBound fb = bound_integral(fine);
    CHECK(std::abs(fb.value - cb.value) <= 4 * cb.quadrature_error + 1e-6);
}

TEST_CASE("quadrant gap to the rectangle grows with k") {
    double prev_gap = 0.0;
    for (int k : {1, 2, 3}) {
        DirectionProfile fk = profile(builtin_rule("Fk", k), 256, 128, ProfileStrategy::exact);
        double gap = bound_rectangle(fk) - bound_integral_quadrant(fk).value;
        CHECK(gap > 0.0);
        CHECK(gap > prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("grid too coarse is rejected") {
    DirectionProfile p = profile(builtin_rule("F3"), 16, 4, ProfileStrategy::exact);
    CHECK_THROWS_AS(bound_integral(p), domain_error);
}

TEST_CASE("assemble_report verdicts for F3") {
    RuleSpec f3 = builtin_rule("F3");
    DirectionProfile p = profile(f3, 64, 64, ProfileStrategy::exact);
    EntropyEstimate afe = afe_rank(f3, 6, 12);
    CellSet one(std::vector<Cell>{{0, 0}});
    ShiftEntropyEstimate hs = shift_entropy(MeasureSpec::make_uniform(2), one);
    BoundReport rep = assemble_report(afe, hs, p);
    CHECK(rep.afe_nats == doctest::Approx(2 * kLog2).epsilon(1e-12));
    CHECK(rep.h_shift_nats == doctest::Approx(kLog2));
    CHECK(rep.lambda_R == doctest::Approx(4.0));
    CHECK(rep.verdict_R);         // 2 log 2 <= 4 log 2
    CHECK(rep.verdict_T);
    CHECK(rep.verdict_T_quadrant);
    CHECK(rep.all_pass);
    CHECK(rep.quadrant_below_rectangle); // 3.6x <= 4
}

TEST_CASE("assemble_report for the identity rule") {
    RuleSpec id = identity_rule();
    DirectionProfile p = profile(id, 32, 32, ProfileStrategy::exact);
    EntropyEstimate afe = afe_rank(id, 6, 12);
    CellSet one(std::vector<Cell>{{0, 0}});
    ShiftEntropyEstimate hs = shift_entropy(MeasureSpec::make_uniform(2), one);
    BoundReport rep = assemble_report(afe, hs, p);
    CHECK(rep.afe_nats == doctest::Approx(0.0));
    CHECK(rep.all_pass); // 0 <= anything
}

TEST_CASE("a zero-entropy measure fails the verdicts and is reported as-is") {
    RuleSpec f3 = builtin_rule("F3");
    DirectionProfile p = profile(f3, 32, 32, ProfileStrategy::exact);
    EntropyEstimate afe = afe_rank(f3, 6, 12);
    CellSet one(std::vector<Cell>{{0, 0}});
    ShiftEntropyEstimate hs = shift_entropy(MeasureSpec::from_weights({1.0, 0.0}), one);
    BoundReport rep = assemble_report(afe, hs, p);
    CHECK(rep.h_shift_nats == doctest::Approx(0.0));
    CHECK_FALSE(rep.verdict_R); // 2 log 2 > 0
    CHECK_FALSE(rep.all_pass);
}

TEST_CASE("mismatched rule hashes are rejected") {
    DirectionProfile p = profile(builtin_rule("F3"), 32, 32, ProfileStrategy::exact);
    EntropyEstimate afe = afe_rank(builtin_rule("F1"), 5, 8);
    CellSet one(std::vector<Cell>{{0, 0}});
    ShiftEntropyEstimate hs = shift_entropy(MeasureSpec::make_uniform(2), one);
    CHECK_THROWS_AS(assemble_report(afe, hs, p), domain_error);
}

} // TEST_SUITE
