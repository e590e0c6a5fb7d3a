#include "doctest.h"

#include <cstdint>

#include "ca2d/grid.hpp"
#include "ca2d/measure.hpp"
#include "ca2d/rng.hpp"

using namespace ca2d;

TEST_SUITE("rng") {

TEST_CASE("splitmix finalizer matches the frozen vectors") {
    // computed independently from the documented algorithm
    CHECK(mix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(mix64(1) == 0x910a2dec89025cc1ULL);
    CHECK(rand64(0, 0, 0) == 0x238275bc38fcbe91ULL);
    CHECK(rand64(7, 1, 42) == 0xf7d9966af6b393a8ULL);
    CHECK(rand64(1, 0, 0) == 0xb18a02f46d8d86c3ULL);
    CHECK(rand64(0, 1, 0) == 0x94926c2e801cb6f9ULL);
    CHECK(rand64(0, 0, 1) == 0x421daf3033e887a3ULL);
}

TEST_CASE("unit_double lies in [0,1)") {
    for (uint64_t s = 0; s < 1000; ++s) {
        double u = rand_unit(123, 0, s);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("degenerate weights give an all-zero window") {
    MeasureSpec m = MeasureSpec::from_weights({1.0, 0.0});
    Configuration c = sample_configuration(m, 16, 16, 99);
    for (long iy = 0; iy < 16; ++iy)
        for (long ix = 0; ix < 16; ++ix) CHECK(c.get(ix, iy) == 0);
}

TEST_CASE("identical seeds give identical windows") {
    MeasureSpec m = MeasureSpec::make_uniform(2);
    Configuration a = sample_configuration(m, 33, 17, 4242);
    Configuration b = sample_configuration(m, 33, 17, 4242);
    for (long iy = 0; iy < 17; ++iy)
        for (long ix = 0; ix < 33; ++ix) CHECK(a.get(ix, iy) == b.get(ix, iy));
    Configuration c = sample_configuration(m, 33, 17, 4243);
    bool all_same = true;
    for (long iy = 0; iy < 17; ++iy)
        for (long ix = 0; ix < 33; ++ix)
            if (a.get(ix, iy) != c.get(ix, iy)) all_same = false;
    CHECK_FALSE(all_same);
}

TEST_CASE("binomial concentration on a million cells") {
    MeasureSpec m = MeasureSpec::make_uniform(2);
    Configuration c = sample_configuration(m, 1000, 1000, 7);
    long ones = 0;
    for (long iy = 0; iy < 1000; ++iy)
        for (long ix = 0; ix < 1000; ++ix) ones += c.get(ix, iy);
    double frac = static_cast<double>(ones) / 1e6;
    CHECK(frac > 0.495); // 10 sigma
    CHECK(frac < 0.505);
}

TEST_CASE("non-uniform weights hit their frequencies") {
    MeasureSpec m = MeasureSpec::from_weights({0.75, 0.25});
    Configuration c = sample_configuration(m, 500, 500, 11);
    long ones = 0;
    for (long iy = 0; iy < 500; ++iy)
        for (long ix = 0; ix < 500; ++ix) ones += c.get(ix, iy);
    double frac = static_cast<double>(ones) / 250000.0;
    CHECK(frac == doctest::Approx(0.25).epsilon(0.02));
}

} // TEST_SUITE
