#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "decoy/keyrate.hpp"

using namespace decoy;

namespace {

bool close_rel(const real& a, const real& b, const real& tol) {
    real scale = abs(a) > abs(b) ? abs(a) : abs(b);
    if (scale == 0) return true;
    return abs(a - b) <= tol * scale;
}

}  // namespace

TEST_CASE("h2: frozen values and domain") {
    PrecisionScope scope(PrecisionConfig{});
    CHECK(h2(real(0)) == 0);
    CHECK(h2(real(1)) == 0);
    CHECK(close_rel(h2(real(1) / 2), real(1), real("1e-40")));
    CHECK(close_rel(h2(real(1) / 4), real("0.8112781244591328"), real("1e-14")));
    CHECK_THROWS_AS(h2(real("-0.1")), DomainError);
    CHECK_THROWS_AS(h2(real("1.1")), DomainError);
}

TEST_CASE("h2: symmetry and concavity on a grid") {
    PrecisionScope scope(PrecisionConfig{});
    const unsigned K = 50;
    std::vector<real> vals(K + 1);
    for (unsigned k = 0; k <= K; ++k) {
        real e = real(static_cast<int>(k)) / K;
        vals[k] = h2(e);
        CHECK(close_rel(vals[k], h2(1 - e), real("1e-35")));
        CHECK(vals[k] >= 0);
        CHECK(vals[k] <= 1 + real("1e-40"));
    }
    // midpoint concavity on adjacent grid points
    for (unsigned k = 1; k < K; ++k) {
        CHECK(vals[k] >= (vals[k - 1] + vals[k + 1]) / 2 - real("1e-40"));
    }
}

TEST_CASE("key_rate: frozen forms") {
    PrecisionScope scope(PrecisionConfig{});
    KeyRateInput in;
    in.Q = real("0.01");
    in.E = real(0);
    in.Q0 = real("0.005");
    in.Q1 = real("0.004");
    in.e1_upper = real(0);
    in.f = real(1);
    CHECK(close_rel(key_rate(in), in.Q0 + in.Q1, real("1e-40")));

    in.E = real("0.02");
    in.e1_upper = real(1) / 2;  // H2(0.5) = 1 kills the Q1 privacy term
    in.f = real("1.22");
    CHECK(close_rel(key_rate(in), -in.Q * in.f * h2(in.E) + in.Q0, real("1e-35")));
}

TEST_CASE("key_rate: validation") {
    PrecisionScope scope(PrecisionConfig{});
    KeyRateInput in;
    in.Q = real("0.01");
    in.E = real("0.01");
    in.Q0 = real("0.001");
    in.Q1 = real("0.004");
    in.e1_upper = real("0.05");
    CHECK_NOTHROW(key_rate(in));

    KeyRateInput bad = in;
    bad.E = real("0.7");
    CHECK_THROWS_AS(key_rate(bad), ValidationError);
    bad = in;
    bad.Q = real("1.5");
    CHECK_THROWS_AS(key_rate(bad), ValidationError);
    bad = in;
    bad.f = real("0.9");
    CHECK_THROWS_AS(key_rate(bad), ValidationError);
    bad = in;
    bad.e1_upper = real("0.6");
    CHECK_THROWS_AS(key_rate(bad), ValidationError);
}

TEST_CASE("key_rate: monotone nonincreasing in E and e1_upper") {
    PrecisionScope scope(PrecisionConfig{});
    KeyRateInput in;
    in.Q = real("0.02");
    in.Q0 = real("0.001");
    in.Q1 = real("0.008");
    in.E = real("0.01");
    in.e1_upper = real("0.02");

    real prev = key_rate(in);
    for (double e : {0.02, 0.05, 0.1, 0.2, 0.4}) {
        KeyRateInput step = in;
        step.E = real(e);
        real r = key_rate(step);
        CHECK(r <= prev + real("1e-40"));
        prev = r;
    }
    prev = key_rate(in);
    for (double e1 : {0.05, 0.1, 0.2, 0.4, 0.5}) {
        KeyRateInput step = in;
        step.e1_upper = real(e1);
        real r = key_rate(step);
        CHECK(r <= prev + real("1e-40"));
        prev = r;
    }
}

TEST_CASE("e1_upper: frozen values, clamping, monotonicity") {
    PrecisionScope scope(PrecisionConfig{});
    CHECK(close_rel(e1_upper(real("1e-3"), real("1e-2")), real("0.1"), real("1e-40")));
    CHECK(e1_upper(real(0), real("0.5")) == 0);
    CHECK(e1_upper(real("0.4"), real("0.5")) == real(1) / 2);  // b >= y/2 clamps
    CHECK_THROWS_AS(e1_upper(real("1e-3"), real(0)), DegenerateYield);
    CHECK_THROWS_AS(e1_upper(real("1e-3"), real("-1e-4")), DegenerateYield);

    // nonincreasing in y, nondecreasing in b
    real prev = e1_upper(real("1e-3"), real("0.005"));
    for (double y : {0.01, 0.02, 0.05, 0.3}) {
        real r = e1_upper(real("1e-3"), real(y));
        CHECK(r <= prev);
        prev = r;
    }
    prev = e1_upper(real("1e-4"), real("0.01"));
    for (double b : {2e-4, 5e-4, 1e-3, 1e-2}) {
        real r = e1_upper(real(b), real("0.01"));
        CHECK(r >= prev);
        prev = r;
    }
}
