#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "decoy/model.hpp"

using namespace decoy;

namespace {

bool close_rel(const real& a, const real& b, const real& tol) {
    real scale = abs(a) > abs(b) ? abs(a) : abs(b);
    if (scale == 0) return true;
    return abs(a - b) <= tol * scale;
}

// Direct series e^{-mu} sum (mu^n/n!) q_n, truncated at relative tail 1e-30.
real series_qplus(const real& mu, const ChannelParams& p) {
    real sum = 0;
    real weight = exp(-mu);  // e^{-mu} mu^n / n!
    for (unsigned n = 1; n <= 400; ++n) {
        weight *= mu / n;
        real term = weight * yield_q(n, p);
        sum += term;
        if (n > 5 && weight < sum * real("1e-35")) break;
    }
    return sum;
}

ChannelParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0, 1);
    ChannelParams p;
    p.eta = real(1e-3 + u(rng) * (0.1 - 1e-3));
    p.B = real(u(rng)) * p.eta;
    p.A = real(u(rng));
    return p;
}

}  // namespace

TEST_CASE("parameter domain validation") {
    ChannelParams good{real("0.5"), real("1e-4"), real("1e-2")};
    CHECK_NOTHROW(good.validate());

    CHECK_THROWS_AS((ChannelParams{real("1.5"), real(0), real("1e-2")}.validate()),
                    ValidationError);
    CHECK_THROWS_AS((ChannelParams{real(1), real("2e-2"), real("1e-2")}.validate()),
                    ValidationError);
    CHECK_THROWS_AS((ChannelParams{real(1), real("1e-3"), real("0.2")}.validate()),
                    ValidationError);
    // Bypass for out-of-domain studies.
    CHECK_NOTHROW(ChannelParams{real(1), real("1e-3"), real("0.2")}.validate(false));
}

TEST_CASE("intensity set validation") {
    IntensitySet s;
    s.mu = {real("0.07"), real("0.2"), real("0.5")};
    CHECK_NOTHROW(s.validate());
    CHECK(s.M() == 3);
    CHECK(s.all_le_one());

    s.mu = {real("0.07"), real("0.2"), real("1.5")};
    CHECK_FALSE(s.all_le_one());
    CHECK_NOTHROW(s.validate());

    s.mu = {real("0.2"), real("0.2")};
    CHECK_THROWS_AS(s.validate(), DegenerateIntensities);
    s.mu = {real("0.5"), real("0.2")};
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s.mu = {real(0)};
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s.mu = {real("0.5")};
    s.y0 = real(2);
    CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("yield_q: frozen values") {
    PrecisionScope scope(PrecisionConfig{});
    CHECK(close_rel(yield_q(1, ChannelParams{real(1), real("1e-5"), real("1e-2")}),
                    real("1.001e-2"), real("1e-25")));
    CHECK(yield_q(7, ChannelParams{real(1), real(0), real(1)}) == 1);
    // 1 - 0.999^3 = 1 - 0.997002999 exactly
    CHECK(close_rel(yield_q(3, ChannelParams{real(1), real(0), real("1e-3")}),
                    real("2.997001e-3"), real("1e-25")));
    CHECK(yield_q(0, ChannelParams{real(1), real("1e-5"), real("1e-2")}) == real("1e-5"));
}

TEST_CASE("yield_q monotonicity: q_n nondecreasing, q_n/n! strictly decreasing") {
    PrecisionScope scope(PrecisionConfig{});
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        ChannelParams p = random_params(rng);
        if (p.A == 0) p.A = real("0.5");
        real prev = yield_q(1, p);
        real prev_ratio = prev;
        real fact = 1;
        for (unsigned n = 2; n <= 40; ++n) {
            real q = yield_q(n, p);
            CHECK(q >= prev);
            fact *= n;
            CHECK(q / fact < prev_ratio);
            prev = q;
            prev_ratio = q / fact;
        }
    }
}

TEST_CASE("synth_qplus: closed form vs series, range, eta = 0") {
    PrecisionScope scope(PrecisionConfig{});
    CHECK(synth_qplus(real("0.3"), ChannelParams{real("0.7"), real(0), real(0)}) == 0);

    ChannelParams p{real(1), real("1e-5"), real("1e-2")};
    CHECK(close_rel(synth_qplus(real("0.5"), p), series_qplus(real("0.5"), p), real("1e-30")));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        ChannelParams q = random_params(rng);
        real mu(u(rng));
        real v = synth_qplus(mu, q);
        CHECK(close_rel(v, series_qplus(mu, q), real("1e-30")));
        CHECK(v >= 0);
        CHECK(v <= 1);
    }
}

TEST_CASE("q_{M-1} >= A eta + B for M >= 2") {
    PrecisionScope scope(PrecisionConfig{});
    std::mt19937_64 rng(9);
    for (int rep = 0; rep < 20; ++rep) {
        ChannelParams p = random_params(rng);
        for (unsigned M = 2; M <= 6; ++M) {
            CHECK(yield_q(M - 1, p) >= p.A * p.eta + p.B - real("1e-70"));
        }
    }
}

TEST_CASE("synth_error_rhs: frozen values and closed-form identity") {
    PrecisionScope scope(PrecisionConfig{});
    real eta("1e-2");
    CHECK(synth_error_rhs(real("0.3"), real(0), real(0), eta) == 0);
    real expect = real("0.01") * (1 - exp(real("-0.002"))) + real("5e-6");
    CHECK(close_rel(synth_error_rhs(real("0.2"), real("0.01"), real("1e-5"), eta), expect,
                    real("1e-28")));
    // Same closed form as synth_qplus with A = e_det, B = p_dark/2, plus the
    // vacuum part e^{-mu} p_dark/2 folded back in.
    real mu("0.44");
    ChannelParams err{real("0.01"), real("5e-6"), eta};
    CHECK(close_rel(synth_error_rhs(mu, real("0.01"), real("1e-5"), eta),
                    synth_qplus(mu, err) + exp(-mu) * real("5e-6"), real("1e-28")));
    CHECK_THROWS_AS(synth_error_rhs(mu, real("0.6"), real(0), eta), ValidationError);
}

TEST_CASE("constraint right-hand sides") {
    PrecisionScope scope(PrecisionConfig{});
    IntensitySet s;
    s.mu = {real("0.07"), real("0.2"), real("0.5")};
    s.y0 = real("1e-5");

    SUBCASE("Q_i = e^{-mu_i} y0 exactly -> rhs = 0") {
        MeasurementRecord rec;
        for (const real& m : s.mu) rec.Q.push_back(exp(-m) * s.y0);
        for (const real& r : to_constraint_rhs(rec, s)) CHECK(abs(r) < real("1e-70"));
    }

    SUBCASE("y0 = 0 -> rhs_i = e^{mu_i} Q_i") {
        IntensitySet s0 = s;
        s0.y0 = 0;
        MeasurementRecord rec;
        rec.Q = {real("0.001"), real("0.003"), real("0.006")};
        auto rhs = to_constraint_rhs(rec, s0);
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            CHECK(close_rel(rhs[i], exp(s0.mu[i]) * rec.Q[i], real("1e-40")));
        }
    }

    SUBCASE("synthesized data -> rhs_i = e^{mu_i} synth_qplus(mu_i)") {
        ChannelParams p{real(1), real("1e-5"), real("1e-2")};
        IntensitySet sm = s;
        sm.y0 = p.B;  // y0 defaults to q_0 = B
        MeasurementRecord rec = synth_record(sm, p);
        auto rhs = to_constraint_rhs(rec, sm);
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            CHECK(close_rel(rhs[i], exp(sm.mu[i]) * synth_qplus(sm.mu[i], p), real("1e-40")));
        }
    }

    SUBCASE("negative non-vacuum rate is rejected") {
        MeasurementRecord rec;
        rec.Q = {real("1e-6"), real("1e-6"), real("1e-6")};
        IntensitySet sv = s;
        sv.y0 = real("0.5");
        CHECK_THROWS_AS(qplus_from_record(rec, sv), NegativeQPlus);
    }
}

TEST_CASE("error-side right-hand sides") {
    PrecisionScope scope(PrecisionConfig{});
    IntensitySet s;
    s.mu = {real("0.07"), real("0.2"), real("0.5")};
    s.y0 = real("1e-5");
    ChannelParams p{real(1), real("1e-5"), real("1e-2")};
    MeasurementRecord rec = synth_record(s, p, real("0.01"), real("1e-5"));
    REQUIRE(rec.E.has_value());
    REQUIRE(rec.E->size() == 3);

    // Q_i E_i reproduces the error model rhs exactly.
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(close_rel(rec.Q[i] * (*rec.E)[i],
                        synth_error_rhs(s.mu[i], real("0.01"), real("1e-5"), p.eta),
                        real("1e-40")));
    }
    auto rhs = to_error_rhs(rec, s);
    for (std::size_t i = 0; i < 3; ++i) {
        real qp = rec.Q[i] * (*rec.E)[i] - exp(-s.mu[i]) * s.y0 / 2;
        CHECK(close_rel(rhs[i], exp(s.mu[i]) * qp, real("1e-40")));
    }

    MeasurementRecord no_e;
    no_e.Q = rec.Q;
    CHECK_THROWS_AS(qplus_from_errors(no_e, s), ValidationError);
}
