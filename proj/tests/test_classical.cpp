#include <catch2/catch_amalgamated.hpp>

#include "tdho/classical.hpp"
#include "tdho/fft.hpp"

using namespace tdho;

TEST_CASE("free model reproduces the closed-form basis", "[classical]") {
    for (double m : {1.0, 2.0}) {
        auto b = solve_classical(free_model(m), 50.0, 1e-10);
        for (double t : {-20.0, -3.0, 0.5, 7.0, 40.0}) {
            CHECK(b.y1(t) == Catch::Approx(t).margin(1e-10));
            CHECK(b.y2(t) == Catch::Approx(m).margin(1e-10));
            CHECK(b.a1(t) == Catch::Approx(m / (t * t + m * m)).epsilon(1e-10));
            CHECK(b.a2(t) == Catch::Approx(-t / (t * t + m * m)).margin(1e-10));
            CHECK(b.A(t) == Catch::Approx(std::atan(t / m)).margin(1e-9));
        }
        // the certified limit extrapolates the fitted tail; at this short
        // span the next-order atan correction dominates the error
        CHECK(b.A_limit(+1) == Catch::Approx(0.5 * pi).margin(1e-4));
        CHECK(b.A_limit(-1) == Catch::Approx(-0.5 * pi).margin(1e-4));
    }
}

TEST_CASE("Wronskian of the canonical pair is conserved", "[classical]") {
    for (double lam : {0.0, 0.1, 0.25, 0.4}) {
        auto b = solve_classical(profile_model(lam, 1.0), 200.0, 1e-10);
        for (double t : {-150.0, -1.0, 0.0, 3.0, 180.0})
            CHECK(std::abs(b.wronskian_at(t) - b.W) < 1e-8 * std::abs(b.W));
    }
}

TEST_CASE("profile model has the exact coefficient power law", "[classical]") {
    const double lam = 0.25, m = 1.0;
    auto b = solve_classical(profile_model(lam, m), 500.0, 1e-10);
    for (double t : {-300.0, -10.0, 2.0, 100.0, 450.0}) {
        double want = std::pow(1.0 + t * t, lam - 1.0) / m;
        CHECK(b.a1(t) == Catch::Approx(want).epsilon(1e-8));
    }
    // closed-form envelope: y1^2 + y2^2 = m^2 (1+t^2)^{1-lambda}
    for (double t : {5.0, 50.0}) {
        double env = b.model.analytic_y1(t);
        CHECK(b.y1(t) * b.y1(t) + b.y2(t) * b.y2(t) == Catch::Approx(env * env).epsilon(1e-8));
    }
}

TEST_CASE("asymptotics report recovers the decay exponents", "[classical]") {
    auto b = solve_classical(profile_model(0.25, 1.0), 4000.0, 1e-10);
    auto rep = b.verify_asymptotics(400.0);
    CHECK(rep.a1_slope == Catch::Approx(-1.5).margin(0.02));
    CHECK(rep.a1_r2 >= 0.999);
    // |y1| still carries a slowly settling phase factor over this window,
    // so the envelope exponent is certified more loosely than a1
    CHECK(rep.y1_exponent == Catch::Approx(0.75).margin(0.1));
    CHECK(rep.assumption_ok);
    CHECK(rep.c_m > 0);
    CHECK(rep.c_M >= rep.c_m);
}

TEST_CASE("constant oscillator fixture accumulates linear phase", "[classical]") {
    auto b = solve_classical(constant_model(1.0, 1.0), 20.0, 1e-10);
    CHECK(b.model.violates_assumption);
    // omega = m = 1: a1 is identically 1 and A(t) = t
    CHECK(b.a1(3.3) == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(b.A(5.0) == Catch::Approx(5.0).epsilon(1e-9));
    CHECK(std::isinf(b.A_limit(+1)));
}

TEST_CASE("model registry parses names and rejects malformed specs", "[classical]") {
    CHECK(model_from_name("free").name == "free");
    auto p = model_from_name("profile(lambda=0.25,m=2)");
    CHECK(p.lambda == Catch::Approx(0.25));
    CHECK(p.m == Catch::Approx(2.0));
    CHECK(model_from_name("constant(omega=2)").sigma(0.0) == Catch::Approx(4.0));
    CHECK_THROWS_AS(model_from_name("profile(m=1)"), std::invalid_argument);
    CHECK_THROWS_AS(model_from_name("nope"), std::invalid_argument);
    CHECK_THROWS_AS(model_from_name("profile(lambda=0.25"), std::invalid_argument);
}

TEST_CASE("construction rejects invalid parameters and spans", "[classical]") {
    CHECK_THROWS_AS(profile_model(0.7, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(free_model(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_classical(free_model(1.0), 10.0, 0.5), std::invalid_argument);
    auto b = solve_classical(free_model(1.0), 10.0, 1e-10);
    CHECK_THROWS_AS(b.A(11.0), std::out_of_range);
}
