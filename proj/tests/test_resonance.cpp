#include <catch2/catch_amalgamated.hpp>

#include "tdho/fft.hpp"
#include "tdho/resonance.hpp"

using namespace tdho;

TEST_CASE("N = 0 offsets vanish identically", "[resonance]") {
    auto b = solve_classical(profile_model(0.25, 1.0), 100.0, 1e-10);
    for (double s : {-20.0, 0.0, 13.0}) {
        auto off = resonance_offsets(b, 0, s);
        CHECK_FALSE(off.blow_up);
        CHECK(off.omega == 0.0);
    }
}

TEST_CASE("free fixture has no resonant indices (phase budget below pi)", "[resonance]") {
    auto b = solve_classical(free_model(1.0), 1000.0, 1e-10);
    CHECK(n_tilde(b) == 0);
    CHECK_THROWS_AS(resonance_offsets(b, 1, 0.0), std::invalid_argument);
}

TEST_CASE("constant fixture: s-independent offsets, blow-up past the horizon", "[resonance]") {
    auto b = solve_classical(constant_model(1.0, 1.0), 40.0, 1e-10);
    CHECK(n_tilde(b) >= 3);
    for (int N : {1, 2, 3})
        for (double s : {0.0, 0.7, 2.9}) {
            auto off = resonance_offsets(b, N, s);
            REQUIRE_FALSE(off.blow_up);
            CHECK(off.omega == Catch::Approx(N * pi).margin(1e-8));
        }
    // A is capped at A(span): from s close to the edge the budget for
    // N pi is gone and the offset blows up
    CHECK(resonance_offsets(b, 2, 39.0).blow_up);
}

TEST_CASE("phase identity closes under independent quadrature", "[resonance]") {
    auto b = solve_classical(constant_model(1.0, 1.0), 40.0, 1e-10);
    for (double s : {0.3, 1.1, 2.6})
        for (int N : {1, 2}) {
            double t = s + resonance_offsets(b, N, s).omega + 0.8;
            CHECK(phase_identity_residual(b, t, s, N) < 1e-8);
        }
}

TEST_CASE("sine lower bound: positive ratio, derivative identity, monotone", "[resonance]") {
    auto b = solve_classical(constant_model(1.0, 1.0), 40.0, 1e-10);
    auto chk = sine_lower_bound_check(b, 1, 25, 0.2, 2.8, 0.3);
    CHECK(chk.samples_used > 0);
    CHECK(chk.min_ratio > 0);
    // a1 is identically 1 for omega = m = 1, so the ratio is near 1
    CHECK(chk.min_ratio == Catch::Approx(1.0).margin(0.05));
    CHECK(chk.max_derivative_error < 1e-4);
    CHECK(chk.max_phase_identity_residual < 1e-8);
    CHECK(chk.monotone);
}

TEST_CASE("N = 0 ratio approaches a1(s) as t -> s", "[resonance]") {
    auto b = solve_classical(profile_model(0.25, 1.0), 100.0, 1e-10);
    const double s = 1.3;
    for (double eps : {1e-2, 1e-3}) {
        double t = s + eps;
        double ratio = std::abs(std::sin(b.A(t) - b.A(s))) / (t - s);
        CHECK(ratio == Catch::Approx(b.a1(s)).epsilon(5e-2));
    }
}

TEST_CASE("invalid resonance queries are rejected", "[resonance]") {
    auto b = solve_classical(constant_model(1.0, 1.0), 40.0, 1e-10);
    CHECK_THROWS_AS(resonance_offsets(b, -1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(resonance_offsets(b, n_tilde(b) + 1, 0.0), std::invalid_argument);
}
