#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "tdho/fft.hpp"
#include "tdho/regions.hpp"

using namespace tdho;

TEST_CASE("admissible pairs sit on the scaling line", "[regions]") {
    CHECK(NormSpec{8, 4, 0.25}.admissible(1));
    CHECK(NormSpec{12, 3, 0.25}.admissible(1));
    CHECK(NormSpec{4, 4, 0.0}.admissible(2));
    CHECK_FALSE(NormSpec{2, 1e18, 0.0}.admissible(1));  // q = 2 endpoint excluded
    CHECK_FALSE(NormSpec{8, 3, 0.0}.admissible(1));     // off the line
    CHECK(NormSpec{8, 4, 0.25}.theta() == Catch::Approx(0.75 * 0.25));
    CHECK(NormSpec{8, 4, 0.25}.q_conj() == Catch::Approx(8.0 / 7.0));
}

TEST_CASE("certified outer radius satisfies both tail conditions", "[regions]") {
    auto b = solve_classical(free_model(1.0), 4000.0, 1e-10);
    double r0 = compute_r0(b, b.verify_asymptotics());
    CHECK(r0 > 0);
    CHECK(r0 < 0.1 * b.span);
    // phase tail below pi/2 on both sides at the certified radius
    CHECK(std::abs(b.A_limit(+1) - b.A(r0)) < 0.5 * pi);
    CHECK(std::abs(b.A_limit(-1) - b.A(-r0)) < 0.5 * pi);

    auto bp = solve_classical(profile_model(0.25, 1.0), 4000.0, 1e-10);
    double r0p = compute_r0(bp, bp.verify_asymptotics());
    CHECK(r0p > 0);
    CHECK(std::abs(bp.A_limit(+1) - bp.A(r0p)) < 0.5 * pi);
}

TEST_CASE("assumption-violating fixtures cannot be certified", "[regions]") {
    auto b = solve_classical(constant_model(1.0, 1.0), 40.0, 1e-10);
    AsymptoticsReport rep;  // never consulted
    CHECK_THROWS_AS(compute_r0(b, rep), std::invalid_argument);
}

TEST_CASE("classification reproduces the defining examples", "[regions]") {
    auto b = solve_classical(free_model(1.0), 4000.0, 1e-10);
    double r0 = compute_r0(b, b.verify_asymptotics());
    double delta = default_delta(b, r0);
    CHECK(delta > 0);
    CHECK(delta < 0.25 * pi);

    CHECK(classify_region(2.0 * r0, 3.0 * r0, r0, delta, b).kind == RegionKind::Omega0Plus);
    CHECK(classify_region(-2.0 * r0, -3.0 * r0, r0, delta, b).kind == RegionKind::Omega0Minus);
    CHECK(classify_region(10.0 * r0, 1.01 * r0, r0, delta, b).kind == RegionKind::OmegaLambdaPlus);
    auto origin = classify_region(0.0, 0.0, r0, delta, b);
    CHECK(origin.kind == RegionKind::Resonant);
    CHECK(origin.resonance_index == 0);
}

TEST_CASE("every sampled pair receives exactly one label", "[regions]") {
    auto b = solve_classical(profile_model(0.25, 1.0), 4000.0, 1e-10);
    double r0 = compute_r0(b, b.verify_asymptotics());
    double delta = default_delta(b, r0);
    std::mt19937_64 eng(3);
    auto rnd = [&] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
    for (int k = 0; k < 10000; ++k) {
        double t = -3000.0 + 6000.0 * rnd();
        double s = -3000.0 + 6000.0 * rnd();
        auto lab = classify_region(t, s, r0, delta, b);
        // the label is a single well-defined member of the enumeration, and
        // the outer labels agree with their defining inequalities
        bool outer = std::abs(t) >= r0 && std::abs(s) >= r0 && t * s > 0;
        bool comparable = outer && 0.5 * std::abs(t) <= std::abs(s) && std::abs(s) <= 2.0 * std::abs(t);
        switch (lab.kind) {
            case RegionKind::Omega0Plus:
            case RegionKind::Omega0Minus:
                CHECK(comparable);
                break;
            case RegionKind::OmegaLambdaPlus:
            case RegionKind::OmegaLambdaMinus:
                CHECK(outer);
                CHECK_FALSE(comparable);
                break;
            case RegionKind::Resonant:
                CHECK(lab.resonance_index >= 0);
                break;
            case RegionKind::Regular:
                break;
            default:
                FAIL("classification returned a non-label kind");
        }
        // determinism of the partition
        CHECK(classify_region(t, s, r0, delta, b).kind == lab.kind);
    }
}

TEST_CASE("region labels render stable names", "[regions]") {
    CHECK(RegionLabel{RegionKind::Omega0Plus}.str() == "Omega0+");
    CHECK(RegionLabel{RegionKind::OmegaLambdaMinus}.str() == "OmegaL-");
    CHECK(RegionLabel{RegionKind::Resonant, 2}.str() == "Res(2)");
}
