#include <catch2/catch_amalgamated.hpp>

#include "tdho/strichartz.hpp"
#include "test_util.hpp"

using namespace tdho;
using testutil::gauss1d;

TEST_CASE("constant unit r-norms integrate to 2^{1/4} on [-1, 1]", "[strichartz]") {
    std::vector<double> times, rn;
    for (int i = -20; i <= 20; ++i) {
        times.push_back(0.05 * i);
        rn.push_back(1.0);
    }
    auto res = weighted_strichartz_norm(times, rn, NormSpec{4, 8, 0.0}, 1.0);
    CHECK(res.value == Catch::Approx(std::pow(2.0, 0.25)).epsilon(1e-12));
    CHECK(res.quad_error < 1e-12);
}

TEST_CASE("the decaying weight only shrinks the norm", "[strichartz]") {
    std::vector<double> times, rn;
    for (int i = 0; i <= 40; ++i) {
        double t = 0.25 * i;
        times.push_back(t);
        rn.push_back(1.0 / (1.0 + t));
    }
    double v0 = weighted_strichartz_norm(times, rn, NormSpec{4, 8, 0.0}, 10.0).value;
    double vl = weighted_strichartz_norm(times, rn, NormSpec{4, 8, 0.5}, 10.0).value;
    CHECK(vl < v0);
    CHECK(vl > 0);
}

TEST_CASE("trajectory overload agrees with precomputed r-norms", "[strichartz]") {
    WaveField f = gauss1d(128, 0.1);
    Trajectory traj;
    std::vector<double> times, rn;
    for (int i = 0; i <= 8; ++i) {
        double t = 0.1 * i;
        traj.push_back({t, f});
        times.push_back(t);
        rn.push_back(norm_lr(f, 4.0));
    }
    NormSpec spec{8, 4, 0.25};
    CHECK(weighted_strichartz_norm(traj, spec, 0.8).value ==
          Catch::Approx(weighted_strichartz_norm(times, rn, spec, 0.8).value).epsilon(1e-14));
}

TEST_CASE("bad sample arrays are rejected", "[strichartz]") {
    NormSpec spec{8, 4, 0.0};
    CHECK_THROWS_AS(weighted_strichartz_norm({0.0, 0.1}, {1.0, 1.0}, spec, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_strichartz_norm({0.0, 0.1, 0.3}, {1.0, 1.0, 1.0}, spec, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_strichartz_norm({0.0, 0.1, 0.2}, {1.0, 1.0, 1.0}, spec, -1.0),
                    std::invalid_argument);
}

TEST_CASE("free homogeneous estimate holds under window doubling", "[strichartz]") {
    auto b = solve_classical(free_model(1.0), 100.0, 1e-10);
    std::vector<WaveField> family = {gauss1d(256, 0.1), gauss1d(256, 0.1, 0.5, -0.3),
                                     gauss1d(256, 0.1, -0.4, 0.8, cplx(0.3, 1.2))};
    auto rep = strichartz_homogeneous_check(b, NormSpec{8, 4, 0.0}, family, 20.0, 40);
    REQUIRE(rep.points.size() == 2 * family.size());
    for (const auto& p : rep.points) {
        CHECK(std::isfinite(p.value));
        CHECK(p.value > 0);
    }
    CHECK(rep.growth < 0.05);
}

TEST_CASE("non-admissible exponents are rejected up front", "[strichartz]") {
    auto b = solve_classical(free_model(1.0), 10.0, 1e-10);
    std::vector<WaveField> family = {gauss1d(64, 0.2)};
    CHECK_THROWS_AS(strichartz_homogeneous_check(b, NormSpec{8, 3, 0.0}, family, 4.0, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(strichartz_homogeneous_check(b, NormSpec{8, 4, 0.0}, {}, 4.0, 4),
                    std::invalid_argument);
}

TEST_CASE("zero source gives zero retarded ratios", "[strichartz]") {
    auto b = solve_classical(profile_model(0.25, 1.0), 10.0, 1e-10);
    WaveField zero(GridSpec::centered(1, 128, 0.1));
    Trajectory F;
    for (int i = 0; i <= 10; ++i) F.push_back({0.1 * i, zero});
    auto rep = duhamel_check(b, NormSpec{8, 4, 0.25}, F, 2.0);
    for (const auto& p : rep.points) CHECK(p.value == 0.0);
    CHECK(rep.growth == 0.0);
}

TEST_CASE("retarded estimate stays bounded for a compact source", "[strichartz]") {
    auto b = solve_classical(profile_model(0.25, 1.0), 20.0, 1e-10);
    Trajectory F;
    for (int i = 0; i <= 20; ++i) {
        double t = 0.1 * i;
        WaveField sl = gauss1d(256, 0.1, 0.2);
        double env = std::exp(-(t - 1.0) * (t - 1.0) * 4.0);
        for (auto& v : sl.samples) v *= env;
        F.push_back({t, sl});
    }
    auto rep = duhamel_check(b, NormSpec{8, 4, 0.25}, F, 16.0);
    REQUIRE(rep.points.size() == 2);
    CHECK(rep.points[0].value > 0);
    CHECK(std::isfinite(rep.points[1].value));
    CHECK(rep.growth < 0.1);
}
