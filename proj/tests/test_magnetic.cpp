#include <catch2/catch_amalgamated.hpp>

#include "tdho/magnetic.hpp"
#include "test_util.hpp"

using namespace tdho;
using testutil::gauss2d;

namespace {
MagneticModel zero_field() {
    MagneticModel mag;
    mag.B = [](double) { return 0.0; };
    return mag;
}
}  // namespace

TEST_CASE("derived coefficients: formulas, charge parity, profile match", "[magnetic]") {
    auto mag0 = zero_field();
    CHECK(mag0.sigma(3.0) == 0.0);
    CHECK(mag0.Omega(3.0) == Catch::Approx(0.0).margin(1e-14));

    auto mag = landau_model(0.7, 0.5, 2.0, 1.5);
    for (double t : {0.0, 2.0}) {
        double b = 0.7 * std::pow(1.0 + t * t, -0.5);
        CHECK(mag.B(t) == Catch::Approx(b).epsilon(1e-14));
        CHECK(mag.sigma(t) == Catch::Approx(4.0 * b * b / 6.0).epsilon(1e-14));
    }
    // constant field: Omega(t) = q b0 t / (2m)
    auto magc = landau_model(0.5, 0.0, 2.0, 1.0);
    CHECK(magc.Omega(3.0) == Catch::Approx(1.5).epsilon(1e-10));

    // sigma is even in the charge, Omega is odd
    auto magm = landau_model(0.7, 0.5, -2.0, 1.5);
    CHECK(magm.sigma(1.3) == Catch::Approx(mag.sigma(1.3)).epsilon(1e-14));

    auto magp = landau_profile_model(0.25, 1.0);
    auto md = profile_model(0.25, 1.0);
    CHECK(magp.lambda == 0.25);
    for (double t : {0.0, 1.0, 7.0})
        CHECK(magp.sigma(t) == Catch::Approx(md.sigma(t)).margin(1e-12));
    CHECK(sigma_from_field(magp).lambda == 0.25);
}

TEST_CASE("invalid magnetic models are rejected", "[magnetic]") {
    MagneticModel bad;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);  // B unset
    bad.B = [](double) { return 1.0; };
    bad.charge = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.charge = 1.0;
    bad.m = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("rotation: identity, radial invariance, exact quarter turn", "[magnetic]") {
    WaveField f = gauss2d(128, 0.15, 0.6, -0.4);
    CHECK(dist_l2(rotate(f, 0.0), f) == 0.0);

    WaveField radial = gauss2d(128, 0.15);
    CHECK(dist_l2(rotate(radial, 1.1), radial) / norm_l2(radial) < 1e-8);

    // (rotate(f, pi/2))(x) = f(-x2, x1): a packet at (a, b) moves to (b, -a)
    WaveField q = rotate(f, 0.5 * pi);
    WaveField want = gauss2d(128, 0.15, -0.4, -0.6);
    CHECK(dist_l2(q, want) / norm_l2(f) < 1e-10);
}

TEST_CASE("rotation matches its generator at small angles", "[magnetic]") {
    const double a = 0.6, b = -0.4, theta = 1e-4;
    GridSpec grid = GridSpec::centered(2, 128, 0.15);
    WaveField f(grid), gen(grid);
    f.for_each([&](std::size_t i, const std::array<double, 3>& x) {
        double v = std::exp(-0.5 * ((x[0] - a) * (x[0] - a) + (x[1] - b) * (x[1] - b)));
        f.samples[i] = v;
        // d/dtheta f(R_theta x) at 0 = (b x1 - a x2) f for this Gaussian
        gen.samples[i] = (b * x[0] - a * x[1]) * v;
    });
    WaveField fd = rotate(f, theta);
    for (std::size_t i = 0; i < fd.samples.size(); ++i)
        fd.samples[i] = (fd.samples[i] - f.samples[i]) / theta;
    CHECK(dist_l2(fd, gen) / norm_l2(gen) < 1e-3);
}

TEST_CASE("rotation is unitary at generic angles and checks its grid", "[magnetic]") {
    WaveField f = gauss2d(128, 0.15, 0.3, 0.5, -0.4, 0.2);
    for (double th : {0.7, 2.0, -1.3})
        CHECK(std::abs(norm_l2(rotate(f, th)) - norm_l2(f)) < 1e-8 * norm_l2(f));

    GridSpec off = f.grid;
    off.x0[0] += 0.5 * off.h[0];
    WaveField g(off);
    g.samples = f.samples;
    CHECK_THROWS_AS(rotate(g, 0.3), std::invalid_argument);
}

TEST_CASE("planar evolution: identity at t = 0, unitary, invertible", "[magnetic]") {
    auto mag = landau_model(0.8, 0.5, 1.0, 1.0);
    auto b = solve_classical(sigma_from_field(mag), 10.0, 1e-10);
    WaveField f = gauss2d(128, 0.15, 0.4, -0.3, 0.2, 0.1);
    WaveField u0 = evolve_landau(mag, b, f, 0.0, 2);
    CHECK(dist_l2(resample(u0, f.grid), f) / norm_l2(f) < 1e-10);

    WaveField u = evolve_landau(mag, b, f, 1.3, 2);
    CHECK(std::abs(norm_l2(u) - norm_l2(f)) < 1e-8 * norm_l2(f));
    WaveField r = evolve_landau_adjoint(mag, b, u, 1.3, 2);
    CHECK(dist_l2(resample(r, f.grid), f) / norm_l2(f) < 1e-6);

    CHECK_THROWS_AS(evolve_landau(mag, b, f, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(evolve_landau(mag, b, f, 1.0, 3), std::invalid_argument);  // dim mismatch
}

TEST_CASE("vanishing field reduces to the free planar propagator", "[magnetic]") {
    auto mag0 = zero_field();
    auto b = solve_classical(free_model(1.0), 10.0, 1e-10);
    WaveField f = gauss2d(128, 0.15, 0.5, -0.2);
    WaveField u = evolve_landau(mag0, b, f, 1.5, 2);
    WaveField want = detail::center_planar(evolve(b, f, 1.5, 2));
    CHECK(dist_l2(u, want) / norm_l2(f) < 1e-12);
}

TEST_CASE("the rotation commutes with the Landau evolution", "[magnetic]") {
    auto mag = landau_model(0.8, 0.5, 1.0, 1.0);
    auto b = solve_classical(sigma_from_field(mag), 10.0, 1e-10);
    WaveField f = gauss2d(128, 0.15, 0.5, -0.2);
    const double th = 0.7, t = 1.2;
    WaveField lhs = rotate(detail::center_planar(evolve_landau(mag, b, f, t, 2)), th);
    WaveField rhs = evolve_landau(mag, b, rotate(f, th), t, 2);
    CHECK(dist_l2(lhs, detail::center_planar(rhs)) / norm_l2(f) < 1e-6);
}

TEST_CASE("fused two-time operator matches the composed Landau legs", "[magnetic]") {
    auto mag = landau_model(0.8, 0.5, 1.0, 1.0);
    auto b = solve_classical(sigma_from_field(mag), 10.0, 1e-10);
    WaveField f = gauss2d(128, 0.15, 0.3, 0.2);
    WaveField fused = two_time_landau(mag, b, f, 2.0, 0.7, 2);
    WaveField legs = evolve_landau(mag, b, evolve_landau_adjoint(mag, b, f, 0.7, 2), 2.0, 2);
    CHECK(dist_l2(resample(legs, fused.grid), fused) / norm_l2(f) < 1e-6);
}

TEST_CASE("axial direction factors out as the free line", "[magnetic]") {
    auto mag = landau_model(0.6, 0.5, 1.0, 1.0);
    auto b = solve_classical(sigma_from_field(mag), 10.0, 1e-10);
    const std::size_t N = 64;
    const double h = 0.25, t = 0.8;

    WaveField f2 = gauss2d(N, h, 0.3, -0.2);
    GridSpec g3 = GridSpec::centered(3, N, h);
    WaveField f3(g3);
    std::vector<cplx> ax0(N), axt(N);
    const cplx denom(1.0, t);
    for (std::size_t k = 0; k < N; ++k) {
        double x = g3.coord(2, k);
        ax0[k] = std::exp(-0.5 * x * x);
        axt[k] = std::pow(denom, -0.5) * std::exp(-x * x / (2.0 * denom));
    }
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < N; ++k)
                f3.samples[(i * N + j) * N + k] = f2.samples[i * N + j] * ax0[k];

    WaveField u3 = evolve_landau(mag, b, f3, t, 3);
    WaveField u2 = evolve_landau(mag, b, f2, t, 2);
    REQUIRE(u3.samples.size() == u2.samples.size() * N);
    double err2 = 0, ref2 = 0;
    for (std::size_t p = 0; p < u2.samples.size(); ++p)
        for (std::size_t k = 0; k < N; ++k) {
            cplx want = u2.samples[p] * axt[k];
            err2 += std::norm(u3.samples[p * N + k] - want);
            ref2 += std::norm(want);
        }
    CHECK(std::sqrt(err2 / ref2) < 1e-6);
}

TEST_CASE("vanishing field reproduces the free planar decay rate", "[magnetic]") {
    auto mag0 = zero_field();
    auto b = solve_classical(free_model(1.0), 2000.0, 1e-10);
    double r0 = compute_r0(b, b.verify_asymptotics());
    double delta = default_delta(b, r0);
    auto rep = magnetic_dispersive_scan(mag0, b, 2, RegionKind::Omega0Plus, r0, delta, 30);
    CHECK(rep.points.size() >= 10);
    CHECK(rep.slope == Catch::Approx(-1.0).margin(0.07));
    CHECK(rep.r2 >= 0.98);
    CHECK_THROWS_AS(magnetic_dispersive_scan(mag0, b, 2, RegionKind::Resonant, r0, delta),
                    std::invalid_argument);
}
