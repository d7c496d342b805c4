#include <catch2/catch_amalgamated.hpp>

#include "tdho/harmonic.hpp"
#include "test_util.hpp"

using namespace tdho;
using testutil::gauss1d;

namespace {
WaveField hermite_ground(std::size_t n = 256) {
    GaussianState g;  // width i gives exactly e^{-x^2/2} up to normalization
    return sample_gaussian(g, GridSpec::self_dual(1, n));
}
}  // namespace

TEST_CASE("tiny angles act as the identity", "[harmonic]") {
    WaveField f = gauss1d(512, 0.06, 0.5, -0.7);
    WaveField g = harmonic_flow(f, 1e-6);
    CHECK(dist_l2(resample(g, f.grid), f) / norm_l2(f) < 1e-4);
}

TEST_CASE("oscillator ground state picks up exactly e^{-i alpha/2}", "[harmonic]") {
    WaveField f = hermite_ground();
    const double alpha = 0.7;
    WaveField g = harmonic_flow(f, alpha);
    WaveField want = f;
    const cplx ph = std::polar(1.0, -0.5 * alpha);
    for (auto& v : want.samples) v *= ph;
    CHECK(dist_l2(resample(g, f.grid), want) / norm_l2(f) < 5e-8);
}

TEST_CASE("chirp-FFT route matches the direct kernel quadrature", "[harmonic]") {
    WaveField f = gauss1d(64, std::sqrt(2.0 * pi / 64.0), 0.4, -0.6, cplx(0.2, 1.1));
    for (double a : {0.3, 0.7, 1.2, 0.5 * pi}) {
        WaveField g = harmonic_flow(f, a);
        WaveField w = mehler_apply(f, a, g.grid);
        CHECK(dist_l2(g, w) / norm_l2(f) < 1e-6);
    }
}

TEST_CASE("quarter period is the Fourier transform in modulus", "[harmonic]") {
    WaveField f = gauss1d(256, 0.1, 0.8, 0.3);
    WaveField F = fourier_axes(f, true);
    WaveField g = resample(harmonic_flow(f, 0.5 * pi), F.grid);
    double worst = 0;
    for (std::size_t i = 0; i < g.samples.size(); ++i)
        worst = std::max(worst, std::abs(std::abs(g.samples[i]) - std::abs(F.samples[i])));
    CHECK(worst < 1e-8);
}

TEST_CASE("flow angles compose (group property)", "[harmonic]") {
    WaveField f = gauss1d(256, std::sqrt(2.0 * pi / 256.0), 0.2, 0.5);
    WaveField ab = harmonic_flow(harmonic_flow(f, 0.6), 0.9);
    WaveField c = harmonic_flow(f, 1.5);
    CHECK(dist_l2_phase_free(resample(ab, c.grid), c) / norm_l2(f) < 1e-6);
}

TEST_CASE("full period refocuses to the phased parity map", "[harmonic]") {
    WaveField f = gauss1d(256, 0.1, 0.9);
    WaveField g = harmonic_flow(f, pi);
    WaveField want = parity(f);
    const cplx ph = std::polar(1.0, -0.5 * pi);  // e^{-i n pi / 2}, n = 1
    for (auto& v : want.samples) v *= ph;
    CHECK(dist_l2(resample(g, want.grid), want) / norm_l2(f) < 1e-10);
}

TEST_CASE("the flow preserves the L2 norm at awkward angles", "[harmonic]") {
    WaveField f = gauss1d(256, 0.1, -0.3, 1.1);
    for (double a : {0.05, 1.0, 0.5 * pi, 3.0, pi - 5e-4, 6.4})
        CHECK(std::abs(norm_l2(harmonic_flow(f, a)) - norm_l2(f)) < 1e-8 * norm_l2(f));
}

TEST_CASE("kernel quadrature rejects singular angles", "[harmonic]") {
    WaveField f = gauss1d(32, 0.3);
    CHECK_THROWS_AS(mehler_apply(f, 0.0, f.grid), std::invalid_argument);
}
