#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "tdho/factor_ops.hpp"
#include "test_util.hpp"

using namespace tdho;
using testutil::gauss1d;

TEST_CASE("fft round trip recovers the input up to the 1/N pair convention", "[fft]") {
    std::mt19937_64 eng(7);
    std::vector<cplx> v(256);
    for (auto& z : v)
        z = cplx(static_cast<double>(eng() >> 11) * 0x1.0p-53 - 0.5,
                 static_cast<double>(eng() >> 11) * 0x1.0p-53 - 0.5);
    auto w = v;
    fft_inplace(w, true);
    fft_inplace(w, false);
    double worst = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        worst = std::max(worst, std::abs(w[i] / static_cast<double>(v.size()) - v[i]));
    CHECK(worst < 1e-13);
}

TEST_CASE("fft rejects non-power-of-two lengths", "[fft]") {
    std::vector<cplx> v(100);
    CHECK_THROWS_AS(fft_inplace(v, true), std::invalid_argument);
}

TEST_CASE("centered Gaussian is a Fourier eigenfunction on the self-dual grid", "[fourier]") {
    GaussianState g;  // e^{-x^2/2} up to normalization
    WaveField f = sample_gaussian(g, GridSpec::self_dual(1, 256));
    WaveField F = fourier_axes(f, true);
    CHECK(dist_l2(F, resample(f, F.grid)) / norm_l2(f) < 1e-10);
}

TEST_CASE("Parseval holds for the unitary convention", "[fourier]") {
    WaveField f = gauss1d(512, 0.08, 0.7, -1.3);
    WaveField F = fourier_axes(f, true);
    CHECK(std::abs(norm_l2(F) - norm_l2(f)) < 1e-12 * norm_l2(f));
}

TEST_CASE("double Fourier transform is parity up to the convention phase", "[fourier]") {
    WaveField f = gauss1d(512, 0.08, 0.9, 0.4);
    WaveField FF = fourier_axes(fourier_axes(f, true), true);
    WaveField pf = parity(f);
    CHECK(dist_l2_phase_free(FF, resample(pf, FF.grid)) / norm_l2(f) < 1e-10);
}

TEST_CASE("grid constructors and coordinate bookkeeping", "[grid]") {
    auto g = GridSpec::centered(2, 64, 0.25);
    CHECK(g.dim == 2);
    CHECK(g.size() == 64u * 64u);
    CHECK(g.coord(0, 0) == Catch::Approx(-8.0));
    CHECK(g.coord(0, 32) == Catch::Approx(0.0));
    CHECK(g.cell() == Catch::Approx(0.0625));
    double dxi, xi0;
    g.reciprocal_axis(0, dxi, xi0);
    CHECK(dxi == Catch::Approx(2.0 * pi / 16.0));
    CHECK(xi0 == Catch::Approx(-32.0 * dxi));
}

TEST_CASE("norms agree with closed forms on an indicator-like field", "[grid]") {
    auto g = GridSpec::centered(1, 16, 0.5);
    WaveField f(g);
    f.samples[3] = cplx(3.0, 4.0);  // single spike, |v| = 5
    CHECK(norm_linf(f) == Catch::Approx(5.0));
    CHECK(norm_l1(f) == Catch::Approx(5.0 * 0.5));
    CHECK(norm_l2(f) == Catch::Approx(5.0 * std::sqrt(0.5)));
    CHECK(norm_lr(f, 4.0) == Catch::Approx(5.0 * std::pow(0.5, 0.25)));
}

TEST_CASE("phase-free distance ignores a global phase", "[grid]") {
    WaveField f = gauss1d();
    WaveField g = f;
    const cplx ph = std::polar(1.0, 1.234);
    for (auto& v : g.samples) v *= ph;
    CHECK(dist_l2(f, g) > 0.1 * norm_l2(f));
    CHECK(dist_l2_phase_free(f, g) < 1e-12 * norm_l2(f));
}
