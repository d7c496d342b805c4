#pragma once

// Closed-form Gaussian evolution under the quadratic Hamiltonian, driven
// by the same classical pair zeta1, zeta2 but through an entirely
// different route than the grid propagator: Riccati width flow, classical
// center trajectory, and the action phase. Serves as an oracle.
//
// Parameterization per axis (diagonal widths):
//   psi(x) = phase * prod_a (Im w_a / pi)^{1/4}
//            exp( i w_a (x_a - c_a)^2 / 2 + i p_a (x_a - c_a) )
// with Im w_a > 0 for normalizability.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "tdho/classical.hpp"
#include "tdho/grid.hpp"

namespace tdho {

struct GaussianState {
    int dim = 1;
    std::array<double, 3> center{0, 0, 0};
    std::array<double, 3> momentum{0, 0, 0};
    std::array<cplx, 3> width{cplx(0, 1), cplx(0, 1), cplx(0, 1)};  // w_a, Im > 0
    cplx global_phase{1.0, 0.0};

    void validate() const {
        for (int a = 0; a < dim; ++a)
            if (!(width[a].imag() > 0)) throw std::invalid_argument("gaussian: Im(width) must be positive");
    }
};

inline WaveField sample_gaussian(const GaussianState& g, const GridSpec& grid) {
    g.validate();
    if (grid.dim != g.dim) throw std::invalid_argument("sample_gaussian: dimension mismatch");
    WaveField f(grid);
    double amp = 1.0;
    for (int a = 0; a < g.dim; ++a) amp *= std::pow(g.width[a].imag() / pi, 0.25);
    f.for_each([&](std::size_t idx, const std::array<double, 3>& x) {
        cplx e{};
        for (int a = 0; a < g.dim; ++a) {
            double xi = x[a] - g.center[a];
            e += 0.5 * g.width[a] * xi * xi + g.momentum[a] * xi;
        }
        f.samples[idx] = g.global_phase * amp * std::exp(cplx(0, 1) * e);
    });
    return f;
}

// Exact evolution of the Gaussian parameters to time t. The width follows
// w(t) = m u'(t)/u(t) with u = zeta1 + (w0/m) zeta2 (complex combination of
// the real fundamental pair); centers follow the classical flow; the
// amplitude picks up u^{-1/2} and the classical action.
inline GaussianState gaussian_oracle(const ClassicalBasis& basis, const GaussianState& g0, double t) {
    g0.validate();
    if (!basis.in_span(t)) throw std::out_of_range("gaussian_oracle: t outside basis span");
    const double m = basis.m;
    // canonical pair values: zeta1 = y2/m, zeta2 = y1 (by the basis construction)
    const double z1 = basis.y2(t) / m, dz1 = basis.dy2(t) / m;
    const double z2 = basis.y1(t), dz2 = basis.dy1(t);

    GaussianState g = g0;
    cplx action_amp(1.0, 0.0);
    for (int a = 0; a < g0.dim; ++a) {
        const cplx w0 = g0.width[a];
        const cplx u = z1 + (w0 / m) * z2;
        const cplx du = dz1 + (w0 / m) * dz2;
        g.width[a] = m * du / u;
        g.center[a] = g0.center[a] * z1 + (g0.momentum[a] / m) * z2;
        g.momentum[a] = m * (g0.center[a] * dz1 + (g0.momentum[a] / m) * dz2);
        action_amp *= std::pow(u, -0.5);
        // normalizing factor ratio: sampled amplitude uses (Im w/pi)^{1/4}
        action_amp *= std::pow(w0.imag() / pi, 0.25) / std::pow(g.width[a].imag() / pi, 0.25);
    }
    // classical action phase, one shared trajectory integral per axis
    double action = 0.0;
    for (int a = 0; a < g0.dim; ++a) {
        const double q0 = g0.center[a], p0 = g0.momentum[a];
        action += adaptive_quad(
            [&](double s) {
                double q = q0 * (basis.y2(s) / m) + (p0 / m) * basis.y1(s);
                double p = m * (q0 * basis.dy2(s) / m + (p0 / m) * basis.dy1(s));
                return p * p / (2.0 * m) - 0.5 * basis.model.sigma(s) * q * q;
            },
            0.0, t, 1e-12);
    }
    g.global_phase = g0.global_phase * action_amp * std::exp(cplx(0, 1) * action);
    // renormalize modulus; |u|^{-1/2} combined with the width-ratio factor
    // keeps |phase| = 1 analytically, this only removes roundoff
    g.global_phase /= std::abs(g.global_phase);
    return g;
}

}  // namespace tdho
