#pragma once

// Resonance machinery: the offsets omega_N(s) solving
//   integral_s^{s+omega_N} a1 = N pi,
// the largest reachable index N~, the identity
//   A(t) - A(s) - N pi = integral_{s+omega_N(s)}^t a1,
// the sine lower bound |sin(A(t)-A(s))| >= c |t - s - omega_N(s)| on the
// resonant bands, and the reparametrization derivative
//   1 + omega_N'(s) = a1(s) / a1(s + omega_N(s)).

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tdho/regions.hpp"

namespace tdho {

struct OffsetResult {
    bool blow_up = false;  // s lies beyond s*: the phase budget to +inf is < N pi
    double omega = 0;
};

// Largest N >= 0 with N pi strictly below the total accumulated phase.
// For fixtures violating the decay assumption the span-limited phase is
// used (the true value is infinite).
inline int n_tilde(const ClassicalBasis& basis) {
    double total = basis.model.violates_assumption
                       ? basis.A(basis.span) - basis.A(-basis.span)
                       : basis.A_limit(+1) - basis.A_limit(-1);
    int N = 0;
    while ((N + 1) * pi < total) ++N;
    return N;
}

inline OffsetResult resonance_offsets(const ClassicalBasis& basis, int N, double s) {
    if (N < 0) throw std::invalid_argument("resonance_offsets: N must be >= 0");
    if (N > n_tilde(basis)) throw std::invalid_argument("resonance_offsets: N exceeds the phase budget N~");
    if (N == 0) return {false, 0.0};
    const double target = basis.A(s) + static_cast<double>(N) * pi;
    double A_top = basis.model.violates_assumption ? basis.A(basis.span) : basis.A_limit(+1);
    if (A_top <= target) return {true, 0.0};
    if (basis.A(basis.span) < target)
        throw std::runtime_error("resonance_offsets: offset lies beyond the solved span");
    // A is strictly increasing (a1 > 0); plain bisection
    double lo = s, hi = basis.span;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + std::abs(lo)); ++it) {
        double mid = 0.5 * (lo + hi);
        (basis.A(mid) < target ? lo : hi) = mid;
    }
    return {false, 0.5 * (lo + hi) - s};
}

// | A(t) - A(s) - N pi - integral_{s+omega_N(s)}^t a1 |, the integral taken
// by direct adaptive quadrature rather than through the phase table.
inline double phase_identity_residual(const ClassicalBasis& basis, double t, double s, int N) {
    auto off = resonance_offsets(basis, N, s);
    if (off.blow_up) throw std::invalid_argument("phase_identity_residual: offset blows up at this s");
    double I = adaptive_quad([&](double u) { return basis.a1(u); }, s + off.omega, t, 1e-13);
    return std::abs(basis.A(t) - basis.A(s) - static_cast<double>(N) * pi - I);
}

struct ResonanceCheck {
    double min_ratio = 0;       // min |sin(A(t)-A(s))| / |t - s - omega_N(s)|
    double max_derivative_error = 0;    // max |(1 + omega_N') - a1(s)/a1(s+omega_N)|
    double max_phase_identity_residual = 0;
    int samples_used = 0;
    bool monotone = true;       // 1 + omega_N' > 0 at all samples
};

// Samples (t, s) inside the resonant band of index N: s ranges over a
// window where omega_N exists, t = s + omega_N(s) + u with |u| small
// enough that |A(t)-A(s)| stays within delta of N pi.
inline ResonanceCheck sine_lower_bound_check(const ClassicalBasis& basis, int N, int samples,
                                             double s_lo, double s_hi, double delta) {
    if (samples < 1) throw std::invalid_argument("sine_lower_bound_check: need >= 1 sample");
    ResonanceCheck out;
    out.min_ratio = std::numeric_limits<double>::infinity();
    const double fd_h = 1e-4 * (s_hi - s_lo);

    for (int i = 0; i < samples; ++i) {
        double s = s_lo + (s_hi - s_lo) * (i + 0.5) / samples;
        auto off = resonance_offsets(basis, N, s);
        if (off.blow_up) continue;
        double t_res = s + off.omega;

        // ratio at offsets u spread across the band (u = 0 via the limit)
        double band = 0.9 * delta / std::max(basis.a1(t_res), 1e-12);
        for (double frac : {-0.9, -0.4, -0.05, 0.05, 0.4, 0.9}) {
            double t = t_res + frac * band;
            if (!basis.in_span(t) || t <= s) continue;
            double num = std::abs(std::sin(basis.A(t) - basis.A(s)));
            double den = std::abs(t - s - off.omega);
            if (den > 1e-12) out.min_ratio = std::min(out.min_ratio, num / den);
        }
        // u -> 0 limit: |sin| / |u| -> a1(t_res)
        out.min_ratio = std::min(out.min_ratio, basis.a1(t_res));

        // finite-difference derivative of omega_N against the a1 ratio
        auto op = resonance_offsets(basis, N, s + fd_h);
        auto om = resonance_offsets(basis, N, s - fd_h);
        if (!op.blow_up && !om.blow_up) {
            double fd = (op.omega - om.omega) / (2.0 * fd_h);
            double ratio = basis.a1(s) / basis.a1(t_res);
            out.max_derivative_error = std::max(out.max_derivative_error, std::abs(1.0 + fd - ratio));
            if (!(1.0 + fd > 0.0)) out.monotone = false;
        }

        double t_probe = std::min(t_res + 0.5 * band, basis.span);
        out.max_phase_identity_residual = std::max(out.max_phase_identity_residual, phase_identity_residual(basis, t_probe, s, N));
        ++out.samples_used;
    }
    if (out.samples_used == 0)
        throw std::runtime_error("sine_lower_bound_check: no usable resonant samples in window");
    return out;
}

}  // namespace tdho
