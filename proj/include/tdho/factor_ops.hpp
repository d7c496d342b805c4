#pragma once

// The unitary building blocks of the propagator factorization: quadratic
// chirps M(tau), metadata dilations D(tau), the grid-aware continuous
// Fourier transform, parity, and band-limited resampling.
//
// Conventions:
//   (M(tau) f)(x) = e^{i x^2/(2 tau)} f(x)
//   (D(tau) f)(x) = (i tau)^{-n/2} f(x/tau), principal branch
//   (F f)(xi)     = (2 pi)^{-n/2} \int e^{-i x.xi} f(x) dx, unitary
//
// All operations accept an axis count `na` so that planar (2 of 3 axes)
// variants reuse the same code; axes [0, na) are the active ones.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "tdho/grid.hpp"

namespace tdho {

inline int active_axes(const WaveField& f, int na) {
    if (na <= 0 || na > f.grid.dim) return f.grid.dim;
    return na;
}

// Multiply by e^{i c rho^2 / 2} with rho^2 = sum of x_a^2 over active axes.
// This is M(tau) with c = 1/tau, evaluated without the division so callers
// can pass a vanishing coefficient directly.
inline WaveField chirp(const WaveField& f, double c, int na = 0) {
    const int d = active_axes(f, na);
    WaveField out = f;
    out.for_each([&](std::size_t idx, const std::array<double, 3>& x) {
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) r2 += x[a] * x[a];
        double ph = 0.5 * c * r2;
        out.samples[idx] = f.samples[idx] * cplx(std::cos(ph), std::sin(ph));
    });
    return out;
}

inline WaveField modulate(const WaveField& f, double tau, int na = 0) {
    if (tau == 0.0) throw std::invalid_argument("modulate: tau = 0; use chirp() with coefficient 0 for the no-op path");
    return chirp(f, 1.0 / tau, na);
}

namespace detail {

// (i tau)^p on the principal branch.
inline cplx itau_pow(double tau, double p) { return std::pow(cplx(0.0, tau), p); }

// Reverse sample order along one axis (index k -> N-1-k).
inline void reverse_axis(WaveField& f, int axis) {
    transform_along_axis(f, axis, [](std::vector<cplx>& line) {
        for (std::size_t i = 0, j = line.size() - 1; i < j; ++i, --j) std::swap(line[i], line[j]);
    });
}

}  // namespace detail

// D(tau): grid metadata scaled by tau, amplitude (i tau)^{-n/2}. Negative
// tau reverses orientation, handled exactly by reindexing.
inline WaveField dilate(const WaveField& f, double tau, int na = 0) {
    if (tau == 0.0) throw std::invalid_argument("dilate: tau = 0");
    const int d = active_axes(f, na);
    WaveField out = f;
    for (int a = 0; a < d; ++a) {
        const double hn = std::abs(tau) * f.grid.h[a];
        const std::size_t N = f.grid.n[a];
        if (tau > 0) {
            out.grid.x0[a] = tau * out.grid.x0[a];
        } else {
            detail::reverse_axis(out, a);
            out.grid.x0[a] = tau * (out.grid.x0[a] + static_cast<double>(N - 1) * out.grid.h[a]);
        }
        out.grid.h[a] = hn;
    }
    const cplx amp = detail::itau_pow(tau, -0.5 * d);
    for (auto& v : out.samples) v *= amp;
    return out;
}

// Exact inverse of dilate(., tau): amplitude (i tau)^{+n/2}, metadata
// scaled by 1/tau.
inline WaveField dilate_inv(const WaveField& f, double tau, int na = 0) {
    if (tau == 0.0) throw std::invalid_argument("dilate_inv: tau = 0");
    const int d = active_axes(f, na);
    WaveField out = f;
    for (int a = 0; a < d; ++a) {
        const double hn = f.grid.h[a] / std::abs(tau);
        const std::size_t N = f.grid.n[a];
        if (tau > 0) {
            out.grid.x0[a] = out.grid.x0[a] / tau;
        } else {
            detail::reverse_axis(out, a);
            out.grid.x0[a] = (out.grid.x0[a] + static_cast<double>(N - 1) * out.grid.h[a]) / tau;
        }
        out.grid.h[a] = hn;
    }
    const cplx amp = detail::itau_pow(tau, 0.5 * d);
    for (auto& v : out.samples) v *= amp;
    return out;
}

// Parity (P f)(x) = f(-x) on the active axes, exact reindexing.
inline WaveField parity(const WaveField& f, int na = 0) {
    const int d = active_axes(f, na);
    WaveField out = f;
    for (int a = 0; a < d; ++a) {
        detail::reverse_axis(out, a);
        out.grid.x0[a] = -(f.grid.x0[a] + static_cast<double>(f.grid.n[a] - 1) * f.grid.h[a]);
    }
    return out;
}

namespace detail {

// Grid-aware unitary transform along one axis; updates that axis' metadata.
inline void fourier_one_axis(WaveField& out, int a, bool forward) {
    {
        const std::size_t N = out.grid.n[a];
        const double h = out.grid.h[a];
        const double x0 = out.grid.x0[a];
        double dxi, xi0;
        out.grid.reciprocal_axis(a, dxi, xi0);
        if (forward) {
            // F(xi_j) = h/sqrt(2pi) e^{-i x0 xi_j} sum_k f_k e^{-i k h xi0} e^{-2pi i jk/N}
            const double scale = h / std::sqrt(2.0 * pi);
            transform_along_axis(out, a, [&](std::vector<cplx>& line) {
                for (std::size_t k = 0; k < N; ++k) {
                    double ph = -static_cast<double>(k) * h * xi0;
                    line[k] *= cplx(std::cos(ph), std::sin(ph));
                }
                fft_inplace(line, true);
                for (std::size_t j = 0; j < N; ++j) {
                    double xi = xi0 + static_cast<double>(j) * dxi;
                    double ph = -x0 * xi;
                    line[j] *= scale * cplx(std::cos(ph), std::sin(ph));
                }
            });
            out.grid.h[a] = dxi;
            out.grid.x0[a] = xi0;
        } else {
            // inverse: roles of (h, x0) and (dxi, xi0) swap with +i kernel
            const double scale = h / std::sqrt(2.0 * pi);  // h is the source (frequency) spacing here
            double hx = 2.0 * pi / (static_cast<double>(N) * h);
            double x0x = -0.5 * static_cast<double>(N) * hx;
            transform_along_axis(out, a, [&](std::vector<cplx>& line) {
                for (std::size_t j = 0; j < N; ++j) {
                    double ph = x0x * static_cast<double>(j) * h;
                    line[j] *= cplx(std::cos(ph), std::sin(ph));
                }
                fft_inplace(line, false);
                for (std::size_t k = 0; k < N; ++k) {
                    double x = x0x + static_cast<double>(k) * hx;
                    double ph = x * x0;
                    line[k] *= scale * cplx(std::cos(ph), std::sin(ph));
                }
            });
            out.grid.h[a] = hx;
            out.grid.x0[a] = x0x;
        }
    }
}

}  // namespace detail

// Grid-aware unitary Fourier transform along the active axes. Origin
// offsets are folded in analytically, so grids need not contain x = 0.
inline WaveField fourier_axes(const WaveField& f, bool forward, int na = 0) {
    const int d = active_axes(f, na);
    WaveField out = f;
    for (int a = 0; a < d; ++a) detail::fourier_one_axis(out, a, forward);
    return out;
}

// Full transform with the space tag flipped.
inline WaveField fourier(const WaveField& f) {
    WaveField out = fourier_axes(f, f.space == SpaceTag::Position);
    out.space = f.space == SpaceTag::Position ? SpaceTag::Frequency : SpaceTag::Position;
    return out;
}

namespace detail {

// Contract an (Nnew x Nold) matrix along one axis of a tensor.
inline void apply_matrix_along_axis(WaveField& f, int axis, std::size_t n_new,
                                    const std::vector<cplx>& mat) {
    const std::size_t n_old = f.grid.n[axis];
    GridSpec g2 = f.grid;
    g2.n[axis] = n_new;
    std::vector<cplx> out(g2.size(), cplx{});
    std::size_t stride = 1;
    for (int a = f.grid.dim - 1; a > axis; --a) stride *= f.grid.n[a];
    const std::size_t lines = f.grid.size() / n_old;
    std::vector<cplx> line(n_old);
    std::size_t stride_new = stride;  // inner strides unchanged
    for (std::size_t l = 0; l < lines; ++l) {
        std::size_t outer = l / stride;
        std::size_t inner = l % stride;
        std::size_t base = outer * n_old * stride + inner;
        std::size_t base_new = outer * n_new * stride_new + inner;
        for (std::size_t k = 0; k < n_old; ++k) line[k] = f.samples[base + k * stride];
        for (std::size_t i = 0; i < n_new; ++i) {
            cplx acc{};
            const cplx* row = mat.data() + i * n_old;
            for (std::size_t k = 0; k < n_old; ++k) acc += row[k] * line[k];
            out[base_new + i * stride_new] = acc;
        }
    }
    f.grid = g2;
    f.samples = std::move(out);
}

}  // namespace detail

// Band-limited (trigonometric) resampling onto a target grid: the field is
// interpreted as the trig polynomial fixed by its samples and evaluated at
// the target points. Exact for band-limited periodic content; target points
// outside the source box see the periodic extension.
inline WaveField resample(const WaveField& f, const GridSpec& target) {
    if (target.dim != f.grid.dim) throw std::invalid_argument("resample: dimension mismatch");
    WaveField spec = fourier_axes(f, true);
    // f(x) = prod_a (dxi_a/sqrt(2pi)) sum_j F_j e^{i x.xi_j}, separable per axis.
    for (int a = 0; a < f.grid.dim; ++a) {
        const std::size_t n_old = spec.grid.n[a];
        const std::size_t n_new = target.n[a];
        const double dxi = spec.grid.h[a];
        const double xi0 = spec.grid.x0[a];
        const double w = dxi / std::sqrt(2.0 * pi);
        std::vector<cplx> mat(n_new * n_old);
        for (std::size_t i = 0; i < n_new; ++i) {
            double x = target.coord(a, i);
            for (std::size_t j = 0; j < n_old; ++j) {
                double ph = x * (xi0 + static_cast<double>(j) * dxi);
                mat[i * n_old + j] = w * cplx(std::cos(ph), std::sin(ph));
            }
        }
        detail::apply_matrix_along_axis(spec, a, n_new, mat);
        spec.grid.h[a] = target.h[a];
        spec.grid.x0[a] = target.x0[a];
    }
    spec.space = f.space;
    spec.grid = target;
    return spec;
}

}  // namespace tdho
