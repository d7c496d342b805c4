#pragma once

// Charged particle in a homogeneous magnetic field B(t) along x3,
// symmetric gauge. The propagator reduces to the quadratic-potential
// engine via
//   U_L(t,0) = e^{i Omega(t) L} U~0(t,0),
//   sigma(t) = q^2 B(t)^2 / (4m),   Omega(t) = int_0^t q B / (2m),
// with L = x1 p2 - x2 p1 acting as a coordinate rotation:
//   (e^{i theta L} f)(x) = f(R_theta x),
//   R_theta = [[cos, -sin], [sin, cos]]   (sign fixed by the generator test).
// In 3-D the axial direction carries a free factor e^{i t d3^2 / (2m)}.
//
// Rotations are applied by the three-shear identity
//   R_theta = Sx(-tan(theta/2)) Sy(sin theta) Sx(-tan(theta/2)),
// each shear a band-limited FFT shift, after reducing theta modulo exact
// quarter-turn index permutations so shear factors stay <= tan(pi/4).

#include <functional>

#include "tdho/dispersive.hpp"
#include "tdho/propagator.hpp"

namespace tdho {

struct MagneticModel {
    std::function<double(double)> B;
    double charge = 1.0;  // q, nonzero
    double m = 1.0;
    double lambda = 0.0;  // decay index of the derived sigma
    std::string name = "landau";

    void validate() const {
        if (!B) throw std::invalid_argument("magnetic model: B not set");
        if (charge == 0.0) throw std::invalid_argument("magnetic model: charge must be nonzero");
        if (!(m > 0.0)) throw std::invalid_argument("magnetic model: mass must be positive");
    }

    double sigma(double t) const {
        double b = B(t);
        return charge * charge * b * b / (4.0 * m);
    }

    double Omega(double t) const {
        return adaptive_quad([this](double s) { return charge * B(s) / (2.0 * m); }, 0.0, t, 1e-12);
    }
};

// B(t) = b0 (1 + t^2)^{-beta}; with beta = 1/2 the derived sigma decays
// like t^{-2} with index lambda solving lambda(1-lambda) = (q b0 / (2m))^2·m/...
// callers pick b0 = 2 m sqrt(lambda (1-lambda)) / |q| to land on a given lambda.
inline MagneticModel landau_model(double b0, double beta, double q, double m) {
    MagneticModel mag;
    mag.B = [b0, beta](double t) { return b0 * std::pow(1.0 + t * t, -beta); };
    mag.charge = q;
    mag.m = m;
    mag.name = "landau";
    // at beta = 1/2: sigma/m -> k^2 t^{-2} with k = q b0/(2m); matching the
    // Euler-type equation y'' + l(1-l) t^{-2} y = 0 gives the decay index l
    if (std::abs(beta - 0.5) < 1e-12) {
        double k = q * b0 / (2.0 * m);
        mag.lambda = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * k * k)));
    }
    return mag;
}

// Field strength derived from the envelope-profile potential:
// B(t) = 2 sqrt(m sigma_profile(t)) / |q|, so the planar reduction lands
// exactly on the profile model with its exact a1 power law. (The profile
// sigma is strictly positive for m <= 1, so B is well defined; the
// b0 (1+t^2)^{-beta} family only matches it asymptotically.)
inline MagneticModel landau_profile_model(double lambda, double q, double m = 1.0) {
    auto md = profile_model(lambda, m);
    MagneticModel mag;
    mag.B = [md, q, m](double t) {
        double s = md.sigma(t);
        if (s < 0.0) throw std::domain_error("landau_profile_model: sigma < 0; no real B exists here");
        return 2.0 * std::sqrt(m * s) / std::abs(q);
    };
    mag.charge = q;
    mag.m = m;
    mag.lambda = lambda;
    mag.name = "landau-profile";
    return mag;
}

inline CoefficientModel sigma_from_field(const MagneticModel& mag) {
    mag.validate();
    CoefficientModel md;
    md.name = mag.name + ":sigma";
    md.m = mag.m;
    md.lambda = mag.lambda;
    md.sigma = [mag](double t) { return mag.sigma(t); };
    md.violates_assumption = false;
    return md;
}

namespace detail {

inline bool planar_centered(const GridSpec& g) {
    for (int a = 0; a < 2; ++a)
        if (std::abs(g.x0[a] + 0.5 * static_cast<double>(g.n[a]) * g.h[a]) > 1e-12 * g.h[a])
            return false;
    return true;
}

// The engine's parity/refocus steps can leave the grid shifted by one
// spacing; recentre by band-limited resampling before rotating.
inline WaveField center_planar(const WaveField& f) {
    if (planar_centered(f.grid)) return f;
    GridSpec target = f.grid;
    for (int a = 0; a < 2; ++a) target.x0[a] = -0.5 * static_cast<double>(target.n[a]) * target.h[a];
    return resample(f, target);
}

inline void require_square_centered(const WaveField& f) {
    const GridSpec& g = f.grid;
    if (g.dim < 2) throw std::invalid_argument("rotate: field must be 2-D or 3-D");
    if (g.n[0] != g.n[1] || g.h[0] != g.h[1])
        throw std::invalid_argument("rotate: (x1, x2) grid must be square with equal spacing");
    for (int a = 0; a < 2; ++a)
        if (std::abs(g.x0[a] + 0.5 * static_cast<double>(g.n[a]) * g.h[a]) > 1e-12 * g.h[a])
            throw std::invalid_argument("rotate: (x1, x2) grid must be centered (x0 = -N h / 2)");
}

// Exact quarter turn: g(x1, x2) = f(-x2, x1), index permutation on the
// centered square grid (periodic wrap on the single edge row).
inline WaveField quarter_turn(const WaveField& f) {
    WaveField out(f.grid, f.space);
    const std::size_t N = f.grid.n[0];
    const std::size_t inner = f.grid.dim > 2 ? f.grid.n[2] : 1;
    for (std::size_t i = 0; i < N; ++i)        // x1 index of the output
        for (std::size_t j = 0; j < N; ++j) {  // x2 index of the output
            // f(-x2, x1): source indices (N - j mod N, i)
            std::size_t si = (N - j) % N, sj = i;
            const cplx* src = f.samples.data() + (si * N + sj) * inner;
            cplx* dst = out.samples.data() + (i * N + j) * inner;
            for (std::size_t k = 0; k < inner; ++k) dst[k] = src[k];
        }
    return out;
}

// Shear along `axis` by the transverse coordinate: g(x) = f(x + a*x_perp e_axis),
// i.e. each line is shifted by s = a * x_perp via the band-limited shift theorem.
inline WaveField shear(const WaveField& f, int axis, double a) {
    WaveField out = f;
    const int perp = 1 - axis;
    const std::size_t N = f.grid.n[axis];
    const double h = f.grid.h[axis];
    // periodic fractional shift: multiply DFT bin k' by e^{2 pi i k' s/(N h)}
    const std::size_t Np = f.grid.n[perp];
    for (std::size_t jp = 0; jp < Np; ++jp) {
        const double xp = f.grid.coord(perp, jp);
        const double s = a * xp;
        // gather lines with this fixed transverse index
        const std::size_t inner = f.grid.dim > 2 ? f.grid.n[2] : 1;
        std::vector<cplx> line(N);
        for (std::size_t k2 = 0; k2 < inner; ++k2) {
            for (std::size_t i = 0; i < N; ++i) {
                std::size_t idx = axis == 0 ? (i * f.grid.n[1] + jp) * inner + k2
                                            : (jp * f.grid.n[1] + i) * inner + k2;
                line[i] = out.samples[idx];
            }
            fft_inplace(line, true);
            for (std::size_t k = 0; k < N; ++k) {
                long long ks = static_cast<long long>(k);
                if (ks > static_cast<long long>(N / 2)) ks -= static_cast<long long>(N);
                double ph = 2.0 * pi * static_cast<double>(ks) * s / (static_cast<double>(N) * h);
                line[k] *= cplx(std::cos(ph), std::sin(ph)) / static_cast<double>(N);
            }
            fft_inplace(line, false);
            for (std::size_t i = 0; i < N; ++i) {
                std::size_t idx = axis == 0 ? (i * f.grid.n[1] + jp) * inner + k2
                                            : (jp * f.grid.n[1] + i) * inner + k2;
                out.samples[idx] = line[i];
            }
        }
    }
    return out;
}

}  // namespace detail

// (e^{i theta L} f)(x) = f(R_theta x) on the (x1, x2)-plane.
inline WaveField rotate(const WaveField& f, double theta) {
    detail::require_square_centered(f);
    const long long q = std::llround(theta / (0.5 * pi));
    double beta = theta - static_cast<double>(q) * 0.5 * pi;
    WaveField g = f;
    for (long long k = 0; k < ((q % 4) + 4) % 4; ++k) g = detail::quarter_turn(g);
    if (std::abs(beta) < 1e-14) return g;
    const double a = -std::tan(0.5 * beta);
    const double b = std::sin(beta);
    g = detail::shear(g, 0, a);
    g = detail::shear(g, 1, b);
    return detail::shear(g, 0, a);
}

// U_L(t,0) f0 for j = 2 (planar) or j = 3 (planar x free axial factor).
inline WaveField evolve_landau(const MagneticModel& mag, const ClassicalBasis& basis,
                               const WaveField& f0, double t, int j, const FlowParams& fp = {}) {
    mag.validate();
    if (j != 2 && j != 3) throw std::invalid_argument("evolve_landau: j must be 2 or 3");
    if (f0.grid.dim != j) throw std::invalid_argument("evolve_landau: field dimension must equal j");
    WaveField g = evolve(basis, f0, t, 2, fp);  // planar quadratic engine
    if (j == 3) {
        // free axial factor: multiply e^{-i t xi3^2/(2m)} in frequency
        detail::fourier_one_axis(g, 2, true);
        const double c = -0.5 * t / mag.m;
        const std::size_t inner = g.grid.n[2];
        for (std::size_t blk = 0; blk < g.samples.size(); blk += inner)
            for (std::size_t k = 0; k < inner; ++k) {
                double xi = g.grid.coord(2, k);
                double ph = c * xi * xi;
                g.samples[blk + k] *= cplx(std::cos(ph), std::sin(ph));
            }
        detail::fourier_one_axis(g, 2, false);
    }
    return rotate(detail::center_planar(g), mag.Omega(t));
}

inline WaveField evolve_landau_adjoint(const MagneticModel& mag, const ClassicalBasis& basis,
                                       const WaveField& f, double s, int j,
                                       const FlowParams& fp = {}) {
    mag.validate();
    if (j != 2 && j != 3) throw std::invalid_argument("evolve_landau_adjoint: j must be 2 or 3");
    WaveField g = rotate(detail::center_planar(f), -mag.Omega(s));
    if (j == 3) {
        detail::fourier_one_axis(g, 2, true);
        const double c = 0.5 * s / mag.m;
        const std::size_t inner = g.grid.n[2];
        for (std::size_t blk = 0; blk < g.samples.size(); blk += inner)
            for (std::size_t k = 0; k < inner; ++k) {
                double xi = g.grid.coord(2, k);
                double ph = c * xi * xi;
                g.samples[blk + k] *= cplx(std::cos(ph), std::sin(ph));
            }
        detail::fourier_one_axis(g, 2, false);
    }
    return evolve_adjoint(basis, g, s, 2, fp);
}

// Fused U_L(t,0) U_L(s,0)^*: rotation by Omega(t) - Omega(s), planar
// two_time engine, axial free factor of duration t - s. Composing the
// separate legs instead would alias at large comparable t, s (see
// two_time). The rotation is applied to the *input*: L commutes with the
// planar engine, and rotating the compact input field is numerically
// safe, while rotating the spread two_time output by shears folds its
// tails through the periodic boundary.
inline WaveField two_time_landau(const MagneticModel& mag, const ClassicalBasis& basis,
                                 const WaveField& f, double t, double s, int j,
                                 const FlowParams& fp = {}) {
    mag.validate();
    if (j != 2 && j != 3) throw std::invalid_argument("two_time_landau: j must be 2 or 3");
    WaveField g = rotate(detail::center_planar(f), mag.Omega(t) - mag.Omega(s));
    g = two_time(basis, g, t, s, 2, fp);
    if (j == 3) {
        detail::fourier_one_axis(g, 2, true);
        const double c = -0.5 * (t - s) / mag.m;
        const std::size_t inner = g.grid.n[2];
        for (std::size_t blk = 0; blk < g.samples.size(); blk += inner)
            for (std::size_t k = 0; k < inner; ++k) {
                double xi = g.grid.coord(2, k);
                double ph = c * xi * xi;
                g.samples[blk + k] *= cplx(std::cos(ph), std::sin(ph));
            }
        detail::fourier_one_axis(g, 2, false);
    }
    return g;
}

// Log-log decay scan of ||U_L(t) U_L(s)^* f||_inf / ||f||_1 over one outer
// region, same sampling strategy as the scalar decay_slope_scan.
inline ScanReport magnetic_dispersive_scan(const MagneticModel& mag, const ClassicalBasis& basis,
                                           int j, RegionKind kind, double r0, double delta,
                                           int samples = 50, double t_hi_frac = 0.9,
                                           const WaveField* probe = nullptr,
                                           const FlowParams& fp = {}, double t_lo_min = 0.0) {
    const bool comparable = kind == RegionKind::Omega0Plus || kind == RegionKind::Omega0Minus;
    const bool separated = kind == RegionKind::OmegaLambdaPlus || kind == RegionKind::OmegaLambdaMinus;
    if (!comparable && !separated)
        throw std::invalid_argument("magnetic_dispersive_scan: scan is defined on the outer regions");
    const double sign = (kind == RegionKind::Omega0Plus || kind == RegionKind::OmegaLambdaPlus) ? 1.0 : -1.0;

    WaveField f;
    if (probe) {
        f = *probe;
    } else {
        GaussianState g;
        g.dim = j;
        f = sample_gaussian(g, GridSpec::centered(j, j == 2 ? 256 : 64, 0.2));
    }
    ScanReport rep;
    rep.kind = "magnetic-decay:" + RegionLabel{kind}.str();

    // same asymptotic-onset windows as the scalar decay_slope_scan
    const double t_lo =
        std::max(comparable ? std::max(2.5 * r0, 16.0) : std::max(4.0 * r0, 100.0), t_lo_min);
    const double t_hi = t_hi_frac * basis.span;
    const double s_fix = 1.2 * r0;
    for (int i = 0; i < samples; ++i) {
        double t = std::exp(std::log(t_lo) + (std::log(t_hi) - std::log(t_lo)) * i / (samples - 1.0));
        double s = comparable ? 0.5 * t : s_fix;
        RegionLabel lab = classify_region(sign * t, sign * s, r0, delta, basis);
        if (lab.kind != kind) continue;
        if (std::abs(std::sin(basis.A(sign * t) - basis.A(sign * s))) < fp.eps_deg) continue;
        WaveField g = two_time_landau(mag, basis, f, sign * t, sign * s, j, fp);
        ScanPoint p;
        p.t = sign * t;
        p.s = sign * s;
        p.x = std::abs(t - s);
        p.value = norm_linf(g) / norm_l1(f);
        p.label = lab.str();
        rep.points.push_back(p);
    }
    if (rep.points.size() < 10)
        throw std::runtime_error("magnetic_dispersive_scan: insufficient non-resonant samples");
    rep.fit_loglog();
    rep.finish_minmax();
    return rep;
}

}  // namespace tdho
