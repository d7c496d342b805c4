#pragma once

// Weighted space-time norms
//   ||F||_{q,r,lambda} = ( int (1+t^2)^{-lambda/2} ||F(t)||_r^q dt )^{1/q}
// on uniformly sampled trajectories, the homogeneous Strichartz ratio
// ||U(t,0) phi||_{q,r,lambda} / ||phi||_2, and the retarded (Duhamel)
// composition int_0^t U(t,0) U(s,0)^* F(s) ds with its dual-norm ratio.

#include <functional>
#include <vector>

#include "tdho/dispersive.hpp"

namespace tdho {

struct TimeSlice {
    double t;
    WaveField f;
};
using Trajectory = std::vector<TimeSlice>;

struct WeightedNormResult {
    double value = 0;
    double quad_error = 0;  // Richardson estimate of the time-quadrature error
};

namespace detail {

// Composite Simpson over uniform samples (odd count); Richardson error
// from comparison with the half-resolution rule when available, otherwise
// Simpson-vs-trapezoid.
inline WeightedNormResult simpson_with_error(const std::vector<double>& g, double dt) {
    const std::size_t n = g.size();
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("time quadrature: need an odd number (>= 3) of uniform samples");
    auto simpson = [&](std::size_t stride) {
        double s = g.front() + g[n - 1];
        for (std::size_t i = stride; i < n - 1; i += stride)
            s += (((i / stride) % 2 == 1) ? 4.0 : 2.0) * g[i];
        return s * (dt * stride) / 3.0;
    };
    WeightedNormResult out;
    out.value = simpson(1);
    if ((n - 1) % 4 == 0) {
        out.quad_error = std::abs(out.value - simpson(2)) / 15.0;
    } else {
        double trap = 0.5 * (g.front() + g[n - 1]);
        for (std::size_t i = 1; i < n - 1; ++i) trap += g[i];
        out.quad_error = std::abs(out.value - trap * dt) / 3.0;
    }
    return out;
}

}  // namespace detail

// Scalar-sample form: times uniform and increasing, r_norms[i] = ||F(t_i)||_r.
// Only samples with |t| <= T enter; their count must remain odd.
inline WeightedNormResult weighted_strichartz_norm(const std::vector<double>& times,
                                                   const std::vector<double>& r_norms,
                                                   const NormSpec& spec, double T) {
    if (times.size() != r_norms.size() || times.size() < 3)
        throw std::invalid_argument("weighted_strichartz_norm: bad sample arrays");
    if (!(T > 0)) throw std::invalid_argument("weighted_strichartz_norm: T must be positive");
    const double dt = times[1] - times[0];
    std::vector<double> g;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (std::abs(times[i]) > T * (1.0 + 1e-12)) continue;
        if (i + 1 < times.size() && std::abs((times[i + 1] - times[i]) - dt) > 1e-9 * std::max(1.0, dt) &&
            std::abs(times[i + 1]) <= T)
            throw std::invalid_argument("weighted_strichartz_norm: time grid must be uniform");
        double w = std::pow(1.0 + times[i] * times[i], -0.5 * spec.lambda_w);
        g.push_back(w * std::pow(r_norms[i], spec.q));
    }
    auto res = detail::simpson_with_error(g, dt);
    WeightedNormResult out;
    out.value = std::pow(res.value, 1.0 / spec.q);
    // first-order propagation of the quadrature error through x^{1/q}
    out.quad_error = res.value > 0 ? out.value * res.quad_error / (spec.q * res.value) : res.quad_error;
    return out;
}

inline WeightedNormResult weighted_strichartz_norm(const Trajectory& traj, const NormSpec& spec,
                                                   double T) {
    std::vector<double> times, rn;
    times.reserve(traj.size());
    rn.reserve(traj.size());
    for (const auto& sl : traj) {
        times.push_back(sl.t);
        rn.push_back(norm_lr(sl.f, spec.r));
    }
    return weighted_strichartz_norm(times, rn, spec, T);
}

// ||U(t,0) phi||_{q,r,lambda} / ||phi||_2 over t in [-T, T] for each
// member of `family`, evaluated at T/2 and T to expose the growth under
// doubling. `steps_half` samples cover [0, T/2] (so 4*steps_half + 1 cover
// [-T, T]).
inline ScanReport strichartz_homogeneous_check(const ClassicalBasis& basis, const NormSpec& spec,
                                               const std::vector<WaveField>& family, double T,
                                               int steps_half = 100, const FlowParams& fp = {}) {
    if (family.empty()) throw std::invalid_argument("strichartz_homogeneous_check: empty family");
    if (!spec.admissible(family.front().grid.dim))
        throw std::invalid_argument("strichartz_homogeneous_check: non-admissible (q, r)");
    ScanReport rep;
    rep.kind = "strichartz-homogeneous";
    const int half = 2 * steps_half;                  // steps in [0, T]
    const double dt = T / static_cast<double>(half);  // so T/2 falls on a sample
    double max_growth = 0;
    for (std::size_t k = 0; k < family.size(); ++k) {
        const WaveField& phi = family[k];
        const double l2 = norm_l2(phi);
        std::vector<double> times, rn;
        for (int i = -half; i <= half; ++i) {
            double t = dt * i;
            times.push_back(t);
            rn.push_back(norm_lr(evolve(basis, phi, t, 0, fp), spec.r));
        }
        double vT = weighted_strichartz_norm(times, rn, spec, T).value / l2;
        double vH = weighted_strichartz_norm(times, rn, spec, 0.5 * T).value / l2;
        ScanPoint pH{0, 0, 0.5 * T, vH, "phi" + std::to_string(k) + "@T/2"};
        ScanPoint pT{0, 0, T, vT, "phi" + std::to_string(k) + "@T"};
        rep.points.push_back(pH);
        rep.points.push_back(pT);
        max_growth = std::max(max_growth, vT / vH - 1.0);
    }
    rep.growth = max_growth;
    rep.finish_minmax();
    return rep;
}

// Retarded composition via a cumulative adjoint integral: the running sum
// G(t) = int_0^t U(s,0)^* F(s) ds (trapezoid in s, slices resampled to the
// source grid) is pushed forward once per output time, u(t) = U(t,0) G(t).
// Reports ||u||_{q,r,lambda} on [0, T] (at T/2 and T) over the dual source
// norm ||F||_{q',r',-lambda}.
inline ScanReport duhamel_check(const ClassicalBasis& basis, const NormSpec& spec,
                                const Trajectory& F, double T, const FlowParams& fp = {}) {
    if (F.size() < 3) throw std::invalid_argument("duhamel_check: need >= 3 source slices");
    const double dt = F[1].t - F[0].t;
    if (!(F.front().t >= 0 && dt > 0)) throw std::invalid_argument("duhamel_check: source must be sampled forward from t >= 0");
    const GridSpec common = F.front().f.grid;

    // output time grid: the source grid extended to T with the same step,
    // count forced to 4k+1 for the Simpson/Richardson path
    std::vector<double> times;
    for (double t = F.front().t; t <= T * (1.0 + 1e-12); t += dt) times.push_back(t);
    while ((times.size() - 1) % 4 != 0) times.pop_back();

    WaveField G(common);
    WaveField prev_slice(common);  // trapezoid: half weight on both running ends
    bool have_prev = false;
    std::size_t src = 0;
    std::vector<double> rn;
    NormSpec dual{spec.q_conj(), spec.r_conj(), -spec.lambda_w};

    std::vector<double> src_times, src_rnorms;
    for (const auto& sl : F) {
        src_times.push_back(sl.t);
        src_rnorms.push_back(norm_lr(sl.f, dual.r));
    }
    if (src_times.size() % 2 == 0) {  // pad with a zero slice to odd count
        src_times.push_back(src_times.back() + dt);
        src_rnorms.push_back(0.0);
    }
    const double denom =
        weighted_strichartz_norm(src_times, src_rnorms, dual, src_times.back() + dt).value;

    for (double t : times) {
        while (src < F.size() && F[src].t <= t + 1e-12 * std::max(1.0, t)) {
            WaveField adj = resample(evolve_adjoint(basis, F[src].f, F[src].t, 0, fp), common);
            if (have_prev) {
                for (std::size_t i = 0; i < G.samples.size(); ++i)
                    G.samples[i] += 0.5 * dt * (prev_slice.samples[i] + adj.samples[i]);
            }
            prev_slice = adj;
            have_prev = true;
            ++src;
        }
        WaveField u = evolve(basis, G, t, 0, fp);
        rn.push_back(norm_lr(u, spec.r));
    }

    ScanReport rep;
    rep.kind = "duhamel";
    double vT = weighted_strichartz_norm(times, rn, spec, times.back()).value;
    double vH = weighted_strichartz_norm(times, rn, spec, 0.5 * times.back()).value;
    rep.points.push_back({0, 0, 0.5 * times.back(), denom > 0 ? vH / denom : 0.0, "ratio@T/2"});
    rep.points.push_back({0, 0, times.back(), denom > 0 ? vT / denom : 0.0, "ratio@T"});
    rep.growth = vH > 0 ? vT / vH - 1.0 : 0.0;
    rep.finish_minmax();
    return rep;
}

}  // namespace tdho
