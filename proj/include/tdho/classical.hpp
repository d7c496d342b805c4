#pragma once

// Classical side of the factorization: solve the oscillator equation
// y'' + (sigma/m) y = 0 for the canonical pair
//   zeta1(0) = 1, zeta1'(0) = 0;  zeta2(0) = 0, zeta2'(0) = 1,
// form the normalized pair y1 = zeta2, y2 = m zeta1 (so that
// y1(0)^2 + y2(0)^2 = m W with W = m), and expose the coefficient
// functions
//   a1 = W/(y1^2 + y2^2),  a2 = -(y1' y1 + y2' y2)/(y1^2 + y2^2),
//   A(t) = integral of a1 from 0 to t.
// The basis is immutable after construction and safe for concurrent reads.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tdho/fit.hpp"
#include "tdho/model.hpp"
#include "tdho/ode.hpp"

namespace tdho {

struct FactorValues {
    double a1;  // > 0
    double a2;
    double A;  // accumulated phase, radians
};

struct AsymptoticsReport {
    double y1_exponent = 0, y1_r2 = 0;      // expect 1 - lambda
    double y2_exponent = 0, y2_r2 = 0;      // lambda for a two-sided subdominant pair
    double a1_slope = 0, a1_r2 = 0;         // expect 2 lambda - 2
    double c1_plus = 0, c1_minus = 0;       // fitted coefficients of |t|^{y1_exponent}
    double c2_plus = 0, c2_minus = 0;
    double c_m = 0, c_M = 0;                // sandwich constants for a1 * t^{2-2 lambda}
    double c0 = 0;                          // sup of (y1^2+y2^2)^{-1} on the fit core
    double A_tail_bound = 0;                // certified bound on A(inf) - A(T)
    double fit_window_lo = 0, fit_window_hi = 0;
    bool assumption_ok = false;             // power-law fits accepted (R^2 >= 0.99)
};

class ClassicalBasis {
  public:
    CoefficientModel model;
    double span = 0;     // solved over [-span, span]
    double tol = 0;
    double m = 1;
    double W = 1;        // Wronskian of (y1, y2); equals m by construction

    // State layout: (zeta1, zeta1', zeta2, zeta2').
    double y1(double t) const { return state(t)[2]; }
    double dy1(double t) const { return state(t)[3]; }
    double y2(double t) const { return m * state(t)[0]; }
    double dy2(double t) const { return m * state(t)[1]; }

    double a1(double t) const {
        auto s = state(t);
        double u1 = s[2], u2 = m * s[0];
        return W / (u1 * u1 + u2 * u2);
    }

    double a2(double t) const {
        auto s = state(t);
        double u1 = s[2], du1 = s[3], u2 = m * s[0], du2 = m * s[1];
        return -(du1 * u1 + du2 * u2) / (u1 * u1 + u2 * u2);
    }

    double wronskian_at(double t) const {
        auto s = state(t);
        double u1 = s[2], du1 = s[3], u2 = m * s[0], du2 = m * s[1];
        return du1 * u2 - u1 * du2;
    }

    // Accumulated phase from the quadrature table, refined locally.
    double A(double t) const {
        check_span(t);
        auto it = std::upper_bound(knot_t_.begin(), knot_t_.end(), t);
        std::size_t k = static_cast<std::size_t>(std::distance(knot_t_.begin(), it));
        if (k == 0) k = 1;
        if (k > knot_A_.size() - 1) k = knot_A_.size() - 1;
        double t_knot = knot_t_[k - 1];
        double base = knot_A_[k - 1];
        if (t == t_knot) return base;
        return base + adaptive_quad([this](double s) { return a1(s); }, t_knot, t, 1e-13);
    }

    FactorValues factors_at(double t) const {
        check_span(t);
        return FactorValues{a1(t), a2(t), A(t)};
    }

    // A(+inf)/A(-inf) estimates: table value at the span edge plus the
    // fitted power-law tail. Unbounded for assumption-violating fixtures.
    double A_limit(int sign) const {
        if (model.violates_assumption)
            return sign > 0 ? std::numeric_limits<double>::infinity()
                            : -std::numeric_limits<double>::infinity();
        return sign > 0 ? A_inf_plus_ : A_inf_minus_;
    }

    bool in_span(double t) const { return t >= -span && t <= span; }

    // -- construction ------------------------------------------------------

    static ClassicalBasis solve(const CoefficientModel& md, double T_ode, double tol);

    AsymptoticsReport verify_asymptotics(double window_lo = 1e2) const;

  private:
    std::vector<DenseStep<4>> fwd_, bwd_;  // t >= 0 and t <= 0 halves
    std::vector<double> fwd_end_, bwd_end_;  // |t0 + h| per segment, increasing
    std::vector<double> knot_t_, knot_A_;  // A at dense-step boundaries
    double A_inf_plus_ = 0, A_inf_minus_ = 0;

    void check_span(double t) const {
        if (!in_span(t)) throw std::out_of_range("classical basis: t outside solved span");
    }

    std::array<double, 4> state(double t) const {
        check_span(t);
        const auto& segs = t >= 0 ? fwd_ : bwd_;
        const auto& ends = t >= 0 ? fwd_end_ : bwd_end_;
        if (segs.empty()) throw std::logic_error("classical basis: empty solution");
        // segment i covers [t0_i, t0_i + h_i]; ends hold |t0 + h| in increasing order
        auto it = std::lower_bound(ends.begin(), ends.end(), std::abs(t));
        std::size_t idx = static_cast<std::size_t>(std::distance(ends.begin(), it));
        if (idx >= segs.size()) idx = segs.size() - 1;
        const auto& st = segs[idx];
        return st.eval(std::clamp(t, std::min(st.t0, st.t0 + st.h), std::max(st.t0, st.t0 + st.h)));
    }

    friend ClassicalBasis solve_classical(const CoefficientModel&, double, double);
};

inline ClassicalBasis ClassicalBasis::solve(const CoefficientModel& md, double T_ode, double tol) {
    if (!(tol > 0.0 && tol <= 1e-3)) throw std::invalid_argument("solve_classical: tol must be in (0, 1e-3]");
    if (!(T_ode >= 1.0)) throw std::invalid_argument("solve_classical: T_ode must be >= 1");
    md.validate();

    ClassicalBasis b;
    b.model = md;
    b.span = T_ode;
    b.tol = tol;
    b.m = md.m;
    b.W = md.m;

    auto rhs = [&md](double t, const std::array<double, 4>& y) {
        double k = md.sigma(t) / md.m;
        return std::array<double, 4>{y[1], -k * y[0], y[3], -k * y[2]};
    };
    std::array<double, 4> y0{1.0, 0.0, 0.0, 1.0};
    b.fwd_ = integrate_dopri5<4>(rhs, y0, 0.0, T_ode, tol);
    b.bwd_ = integrate_dopri5<4>(rhs, y0, 0.0, -T_ode, tol);
    for (const auto& st : b.fwd_) b.fwd_end_.push_back(std::abs(st.t0 + st.h));
    for (const auto& st : b.bwd_) b.bwd_end_.push_back(std::abs(st.t0 + st.h));

    // Linear-independence sanity: the canonical pair has unit Wronskian.
    double w_edge = b.wronskian_at(T_ode);
    if (!(std::abs(w_edge) > 0.5 * md.m))
        throw std::runtime_error("solve_classical: Wronskian collapsed; solutions became dependent");

    // Cumulative phase table at dense-step boundaries, both directions.
    auto build_knots = [&](const std::vector<DenseStep<4>>& segs, double dir) {
        double acc = 0.0;
        for (const auto& st : segs) {
            double t0 = st.t0, t1 = st.t0 + st.h;
            acc += adaptive_quad([&b](double s) { return b.a1(s); }, t0, t1, 1e-13);
            b.knot_t_.push_back(t1);
            b.knot_A_.push_back(acc);
            (void)dir;
        }
    };
    b.knot_t_.push_back(0.0);
    b.knot_A_.push_back(0.0);
    build_knots(b.fwd_, 1.0);
    build_knots(b.bwd_, -1.0);
    // sort knots by time (backward half was appended in reverse order)
    std::vector<std::size_t> order(b.knot_t_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return b.knot_t_[i] < b.knot_t_[j]; });
    std::vector<double> kt, kA;
    kt.reserve(order.size());
    kA.reserve(order.size());
    for (auto i : order) {
        kt.push_back(b.knot_t_[i]);
        kA.push_back(b.knot_A_[i]);
    }
    b.knot_t_ = std::move(kt);
    b.knot_A_ = std::move(kA);

    if (!md.violates_assumption) {
        // Tail of A beyond the span from the fitted a1 power law.
        double lam = md.lambda;
        auto tail = [&](int sign) {
            double T = 0.9 * T_ode;
            std::vector<double> ts, as;
            for (int i = 0; i < 40; ++i) {
                double t = sign * std::exp(std::log(0.25 * T_ode) +
                                           (std::log(T) - std::log(0.25 * T_ode)) * i / 39.0);
                ts.push_back(std::abs(t));
                as.push_back(b.a1(t));
            }
            // envelope constant c_M for a1 <= c_M |t|^{2 lam - 2}
            double cM = 0.0;
            for (std::size_t i = 0; i < ts.size(); ++i)
                cM = std::max(cM, as[i] * std::pow(ts[i], 2.0 - 2.0 * lam));
            return cM * std::pow(T_ode, 2.0 * lam - 1.0) / (1.0 - 2.0 * lam);
        };
        b.A_inf_plus_ = b.A(T_ode) + tail(+1);
        b.A_inf_minus_ = b.A(-T_ode) - tail(-1);
    }
    return b;
}

inline ClassicalBasis solve_classical(const CoefficientModel& md, double T_ode, double tol) {
    return ClassicalBasis::solve(md, T_ode, tol);
}

inline AsymptoticsReport ClassicalBasis::verify_asymptotics(double window_lo) const {
    if (span < 10.0 * window_lo && span < 1e3)
        throw std::invalid_argument("verify_asymptotics: span too short for tail fits");
    AsymptoticsReport rep;
    double lo = window_lo, hi = 0.9 * span;
    rep.fit_window_lo = lo;
    rep.fit_window_hi = hi;

    std::vector<double> ts;
    for (int i = 0; i < 80; ++i)
        ts.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / 79.0));

    auto abs_samples = [&](auto&& fn, int sign) {
        std::vector<double> xs, ys;
        for (double t : ts) {
            double v = std::abs(fn(sign * t));
            if (v > 0) {
                xs.push_back(t);
                ys.push_back(v);
            }
        }
        return fit_power_law(xs, ys);
    };

    auto f1p = abs_samples([&](double t) { return y1(t); }, +1);
    auto f1m = abs_samples([&](double t) { return y1(t); }, -1);
    auto f2p = abs_samples([&](double t) { return y2(t); }, +1);
    auto f2m = abs_samples([&](double t) { return y2(t); }, -1);
    rep.y1_exponent = 0.5 * (f1p.slope + f1m.slope);
    rep.y1_r2 = std::min(f1p.r2, f1m.r2);
    rep.y2_exponent = 0.5 * (f2p.slope + f2m.slope);
    rep.y2_r2 = std::min(f2p.r2, f2m.r2);
    rep.c1_plus = std::exp(f1p.intercept);
    rep.c1_minus = std::exp(f1m.intercept);
    rep.c2_plus = std::exp(f2p.intercept);
    rep.c2_minus = std::exp(f2m.intercept);

    {
        std::vector<double> xs, ys;
        for (double t : ts)
            for (int sign : {-1, 1}) {
                xs.push_back(t);
                ys.push_back(a1(sign * t));
            }
        auto fa = fit_power_law(xs, ys);
        rep.a1_slope = fa.slope;
        rep.a1_r2 = fa.r2;
        double lam = model.lambda;
        rep.c_m = std::numeric_limits<double>::infinity();
        rep.c_M = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            double env = ys[i] * std::pow(xs[i], 2.0 - 2.0 * lam);
            rep.c_m = std::min(rep.c_m, env);
            rep.c_M = std::max(rep.c_M, env);
        }
        rep.A_tail_bound = rep.c_M * std::pow(span, 2.0 * lam - 1.0) / (1.0 - 2.0 * lam);
    }

    double c0 = 0.0;
    for (int i = 0; i <= 400; ++i) {
        double t = -window_lo + 2.0 * window_lo * i / 400.0;
        double u1 = y1(t), u2 = y2(t);
        c0 = std::max(c0, 1.0 / (u1 * u1 + u2 * u2));
    }
    rep.c0 = c0;

    rep.assumption_ok = rep.a1_r2 >= 0.99 && rep.y1_r2 >= 0.99;
    return rep;
}

}  // namespace tdho
