#pragma once

// Embedded Dormand-Prince 5(4) integrator with the standard 4th-order
// continuous extension. State dimension is fixed at compile time; the
// classical module solves the two fundamental oscillator solutions and
// their derivatives as one 4-vector.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdho {

template <std::size_t Dim>
struct DenseStep {
    double t0, h;
    std::array<std::array<double, Dim>, 5> rcont;  // Hairer rcont1..rcont5

    std::array<double, Dim> eval(double t) const {
        double th = (t - t0) / h;
        double th1 = 1.0 - th;
        std::array<double, Dim> y;
        for (std::size_t i = 0; i < Dim; ++i)
            y[i] = rcont[0][i] +
                   th * (rcont[1][i] + th1 * (rcont[2][i] + th * (rcont[3][i] + th1 * rcont[4][i])));
        return y;
    }
};

struct StepUnderflow : std::runtime_error {
    double t;
    explicit StepUnderflow(double t_)
        : std::runtime_error("ode: step size underflow near t = " + std::to_string(t_)), t(t_) {}
};

// Integrates from t0 towards t_end (either direction); returns accepted
// steps with dense-output coefficients, ordered along the direction of
// integration.
template <std::size_t Dim, class Rhs>
std::vector<DenseStep<Dim>> integrate_dopri5(Rhs&& rhs, std::array<double, Dim> y, double t0,
                                             double t_end, double tol) {
    using Vec = std::array<double, Dim>;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                            a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    const double dir = t_end >= t0 ? 1.0 : -1.0;
    const double span = std::abs(t_end - t0);
    if (span == 0.0) return {};
    double t = t0;
    double h = dir * std::min(1e-2, span);
    Vec k1 = rhs(t, y);
    std::vector<DenseStep<Dim>> steps;
    const double hmin = span * 1e-14 + 1e-300;
    std::size_t max_iters = 100000000;
    while (dir * (t_end - t) > 0.0) {
        if (max_iters-- == 0) throw std::runtime_error("ode: iteration limit exceeded");
        if (std::abs(h) > std::abs(t_end - t)) h = t_end - t;
        Vec y2, y3, y4, y5, y6, y7;
        for (std::size_t i = 0; i < Dim; ++i) y2[i] = y[i] + h * a21 * k1[i];
        Vec k2 = rhs(t + c2 * h, y2);
        for (std::size_t i = 0; i < Dim; ++i) y3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        Vec k3 = rhs(t + c3 * h, y3);
        for (std::size_t i = 0; i < Dim; ++i)
            y4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        Vec k4 = rhs(t + c4 * h, y4);
        for (std::size_t i = 0; i < Dim; ++i)
            y5[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        Vec k5 = rhs(t + c5 * h, y5);
        for (std::size_t i = 0; i < Dim; ++i)
            y6[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        Vec k6 = rhs(t + h, y6);
        for (std::size_t i = 0; i < Dim; ++i)
            y7[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
        Vec k7 = rhs(t + h, y7);

        double err = 0.0;
        for (std::size_t i = 0; i < Dim; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            double sc = tol + tol * std::max(std::abs(y[i]), std::abs(y7[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / static_cast<double>(Dim));

        if (err <= 1.0) {
            DenseStep<Dim> st;
            st.t0 = t;
            st.h = h;
            for (std::size_t i = 0; i < Dim; ++i) {
                double ydiff = y7[i] - y[i];
                double bspl = h * k1[i] - ydiff;
                st.rcont[0][i] = y[i];
                st.rcont[1][i] = ydiff;
                st.rcont[2][i] = bspl;
                st.rcont[3][i] = ydiff - h * k7[i] - bspl;
                st.rcont[4][i] =
                    h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
            }
            steps.push_back(st);
            t += h;
            y = y7;
            k1 = k7;  // FSAL
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        fac = std::min(5.0, std::max(0.2, fac));
        h *= fac;
        if (std::abs(h) < hmin) throw StepUnderflow(t);
    }
    return steps;
}

// Adaptive Gauss-Legendre quadrature (7/15 point pair) on [a, b].
inline double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                            double tol = 1e-12, int depth = 0) {
    static const double xg15[15] = {-0.991455371120813, -0.949107912342759, -0.864864423359769,
                                    -0.741531185599394, -0.586087235467691, -0.405845151377397,
                                    -0.207784955007898, 0.0,                0.207784955007898,
                                    0.405845151377397,  0.586087235467691,  0.741531185599394,
                                    0.864864423359769,  0.949107912342759,  0.991455371120813};
    static const double wg15[15] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                                    0.140653259715525, 0.169004726639267, 0.190350578064785,
                                    0.204432940075298, 0.209482141084728, 0.204432940075298,
                                    0.190350578064785, 0.169004726639267, 0.140653259715525,
                                    0.104790010322250, 0.063092092629979, 0.022935322010529};
    static const double wg7[15] = {0.0, 0.129484966168870, 0.0, 0.279705391489277, 0.0,
                                   0.381830050505119, 0.0, 0.417959183673469, 0.0,
                                   0.381830050505119, 0.0, 0.279705391489277, 0.0,
                                   0.129484966168870, 0.0};
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s15 = 0.0, s7 = 0.0;
    for (int i = 0; i < 15; ++i) {
        double v = f(mid + half * xg15[i]);
        s15 += wg15[i] * v;
        if (wg7[i] != 0.0) s7 += wg7[i] * v;
    }
    s15 *= half;
    s7 *= half;
    double err = std::abs(s15 - s7);
    if (err <= tol * std::max(1.0, std::abs(s15)) || depth > 40) return s15;
    return adaptive_quad(f, a, mid, tol, depth + 1) + adaptive_quad(f, mid, b, tol, depth + 1);
}

}  // namespace tdho
