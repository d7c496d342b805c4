#pragma once

// Shared fixtures for the unit suites.

#include "tdho/gaussian.hpp"

namespace tdho::testutil {

inline WaveField gauss1d(std::size_t n = 512, double h = 0.08, double x0 = 0.0, double p0 = 0.0,
                         cplx w = cplx(0.0, 1.0)) {
    GaussianState g;
    g.center[0] = x0;
    g.momentum[0] = p0;
    g.width[0] = w;
    return sample_gaussian(g, GridSpec::centered(1, n, h));
}

inline WaveField gauss2d(std::size_t n = 128, double h = 0.15, double x0 = 0.0, double y0 = 0.0,
                         double px = 0.0, double py = 0.0) {
    GaussianState g;
    g.dim = 2;
    g.center = {x0, y0, 0};
    g.momentum = {px, py, 0};
    return sample_gaussian(g, GridSpec::centered(2, n, h));
}

}  // namespace tdho::testutil
