#pragma once

// Rectangular sampling grids and complex wave fields. Grid spacing and
// origin are metadata: dilations rescale them without touching samples.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "tdho/fft.hpp"

namespace tdho {

enum class SpaceTag { Position, Frequency };

struct GridSpec {
    int dim = 1;
    std::array<std::size_t, 3> n{1, 1, 1};   // points per axis (power of two)
    std::array<double, 3> h{1.0, 1.0, 1.0};  // spacing per axis (> 0)
    std::array<double, 3> x0{0.0, 0.0, 0.0};  // coordinate of sample index 0

    static GridSpec centered(int dim, std::size_t pts, double spacing) {
        GridSpec g;
        g.dim = dim;
        for (int a = 0; a < dim; ++a) {
            g.n[a] = pts;
            g.h[a] = spacing;
            g.x0[a] = -0.5 * static_cast<double>(pts) * spacing;
        }
        g.validate();
        return g;
    }

    // Spacing such that the grid is its own reciprocal: h = sqrt(2*pi/N).
    static GridSpec self_dual(int dim, std::size_t pts) {
        return centered(dim, pts, std::sqrt(2.0 * pi / static_cast<double>(pts)));
    }

    void validate() const {
        if (dim < 1 || dim > 3) throw std::invalid_argument("grid: dim must be 1..3");
        for (int a = 0; a < dim; ++a) {
            if (!is_pow2(n[a])) throw std::invalid_argument("grid: points per axis must be a power of two");
            if (!(h[a] > 0.0)) throw std::invalid_argument("grid: spacing must be positive");
        }
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int a = 0; a < dim; ++a) s *= n[a];
        return s;
    }

    double coord(int axis, std::size_t i) const { return x0[axis] + static_cast<double>(i) * h[axis]; }

    // Riemann-sum measure of one cell.
    double cell() const {
        double c = 1.0;
        for (int a = 0; a < dim; ++a) c *= h[a];
        return c;
    }

    // Reciprocal grid along one axis: N points, spacing 2*pi/(N*h), centered.
    void reciprocal_axis(int axis, double& dxi, double& xi0) const {
        dxi = 2.0 * pi / (static_cast<double>(n[axis]) * h[axis]);
        xi0 = -0.5 * static_cast<double>(n[axis]) * dxi;
    }

    bool same_shape(const GridSpec& o) const {
        if (dim != o.dim) return false;
        for (int a = 0; a < dim; ++a)
            if (n[a] != o.n[a]) return false;
        return true;
    }
};

struct WaveField {
    GridSpec grid;
    SpaceTag space = SpaceTag::Position;
    std::vector<cplx> samples;

    WaveField() = default;
    explicit WaveField(const GridSpec& g, SpaceTag tag = SpaceTag::Position)
        : grid(g), space(tag), samples(g.size(), cplx{}) {}

    // Row-major layout, last axis fastest.
    std::size_t index(std::size_t i0, std::size_t i1 = 0, std::size_t i2 = 0) const {
        std::size_t idx = i0;
        if (grid.dim > 1) idx = idx * grid.n[1] + i1;
        if (grid.dim > 2) idx = idx * grid.n[2] + i2;
        return idx;
    }

    // Apply fn(flat_index, x_vector) over the grid.
    template <class Fn>
    void for_each(Fn&& fn) const {
        std::array<double, 3> x{0, 0, 0};
        std::size_t idx = 0;
        const int d = grid.dim;
        std::array<std::size_t, 3> i{0, 0, 0};
        std::array<std::size_t, 3> lim{grid.n[0], d > 1 ? grid.n[1] : 1, d > 2 ? grid.n[2] : 1};
        for (i[0] = 0; i[0] < lim[0]; ++i[0]) {
            x[0] = grid.coord(0, i[0]);
            for (i[1] = 0; i[1] < lim[1]; ++i[1]) {
                if (d > 1) x[1] = grid.coord(1, i[1]);
                for (i[2] = 0; i[2] < lim[2]; ++i[2], ++idx) {
                    if (d > 2) x[2] = grid.coord(2, i[2]);
                    fn(idx, x);
                }
            }
        }
    }
};

inline double norm_l2(const WaveField& f) {
    double s = 0.0;
    for (const auto& v : f.samples) s += std::norm(v);
    return std::sqrt(s * f.grid.cell());
}

inline double norm_l1(const WaveField& f) {
    double s = 0.0;
    for (const auto& v : f.samples) s += std::abs(v);
    return s * f.grid.cell();
}

inline double norm_linf(const WaveField& f) {
    double s = 0.0;
    for (const auto& v : f.samples) s = std::max(s, std::abs(v));
    return s;
}

// L^r grid norm; r = inf handled by norm_linf.
inline double norm_lr(const WaveField& f, double r) {
    if (std::isinf(r)) return norm_linf(f);
    double s = 0.0;
    for (const auto& v : f.samples) s += std::pow(std::abs(v), r);
    return std::pow(s * f.grid.cell(), 1.0 / r);
}

// L2 distance on a shared grid.
inline double dist_l2(const WaveField& a, const WaveField& b) {
    if (a.samples.size() != b.samples.size())
        throw std::invalid_argument("dist_l2: field sizes differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) s += std::norm(a.samples[i] - b.samples[i]);
    return std::sqrt(s * a.grid.cell());
}

// L2 distance after removing one fitted global phase (branch conventions
// of (i tau)^{n/2} differ between evaluation routes).
inline double dist_l2_phase_free(const WaveField& a, const WaveField& b) {
    if (a.samples.size() != b.samples.size())
        throw std::invalid_argument("dist_l2_phase_free: field sizes differ");
    cplx inner{};
    for (std::size_t i = 0; i < a.samples.size(); ++i) inner += std::conj(b.samples[i]) * a.samples[i];
    cplx phase = std::abs(inner) > 0 ? inner / std::abs(inner) : cplx(1.0, 0.0);
    double s = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) s += std::norm(a.samples[i] - phase * b.samples[i]);
    return std::sqrt(s * a.grid.cell());
}

// In-place 1D transforms along `axis` of a multi-dim array.
template <class Fn>
void transform_along_axis(WaveField& f, int axis, Fn&& line_op) {
    const std::size_t n = f.grid.n[axis];
    std::size_t stride = 1;
    for (int a = f.grid.dim - 1; a > axis; --a) stride *= f.grid.n[a];
    const std::size_t total = f.grid.size();
    const std::size_t lines = total / n;
    std::vector<cplx> line(n);
    for (std::size_t l = 0; l < lines; ++l) {
        // decompose l into (outer, inner) so that base = outer*n*stride + inner
        std::size_t outer = l / stride;
        std::size_t inner = l % stride;
        std::size_t base = outer * n * stride + inner;
        for (std::size_t k = 0; k < n; ++k) line[k] = f.samples[base + k * stride];
        line_op(line);
        for (std::size_t k = 0; k < n; ++k) f.samples[base + k * stride] = line[k];
    }
}

}  // namespace tdho
