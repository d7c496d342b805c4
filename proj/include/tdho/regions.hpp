#pragma once

// Norm specifications for the weighted space-time spaces, the (t,s)-plane
// region decomposition, and the certified radius r0 separating the outer
// power-law regime from the core square.

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "tdho/classical.hpp"

namespace tdho {

struct NormSpec {
    double q;         // time exponent, > 2 when admissible
    double r;         // space exponent, >= 2 (may be inf)
    double lambda_w;  // weight index of (1+t^2)^{-lambda_w/2}

    double theta() const { return (1.0 - lambda_w) * (0.5 - 1.0 / r); }
    double q_conj() const { return q / (q - 1.0); }
    double r_conj() const { return std::isinf(r) ? 1.0 : r / (r - 1.0); }

    // scaling line 1/q + n/(2r) = n/4 with q > 2, r >= 2
    bool admissible(int n) const {
        if (!(q > 2.0) || !(r >= 2.0)) return false;
        double lhs = 1.0 / q + static_cast<double>(n) / (2.0 * r);
        return std::abs(lhs - 0.25 * n) < 1e-9;
    }
};

enum class RegionKind {
    Omega0Plus,
    Omega0Minus,
    OmegaLambdaPlus,
    OmegaLambdaMinus,
    CoreSquare,   // query filter; classification refines it to Resonant/Regular
    Resonant,
    Regular,
};

struct RegionLabel {
    RegionKind kind;
    int resonance_index = -1;  // N for Resonant labels

    std::string str() const {
        switch (kind) {
            case RegionKind::Omega0Plus: return "Omega0+";
            case RegionKind::Omega0Minus: return "Omega0-";
            case RegionKind::OmegaLambdaPlus: return "OmegaL+";
            case RegionKind::OmegaLambdaMinus: return "OmegaL-";
            case RegionKind::CoreSquare: return "Core";
            case RegionKind::Resonant: return "Res(" + std::to_string(resonance_index) + ")";
            case RegionKind::Regular: return "Reg";
        }
        return "?";
    }
};

// Smallest radius r such that, on sampled |t| >= r (both signs),
//  - |y1| and |y2| stay within a factor 2 of their fitted power laws, and
//  - the phase tail |A(+-inf) - A(+-r)| stays below pi/2.
// The tail beyond the span is covered by the fitted power-law envelope
// already folded into A_limit(). The fitted exponents are used as
// measured (the subdominant branch of a reverse-engineered pair need not
// decay like |t|^lambda; the envelope condition is about stability of the
// power law, which is what the outer-region estimates consume).
inline double compute_r0(const ClassicalBasis& basis, const AsymptoticsReport& rep) {
    if (basis.model.violates_assumption)
        throw std::invalid_argument("compute_r0: model violates the decay assumption");
    const double T = basis.span;

    auto envelope_ok = [&](double r) {
        for (int i = 0; i < 60; ++i) {
            double t = std::exp(std::log(r) + (std::log(0.95 * T) - std::log(r)) * i / 59.0);
            for (int sign : {+1, -1}) {
                double c1 = sign > 0 ? rep.c1_plus : rep.c1_minus;
                double c2 = sign > 0 ? rep.c2_plus : rep.c2_minus;
                double v1 = std::abs(basis.y1(sign * t));
                double v2 = std::abs(basis.y2(sign * t));
                double e1 = c1 * std::pow(t, rep.y1_exponent);
                double e2 = c2 * std::pow(t, rep.y2_exponent);
                if (!(v1 >= 0.5 * e1 && v1 <= 2.0 * e1)) return false;
                if (!(v2 >= 0.5 * e2 && v2 <= 2.0 * e2)) return false;
            }
        }
        return true;
    };
    auto tail_ok = [&](double r) {
        return std::abs(basis.A_limit(+1) - basis.A(r)) < 0.5 * pi &&
               std::abs(basis.A_limit(-1) - basis.A(-r)) < 0.5 * pi;
    };

    const double r_max = 0.1 * T;
    for (double r = 1.0; r <= r_max; r *= 1.1) {
        if (envelope_ok(r) && tail_ok(r)) return r;
    }
    throw std::runtime_error("compute_r0: span too short to certify the tail conditions");
}

// Partition of the (t,s)-plane given r0 and the resonance width delta.
// The outer same-sign quadrants split into the comparable-magnitude and
// separated-magnitude regions; everything else is labelled by the distance
// of |A(t)-A(s)| to the nearest multiple of pi, which is how the core
// square and the mixed strips are consumed downstream.
inline RegionLabel classify_region(double t, double s, double r0, double delta,
                                   const ClassicalBasis& basis) {
    const double at = std::abs(t), as = std::abs(s);
    const bool outer_pp = t >= r0 && s >= r0;
    const bool outer_mm = t <= -r0 && s <= -r0;
    if (outer_pp || outer_mm) {
        bool comparable = as >= 0.5 * at && as <= 2.0 * at;
        if (comparable)
            return {outer_pp ? RegionKind::Omega0Plus : RegionKind::Omega0Minus};
        return {outer_pp ? RegionKind::OmegaLambdaPlus : RegionKind::OmegaLambdaMinus};
    }
    double dA = std::abs(basis.A(t) - basis.A(s));
    long long N = std::llround(dA / pi);
    if (std::abs(dA - static_cast<double>(N) * pi) <= delta)
        return {RegionKind::Resonant, static_cast<int>(N)};
    return {RegionKind::Regular};
}

// Default resonance half-width; capped so the outer tail stays thick
// enough (the construction requires at least 2*delta of phase beyond r0).
inline double default_delta(const ClassicalBasis& basis, double r0) {
    double tail = std::min(std::abs(basis.A_limit(+1) - basis.A(r0)),
                           std::abs(basis.A_limit(-1) - basis.A(-r0)));
    return std::min(pi / 8.0, 0.45 * tail);
}

}  // namespace tdho
