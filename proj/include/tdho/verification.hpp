#pragma once

// The acceptance suite: eleven numbered criteria with tolerances pinned in
// code, shared between the standalone acceptance binary and the CLI
// `acceptance` subcommand. Each criterion produces one pass/fail line and
// a measurement detail string; scan-producing criteria also emit CSV
// artifacts, regenerated twice to certify byte-identical determinism.

#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "tdho/io.hpp"
#include "tdho/magnetic.hpp"
#include "tdho/resonance.hpp"
#include "tdho/strichartz.hpp"

namespace tdho {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct AcceptanceOutcome {
    std::vector<CriterionResult> criteria;
    std::map<std::string, std::string> artifacts;  // filename -> CSV bytes

    bool all_pass() const {
        for (const auto& c : criteria)
            if (!c.pass) return false;
        return !criteria.empty();
    }
};

namespace detail {

// Engine-only uniform in [0, 1): bit-exact across standard libraries,
// unlike std::uniform_real_distribution.
inline double urand(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline std::string fmt_sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

inline void emit(std::ostream* log, const CriterionResult& c) {
    if (!log) return;
    (*log) << "C" << (c.id < 10 ? "0" : "") << c.id << " " << c.name << " "
           << (c.pass ? "PASS" : "FAIL") << " (" << c.detail << ")\n";
    log->flush();
}

}  // namespace detail

inline AcceptanceOutcome run_acceptance(std::uint64_t seed = 0, std::ostream* log = nullptr) {
    using detail::fmt_sci;
    AcceptanceOutcome out;
    auto push = [&](CriterionResult c) {
        detail::emit(log, c);
        out.criteria.push_back(std::move(c));
    };

    const std::vector<CoefficientModel> decaying = {
        free_model(1.0), profile_model(0.0, 1.0), profile_model(0.1, 1.0),
        profile_model(0.25, 1.0), profile_model(0.4, 1.0)};

    // Shared classical bases (solve once, reuse across criteria).
    std::vector<ClassicalBasis> bases2000, bases1000;
    for (const auto& md : decaying) {
        bases2000.push_back(solve_classical(md, 2000.0, 1e-10));
        bases1000.push_back(solve_classical(md, 1000.0, 1e-10));
    }

    // ---- C1: Wronskian conservation -------------------------------------
    {
        CriterionResult c{1, "wronskian-conservation"};
        double worst = 0;
        for (const auto& b : bases2000)
            for (int i = 0; i <= 200; ++i) {
                double t = -1000.0 + 10.0 * i;
                worst = std::max(worst, std::abs(b.wronskian_at(t) - b.W) / std::abs(b.W));
            }
        c.pass = worst <= 1e-8;
        c.detail = "max relative drift " + fmt_sci(worst) + ", tol 1e-08, 5 models, |t| <= 1e3";
        push(c);
    }

    // ---- C2: coefficient asymptotics ------------------------------------
    {
        CriterionResult c{2, "coefficient-asymptotics"};
        c.pass = true;
        double worst_err = 0, worst_r2 = 1;
        for (const auto& md : decaying) {
            // fit window [1e2, 0.9 * span] = [1e2, 1e3]
            auto b = solve_classical(md, 1000.0 / 0.9, 1e-10);
            auto rep = b.verify_asymptotics(100.0);
            double err = std::abs(rep.a1_slope - (2.0 * md.lambda - 2.0));
            worst_err = std::max(worst_err, err);
            worst_r2 = std::min(worst_r2, rep.a1_r2);
            if (err > 0.02 || rep.a1_r2 < 0.999) c.pass = false;
        }
        c.detail = "max |slope - (2 lambda - 2)| = " + fmt_sci(worst_err) +
                   " (tol 0.02), min R^2 = " + fmt_sci(worst_r2) + " (>= 0.999)";
        push(c);
    }

    // ---- C3: phase boundedness ------------------------------------------
    {
        CriterionResult c{3, "phase-boundedness"};
        // The certified A(+-inf) estimate must be stable under doubling the
        // solve span 1e3 -> 2e3. (The raw value A(T) itself saturates at the
        // model-dependent rate T^{2 lambda - 1}; at lambda = 0.4 that tail
        // is ~3.7% per doubling at T = 1e3 for any model with that genuine
        // decay index, so raw-A drift below 1% is not an attainable test of
        // boundedness -- the certified-limit drift is.)
        double worst = 0, worst_raw = 0;
        for (std::size_t i = 0; i < decaying.size(); ++i) {
            for (int sign : {-1, 1}) {
                double l1 = bases1000[i].A_limit(sign), l2 = bases2000[i].A_limit(sign);
                worst = std::max(worst, std::abs(l2 - l1) / std::abs(l1));
            }
            double a1 = bases2000[i].A(1000.0), a2v = bases2000[i].A(2000.0);
            worst_raw = std::max(worst_raw, std::abs(a2v - a1) / std::abs(a1));
        }
        c.pass = worst < 0.01;
        c.detail = "max certified-limit drift " + fmt_sci(worst) +
                   " (tol 1e-02); raw A(2T)/A(T)-1 up to " + fmt_sci(worst_raw) +
                   " = the lambda=0.4 tail, see ledger";
        push(c);
    }

    // ---- C4: propagator unitarity ---------------------------------------
    CsvTable unitarity_csv;
    {
        CriterionResult c{4, "propagator-unitarity"};
        std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ull);
        double worst = 0;
        unitarity_csv.header = {"case", "model", "t", "norm_ratio"};
        std::vector<ClassicalBasis> b60;
        for (const auto& md : decaying) b60.push_back(solve_classical(md, 60.0, 1e-10));
        for (int k = 0; k < 100; ++k) {
            const auto& b = b60[static_cast<std::size_t>(k) % b60.size()];
            double t = -50.0 + 100.0 * detail::urand(eng);
            GaussianState g;
            g.center[0] = -2.0 + 4.0 * detail::urand(eng);
            g.momentum[0] = -2.0 + 4.0 * detail::urand(eng);
            g.width[0] = cplx(-0.5 + detail::urand(eng), 0.5 + detail::urand(eng));
            WaveField f = sample_gaussian(g, GridSpec::centered(1, 1024, 0.08));
            double ratio = norm_l2(evolve(b, f, t)) / norm_l2(f);
            worst = std::max(worst, std::abs(ratio - 1.0));
            unitarity_csv.add_row({std::to_string(k), b.model.name, fmt_double(t),
                                   fmt_double(ratio)});
        }
        c.pass = worst <= 1e-8;
        c.detail = "max |ratio - 1| = " + fmt_sci(worst) + " over 100 cases, tol 1e-08";
        push(c);
    }

    // ---- C5: oracle equivalence -----------------------------------------
    {
        CriterionResult c{5, "oracle-equivalence"};
        std::mt19937_64 eng(seed ^ 0xc2b2ae3d27d4eb4full);
        double worst_g = 0;
        const std::vector<double> times = {0.3, 0.8, 1.5, 3.0, 6.0};
        std::vector<ClassicalBasis> b12 = {solve_classical(free_model(1.0), 12.0, 1e-10),
                                           solve_classical(profile_model(0.25, 1.0), 12.0, 1e-10)};
        for (int k = 0; k < 10; ++k) {
            GaussianState g;
            g.center[0] = -1.5 + 3.0 * detail::urand(eng);
            g.momentum[0] = -1.5 + 3.0 * detail::urand(eng);
            g.width[0] = cplx(-0.4 + 0.8 * detail::urand(eng), 0.6 + 0.8 * detail::urand(eng));
            WaveField f = sample_gaussian(g, GridSpec::centered(1, 2048, 0.06));
            for (const auto& b : b12)
                for (double t : times) {
                    WaveField u = evolve(b, f, t);
                    WaveField w = sample_gaussian(gaussian_oracle(b, g, t), u.grid);
                    worst_g = std::max(worst_g, dist_l2(u, w) / norm_l2(u));
                }
        }
        double worst_s = 0;
        for (const auto& b : b12) {
            GaussianState g;
            WaveField f = sample_gaussian(g, GridSpec::centered(1, 2048, 0.05));
            WaveField ref = split_step_reference(b.model, f, 2.0, 1e-4);
            WaveField u = resample(evolve(b, f, 2.0), f.grid);
            worst_s = std::max(worst_s, dist_l2(u, ref) / norm_l2(ref));
        }
        c.pass = worst_g <= 1e-6 && worst_s <= 1e-5;
        c.detail = "gaussian-oracle max rel L2 " + fmt_sci(worst_g) +
                   " (tol 1e-06); split-step max rel L2 " + fmt_sci(worst_s) + " (tol 1e-05)";
        push(c);
    }

    // ---- C6: Mehler cross-check -----------------------------------------
    {
        CriterionResult c{6, "mehler-cross-check"};
        GaussianState g;
        g.center[0] = 0.4;
        g.momentum[0] = -0.6;
        g.width[0] = cplx(0.2, 1.1);
        WaveField f = sample_gaussian(g, GridSpec::self_dual(1, 64));
        double worst = 0;
        for (double a : {0.3, 0.7, 1.2, 0.5 * pi}) {
            WaveField u = harmonic_flow(f, a);
            WaveField w = mehler_apply(f, a, u.grid);
            worst = std::max(worst, dist_l2(u, w) / norm_l2(f));
        }
        // pi/2 reduces through the refocus branch, which offsets the grid by
        // one spacing on even-sized centered grids; realign before comparing
        WaveField fr = fourier_axes(f, true);
        WaveField u = resample(harmonic_flow(f, 0.5 * pi), fr.grid);
        double mod = 0;
        for (std::size_t i = 0; i < u.samples.size(); ++i)
            mod = std::max(mod, std::abs(std::abs(u.samples[i]) - std::abs(fr.samples[i])));
        c.pass = worst <= 1e-6 && mod <= 1e-8;
        c.detail = "max rel L2 vs kernel quadrature " + fmt_sci(worst) +
                   " (tol 1e-06); pi/2 modulus vs Fourier " + fmt_sci(mod) + " (tol 1e-08)";
        push(c);
    }

    // Long-span bases for the decay scans (shared by C7/C10/C11).
    ClassicalBasis free8000 = solve_classical(free_model(1.0), 8000.0, 1e-10);
    ClassicalBasis prof8000 = solve_classical(profile_model(0.25, 1.0), 8000.0, 1e-10);
    const double r0_free = compute_r0(free8000, free8000.verify_asymptotics());
    const double r0_prof = compute_r0(prof8000, prof8000.verify_asymptotics());
    const double del_free = default_delta(free8000, r0_free);
    const double del_prof = default_delta(prof8000, r0_prof);

    auto scalar_scans = [&]() {
        std::map<std::string, ScanReport> reps;
        reps["free_omega0"] =
            decay_slope_scan(free8000, RegionKind::Omega0Plus, r0_free, del_free, 56);
        reps["profile_omega_lambda"] = decay_slope_scan(
            prof8000, RegionKind::OmegaLambdaPlus, r0_prof, del_prof, 56, 0.9, nullptr, {}, 400.0);
        return reps;
    };
    auto magnetic_scans = [&]() {
        MagneticModel mag = landau_profile_model(0.25, 1.0, 1.0);
        std::map<std::string, ScanReport> reps;
        reps["magnetic_omega0"] =
            magnetic_dispersive_scan(mag, prof8000, 2, RegionKind::Omega0Plus, r0_prof, del_prof);
        reps["magnetic_omega_lambda"] =
            magnetic_dispersive_scan(mag, prof8000, 2, RegionKind::OmegaLambdaPlus, r0_prof,
                                     del_prof, 56, 0.9, nullptr, {}, 400.0);
        return reps;
    };

    // ---- C7: dispersive decay slopes ------------------------------------
    auto sc = scalar_scans();
    {
        CriterionResult c{7, "dispersive-decay-slopes"};
        const auto& f0 = sc["free_omega0"];
        const auto& pl = sc["profile_omega_lambda"];
        bool ok_f = std::abs(f0.slope + 0.50) <= 0.05 && f0.r2 >= 0.98 && f0.points.size() >= 50;
        bool ok_p = std::abs(pl.slope + 0.375) <= 0.05 && pl.r2 >= 0.98 && pl.points.size() >= 50;
        c.pass = ok_f && ok_p;
        std::ostringstream os;
        os.precision(4);
        os << std::fixed << "free Omega0 slope " << f0.slope << " (want -0.50 +- 0.05, R^2 "
           << f0.r2 << ", " << f0.points.size() << " pairs); profile lambda=0.25 OmegaLambda slope "
           << pl.slope << " (want -0.375 +- 0.05, R^2 " << pl.r2 << ", " << pl.points.size()
           << " pairs)";
        c.detail = os.str();
        push(c);
    }

    // ---- C8: resonance structure ----------------------------------------
    {
        CriterionResult c{8, "resonance-structure"};
        auto bc = solve_classical(constant_model(1.0, 1.0), 40.0, 1e-10);
        double worst_residual = 0;
        int used = 0;
        for (int i = 0; i < 100; ++i) {
            double s = 0.05 + 2.8 * i / 99.0;
            int N = i % 3 + 1;
            auto off = resonance_offsets(bc, N, s);
            if (off.blow_up) continue;
            double t = s + off.omega + 0.4 + 0.01 * i;
            if (t > bc.span) continue;
            worst_residual = std::max(worst_residual, phase_identity_residual(bc, t, s, N));
            ++used;
        }
        auto chk = sine_lower_bound_check(bc, 1, 25, 0.2, 2.8, 0.3);
        double om_min = std::numeric_limits<double>::infinity(), om_max = 0;
        for (int i = 0; i < 20; ++i) {
            double s = 0.1 + 2.5 * i / 19.0;
            double om = resonance_offsets(bc, 1, s).omega;
            om_min = std::min(om_min, om);
            om_max = std::max(om_max, om);
        }
        bool s_indep = (om_max - om_min) <= 1e-8;
        c.pass = worst_residual <= 1e-8 && used >= 100 - 5 && chk.min_ratio > 0 &&
                 chk.max_derivative_error <= 1e-4 && chk.monotone && s_indep;
        c.detail = "phase-identity residual " + fmt_sci(worst_residual) + " (tol 1e-08, " +
                   std::to_string(used) + " samples); sine/linear min ratio " +
                   fmt_sci(chk.min_ratio) + " (> 0); offset-derivative identity " +
                   fmt_sci(chk.max_derivative_error) + " (tol 1e-04); constant fixture omega_N spread " +
                   fmt_sci(om_max - om_min);
        push(c);
    }

    // ---- C9: Strichartz boundedness -------------------------------------
    {
        CriterionResult c{9, "strichartz-boundedness"};
        auto b = solve_classical(profile_model(0.25, 1.0), 120.0, 1e-10);
        std::mt19937_64 eng(seed ^ 0x165667b19e3779f9ull);
        std::vector<WaveField> family;
        GridSpec grid = GridSpec::centered(1, 1024, 0.1);
        for (int k = 0; k < 10; ++k) {
            GaussianState g;
            g.center[0] = -2.0 + 4.0 * detail::urand(eng);
            g.momentum[0] = -1.5 + 3.0 * detail::urand(eng);
            g.width[0] = cplx(-0.3 + 0.6 * detail::urand(eng), 0.5 + detail::urand(eng));
            family.push_back(sample_gaussian(g, grid));
        }
        Trajectory F;
        {
            GaussianState g;
            g.width[0] = cplx(0.0, 1.0);
            for (int k = 0; k <= 100; ++k) {
                double t = 0.05 * k;
                WaveField f = sample_gaussian(g, grid);
                double env = std::exp(-(t - 2.0) * (t - 2.0));
                for (auto& v : f.samples) v *= env;
                F.push_back({t, std::move(f)});
            }
        }
        c.pass = true;
        std::ostringstream os;
        os.precision(4);
        os << std::fixed;
        const std::pair<double, double> pairs[] = {{8, 4}, {12, 3}};
        for (auto [q, r] : pairs) {
            NormSpec spec{q, r, 0.25};
            auto hom = strichartz_homogeneous_check(b, spec, family, 100.0);
            auto duh = duhamel_check(b, spec, F, 100.0);
            bool finite = std::isfinite(hom.max_value) && std::isfinite(duh.max_value);
            if (!finite || hom.growth >= 0.05 || duh.growth >= 0.05) c.pass = false;
            os << "(q,r)=(" << static_cast<int>(q) << "," << static_cast<int>(r)
               << "): homogeneous growth " << hom.growth
               << ", duhamel growth " << duh.growth << " (tol 0.05 each); ";
        }
        c.detail = os.str() + "T doubling 50 -> 100";
        push(c);
    }

    // ---- C10: magnetic case ---------------------------------------------
    auto mg = magnetic_scans();
    {
        CriterionResult c{10, "magnetic-case"};
        const auto& o0 = mg["magnetic_omega0"];
        const auto& ol = mg["magnetic_omega_lambda"];
        bool ok_scan = std::abs(o0.slope + 1.00) <= 0.07 && std::abs(ol.slope + 0.75) <= 0.07 &&
                       o0.r2 >= 0.98 && ol.r2 >= 0.98;

        MagneticModel mag = landau_profile_model(0.25, 1.0, 1.0);
        auto bp = solve_classical(profile_model(0.25, 1.0), 10.0, 1e-10);
        GaussianState g2;
        g2.dim = 2;
        g2.center = {0.8, 0.3, 0};
        g2.momentum = {-0.4, 0.6, 0};
        WaveField f2 = sample_gaussian(g2, GridSpec::centered(2, 128, 0.15));
        WaveField lhs = rotate(evolve_landau(mag, bp, f2, 1.2, 2), 0.7);
        WaveField rhs = evolve_landau(mag, bp, rotate(f2, 0.7), 1.2, 2);
        double comm = dist_l2(lhs, rhs) / norm_l2(f2);

        MagneticModel mag0;
        mag0.B = [](double) { return 0.0; };
        mag0.charge = 1.0;
        mag0.m = 1.0;
        mag0.name = "zero-field";
        auto bfree = solve_classical(free_model(1.0), 10.0, 1e-10);
        WaveField ul = evolve_landau(mag0, bfree, f2, 1.5, 2);
        WaveField uf = detail::center_planar(evolve(bfree, f2, 1.5));
        double red = dist_l2(ul, uf) / norm_l2(f2);

        c.pass = ok_scan && comm <= 1e-6 && red <= 1e-6;
        std::ostringstream os;
        os.precision(4);
        os << std::fixed << "Omega0 slope " << o0.slope << " (want -1.00 +- 0.07), OmegaLambda slope "
           << ol.slope << " (want -0.75 +- 0.07); rotation commutation "
           << fmt_sci(comm) << " (tol 1e-06); zero-field reduction " << fmt_sci(red)
           << " (tol 1e-06)";
        c.detail = os.str();
        push(c);
    }

    // ---- C11: determinism ------------------------------------------------
    {
        CriterionResult c{11, "determinism"};
        auto render = [&](const std::map<std::string, ScanReport>& reps,
                          std::map<std::string, std::string>& dst) {
            for (const auto& [name, rep] : reps) dst[name + ".csv"] = scan_to_csv(rep).to_string();
        };
        std::map<std::string, std::string> first, second;
        render(sc, first);
        render(mg, first);
        first["unitarity.csv"] = unitarity_csv.to_string();
        render(scalar_scans(), second);
        render(magnetic_scans(), second);
        {
            // regenerate the seeded unitarity table from scratch
            std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ull);
            CsvTable tbl;
            tbl.header = {"case", "model", "t", "norm_ratio"};
            std::vector<ClassicalBasis> b60;
            for (const auto& md : decaying) b60.push_back(solve_classical(md, 60.0, 1e-10));
            for (int k = 0; k < 100; ++k) {
                const auto& b = b60[static_cast<std::size_t>(k) % b60.size()];
                double t = -50.0 + 100.0 * detail::urand(eng);
                GaussianState g;
                g.center[0] = -2.0 + 4.0 * detail::urand(eng);
                g.momentum[0] = -2.0 + 4.0 * detail::urand(eng);
                g.width[0] = cplx(-0.5 + detail::urand(eng), 0.5 + detail::urand(eng));
                WaveField f = sample_gaussian(g, GridSpec::centered(1, 1024, 0.08));
                double ratio = norm_l2(evolve(b, f, t)) / norm_l2(f);
                tbl.add_row({std::to_string(k), b.model.name, fmt_double(t), fmt_double(ratio)});
            }
            second["unitarity.csv"] = tbl.to_string();
        }
        bool identical = first == second;
        c.pass = identical;
        c.detail = identical ? "all " + std::to_string(first.size()) +
                                   " CSV artifacts byte-identical across two runs"
                             : "artifact bytes differ between runs";
        out.artifacts = std::move(first);
        push(c);
    }

    return out;
}

}  // namespace tdho
