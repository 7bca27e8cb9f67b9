#include "ppgate/validate.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "ppgate/config.hpp"
#include "ppgate/propagator.hpp"
#include "ppgate/sweep.hpp"

namespace ppgate {

namespace {

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

PulsePair reference_pair(double R, double l_over_r = 0.2) {
    GateGeometry geo = GateGeometry::reference(R);
    geo.lambda = 0.5 * l_over_r;  // l = 4 pi sigma, so l/r = 2 lambda / sigma
    PulsePair pair;
    pair.geometry = geo;
    return pair;
}

struct DevResult {
    cdouble o_prop, o_an;
    double dev = 0.0;
    double clamped = 0.0;
    double norm_defect = 0.0;
};

DevResult interplay_deviation(double g, double R, double l_over_r, const GridSpec& grid, int steps) {
    PulsePair pair = reference_pair(R, l_over_r);
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole;
    spec.g = g;
    InteractionSpec free_spec = spec;
    free_spec.g = 0.0;

    RelativeWavefunction xi0 = make_initial_wavefunction(pair, grid);
    PropagatorOptions on;
    on.steps = steps;
    PropagatorOptions off = on;
    off.include_diffraction = false;

    RelativeWavefunction xi_int = split_step_evolve(xi0, spec, pair.geometry, on);
    RelativeWavefunction xi_free = split_step_evolve(xi0, free_spec, pair.geometry, on);
    RelativeWavefunction xi_a = split_step_evolve(xi0, spec, pair.geometry, off);
    RelativeWavefunction xi_a0 = split_step_evolve(xi0, free_spec, pair.geometry, off);

    DevResult r;
    r.o_prop = overlap_against_free(xi_int, xi_free).overlap;
    r.o_an = overlap_against_free(xi_a, xi_a0).overlap;
    r.dev = std::abs(r.o_prop - r.o_an) / std::abs(r.o_an);
    r.clamped = xi_int.clamped_mass;
    r.norm_defect = std::abs(xi_int.norm_sq() - 1.0);
    return r;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open " + path);
    CsvTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (t.header.empty()) {
            t.header = cells;
            continue;
        }
        std::vector<double> row;
        for (auto& c : cells) row.push_back(std::stod(c));
        t.rows.push_back(row);
    }
    return t;
}

bool close9(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

using Check = std::function<CriterionResult()>;

CriterionResult timed(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
    CriterionResult res;
    res.id = id;
    res.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto [ok, details] = body();
        res.pass = ok;
        res.details = details;
    } catch (const std::exception& e) {
        res.pass = false;
        res.details = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace

std::string default_data_dir() { return std::string(PPGATE_SOURCE_DIR) + "/tests/data"; }

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

std::vector<CriterionResult> run_acceptance(const std::string& data_dir, std::ostream& log) {
    std::vector<CriterionResult> out;
    double g_star_26 = 1345.52;  // refined by criterion 3 when it runs

    auto push = [&](CriterionResult r) {
        log << (r.pass ? "PASS" : "FAIL") << " - criterion " << r.id << ": " << r.name << " ("
            << r.details << ") [" << fmt(r.seconds) << " s]\n";
        out.push_back(std::move(r));
    };

    // 1: closed-form accumulated phase vs its defining time integral
    push(timed(1, "phase formula matches the line-integral oracle", [&] {
        PulsePair pair = reference_pair(0.0);
        const GateGeometry& geo = pair.geometry;
        InteractionSpec spec;
        spec.kind = PotentialKind::dipole;
        spec.g = 0.7;
        std::mt19937_64 rng(20260823);
        std::uniform_real_distribution<double> uz(-2.0 * geo.l, 4.0 * geo.l);
        std::uniform_real_distribution<double> ur(0.1, 10.0);
        std::uniform_real_distribution<double> uth(0.0, 2.0 * M_PI);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            double z = uz(rng), rho = ur(rng), th = uth(rng);
            double a = accumulated_phase_dipole(z, rho, geo, spec.g);
            double b = numeric_line_phase(spec, geo, z, rho * std::cos(th), rho * std::sin(th), 1e-11);
            worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-12}));
        }
        return std::make_pair(worst <= 1e-8, "max rel diff " + fmt(worst) + " over 100 points");
    }));

    // 2: g = 0 identity on both paths
    push(timed(2, "zero interaction gives F = 1, phi = 0 on both paths", [&] {
        PulsePair pair = reference_pair(0.0);
        InteractionSpec spec;
        spec.g = 0.0;
        GateResult an = fidelity_phase(pair, spec, 1e-12);
        GridSpec grid{64, 64, 48, 12.0, 12.0, 12.0};
        PropagatorOptions opt;
        opt.steps = 32;
        RelativeWavefunction xi0 = make_initial_wavefunction(pair, grid);
        RelativeWavefunction a = split_step_evolve(xi0, spec, pair.geometry, opt);
        RelativeWavefunction b = split_step_evolve(xi0, spec, pair.geometry, opt);
        GateResult pr = overlap_against_free(a, b);
        double worst = std::max({std::abs(an.F - 1.0), std::abs(an.phi), std::abs(pr.F - 1.0), std::abs(pr.phi)});
        return std::make_pair(worst <= 1e-10, "max defect " + fmt(worst));
    }));

    // 3: phi = pi at R = 26
    push(timed(3, "R = 26 solves phi = pi with F = 0.90 +- 0.02", [&] {
        PulsePair pair = reference_pair(26.0);
        InteractionSpec spec;
        spec.kind = PotentialKind::dipole;
        auto [g_star, res] = find_strength_for_phase(pair, spec, M_PI, {900.0, 1800.0}, 1e-6);
        g_star_26 = g_star;
        bool ok = std::abs(res.F - 0.90) <= 0.02;
        return std::make_pair(ok, "g* = " + fmt(g_star) + ", F = " + fmt(res.F) + ", phi = " + fmt(res.phi));
    }));

    // 4: phi = pi at R = 79
    push(timed(4, "R = 79 solves phi = pi with F = 0.99 +- 0.005", [&] {
        PulsePair pair = reference_pair(79.0);
        InteractionSpec spec;
        spec.kind = PotentialKind::dipole;
        auto [g_star, res] = find_strength_for_phase(pair, spec, M_PI, {20000.0, 45000.0}, 1e-6);
        bool ok = std::abs(res.F - 0.99) <= 0.005;
        return std::make_pair(ok, "g* = " + fmt(g_star) + ", F = " + fmt(res.F) + ", phi = " + fmt(res.phi));
    }));

    // 5: regularized contact approaches the free gate as eps -> 0
    push(timed(5, "contact phase and infidelity vanish with shrinking eps", [&] {
        PulsePair pair = reference_pair(0.0);
        std::vector<double> phis, infs;
        for (double eps : {0.2, 0.1, 0.05}) {
            InteractionSpec spec;
            spec.kind = PotentialKind::contact_regularized;
            spec.g = 1.0;
            spec.epsilon = eps;
            GateResult r = fidelity_phase(pair, spec, 1e-10);
            phis.push_back(std::abs(r.phi));
            infs.push_back(1.0 - r.F);
        }
        bool ok = phis[0] > phis[1] && phis[1] > phis[2] && infs[0] > infs[1] && infs[1] > infs[2] &&
                  phis[2] < phis[0] / 3.0;
        return std::make_pair(ok, "|phi| = {" + fmt(phis[0]) + ", " + fmt(phis[1]) + ", " + fmt(phis[2]) +
                                      "}, 1-F = {" + fmt(infs[0]) + ", " + fmt(infs[1]) + ", " + fmt(infs[2]) + "}");
    }));

    // 6: head-on interplay correction, few percent and increasing in l/r
    push(timed(6, "head-on propagator-vs-analytic deviation, l/r scaling", [&] {
        GridSpec grid{64, 64, 48, 12.0, 12.0, 12.0};
        std::vector<double> devs;
        for (double lr : {0.05, 0.1, 0.2})
            devs.push_back(interplay_deviation(0.5, 0.0, lr, grid, 64).dev);
        bool ok = devs[2] >= 1e-3 && devs[2] <= 0.1 && devs[0] < devs[1] && devs[1] < devs[2];
        return std::make_pair(ok, "dev(l/r = 0.05, 0.1, 0.2) = {" + fmt(devs[0]) + ", " + fmt(devs[1]) +
                                      ", " + fmt(devs[2]) + "}");
    }));

    // 7: separated interplay correction at R = 26
    push(timed(7, "separated R = 26 deviation at or below 5e-3", [&] {
        GridSpec grid{64, 64, 48, 12.0, 12.0, 12.0};
        DevResult r = interplay_deviation(g_star_26, 26.0, 0.2, grid, 64);
        bool ok = r.dev <= 5e-3;
        return std::make_pair(ok, "dev = " + fmt(r.dev) + ", clamped mass = " + fmt(r.clamped));
    }));

    // 8: transverse mode mixing at |C0000| = 0.9
    push(timed(8, "mode-mixing tensor: unitarity, parity, entanglement, consistency", [&] {
        PulsePair pair = reference_pair(0.0);
        InteractionSpec spec;
        spec.kind = PotentialKind::dipole_simplified;
        auto mag = [&](double g) {
            InteractionSpec s = spec;
            s.g = g;
            return std::abs(fidelity_phase(pair, s, 1e-11).overlap) - 0.9;
        };
        double lo = 0.01, hi = 0.3;
        for (int i = 0; i < 80; ++i) {
            double mid = 0.5 * (lo + hi);
            (mag(mid) > 0 ? lo : hi) = mid;
        }
        double g = 0.5 * (lo + hi);
        spec.g = g;
        GateResult direct = fidelity_phase(pair, spec, 1e-11);
        ModeMixTensor tensor = mode_mix_tensor(spec, pair.geometry, 12, 1e-10);
        double deficit = 1.0 - tensor.sum_sq();
        double parity = 0.0;
        const int N = tensor.N();
        for (int m = 0; m < N; ++m)
            for (int n = 0; n < N; ++n)
                for (int l = 0; l < N; ++l)
                    for (int k = 0; k < N; ++k)
                        if ((m + l) % 2 == 1 || (n + k) % 2 == 1)
                            parity = std::max(parity, std::abs(tensor.at(m, n, l, k)));
        SchmidtResult schmidt = schmidt_spectrum(tensor);
        double consistency = std::abs(tensor.at(0, 0, 0, 0) - direct.overlap);
        bool ok = deficit <= 1e-3 && parity <= 1e-10 && schmidt.entropy > 0 && consistency <= 1e-6;
        return std::make_pair(ok, "g = " + fmt(g) + ", unitarity deficit = " + fmt(deficit) +
                                      " (<= 1e-3 required), parity = " + fmt(parity) + ", entropy = " +
                                      fmt(schmidt.entropy) + ", |C0000 - overlap| = " + fmt(consistency));
    }));

    // 9: numerics hygiene
    push(timed(9, "quadrature exactness, unitarity, free diffraction, Strang order", [&] {
        // Gauss-Hermite exactness for monomials of degree <= 2n-1
        double worst_gh = 0.0;
        for (int n : {2, 8, 24, 48, 60}) {
            QuadratureRule rule = gauss_hermite_rule(n);
            for (int d = 0; d <= 2 * n - 1; ++d) {
                double m = 0.0, scale = 0.0;
                for (int i = 0; i < n; ++i) {
                    double term = rule.weights[i] * std::pow(rule.nodes[i], d);
                    m += term;
                    scale += std::abs(term);
                }
                double exact = 0.0;
                if (d % 2 == 0) {
                    exact = std::sqrt(M_PI);
                    for (int j = 1; j <= d / 2; ++j) exact *= (2.0 * j - 1.0) / 2.0;
                }
                // relative to the term magnitude: the conditioning-honest measure
                worst_gh = std::max(worst_gh, std::abs(m - exact) / std::max(scale, 1.0));
            }
        }
        // norm conservation over a full interacting run
        GridSpec grid{64, 64, 48, 12.0, 12.0, 12.0};
        DevResult head = interplay_deviation(0.5, 0.0, 0.2, grid, 64);
        // free diffraction against the closed-form spreading Gaussian
        PulsePair pair = reference_pair(0.0);
        GridSpec wide{128, 128, 32, 16.0, 16.0, 12.0};
        RelativeWavefunction xi0 = make_initial_wavefunction(pair, wide);
        InteractionSpec free_spec;
        free_spec.g = 0.0;
        PropagatorOptions opt;
        opt.steps = 32;
        RelativeWavefunction evolved = split_step_evolve(xi0, free_spec, pair.geometry, opt);
        const double beta = 0.5 * pair.geometry.l_over_r();
        const cdouble q = 1.0 / cdouble(1.0, -beta);
        double l2 = 0.0;
        double norm0 = std::pow(2.0 * M_PI, -0.75);
        for (int iz = 0; iz < wide.nz; ++iz)
            for (int iy = 0; iy < wide.ny; ++iy)
                for (int ix = 0; ix < wide.nx; ++ix) {
                    double x = evolved.x_at(ix), y = evolved.y_at(iy), z = evolved.z_at(iz) + pair.geometry.l;
                    cdouble ref = norm0 * q * std::exp(-(x * x + y * y) * q / 4.0) * std::exp(-z * z / 4.0);
                    l2 += std::norm(evolved.values[(std::size_t(iz) * wide.ny + iy) * wide.nx + ix] - ref);
                }
        l2 = std::sqrt(l2 * evolved.cell_volume());
        // Strang second order on a smooth separated configuration
        auto strang_overlap = [&](int steps) {
            // separated so the grid misses the axis and nothing clamps; the
            // error is then the clean second-order splitting residue
            PulsePair p = reference_pair(8.0);
            InteractionSpec s;
            s.kind = PotentialKind::dipole;
            s.g = 5.0;
            InteractionSpec s0 = s;
            s0.g = 0.0;
            GridSpec gsp{48, 48, 32, 12.0, 12.0, 12.0};
            PropagatorOptions o;
            o.steps = steps;
            RelativeWavefunction w0 = make_initial_wavefunction(p, gsp);
            return overlap_against_free(split_step_evolve(w0, s, p.geometry, o),
                                        split_step_evolve(w0, s0, p.geometry, o))
                .overlap;
        };
        cdouble o_ref = strang_overlap(512);
        double d32 = std::abs(strang_overlap(32) - o_ref);
        double d64 = std::abs(strang_overlap(64) - o_ref);
        double ratio = d32 / d64;
        bool ok = worst_gh <= 1e-12 && head.norm_defect <= 1e-8 && l2 <= 1e-6 && ratio >= 3.0 && ratio <= 5.0;
        return std::make_pair(ok, "GH worst = " + fmt(worst_gh) + ", norm defect = " + fmt(head.norm_defect) +
                                      ", free-diffraction L2 = " + fmt(l2) + ", Strang ratio = " + fmt(ratio));
    }));

    // 10: frozen figure-level regressions
    push(timed(10, "sweep and tradeoff curves reproduce the frozen regressions", [&] {
        RunConfig cfg;
        CsvTable sweep_ref = read_csv(data_dir + "/sweep_headon.csv");
        CsvTable trade_ref = read_csv(data_dir + "/tradeoff_reference.csv");
        PulsePair pair = cfg.pulse_pair();
        InteractionSpec spec = cfg.interaction();
        auto rows = sweep_strength(pair, spec, cfg.g_grid(), cfg.tol);
        if (rows.size() != sweep_ref.rows.size())
            return std::make_pair(false, std::string("sweep row count mismatch"));
        double worst = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& ref = sweep_ref.rows[i];
            if (!close9(rows[i].g, ref[1]) || !close9(rows[i].F, ref[3]) || !close9(rows[i].phi_unwrapped, ref[5]))
                worst = std::max({worst, std::abs(rows[i].g - ref[1]), std::abs(rows[i].F - ref[3]),
                                  std::abs(rows[i].phi_unwrapped - ref[5])});
        }
        auto curve = tradeoff_curve(pair, spec, cfg.R_values(), cfg.target_phase_value(), 1e-6);
        if (curve.size() != trade_ref.rows.size())
            return std::make_pair(false, std::string("tradeoff row count mismatch"));
        for (std::size_t i = 0; i < curve.size(); ++i) {
            const auto& ref = trade_ref.rows[i];
            if (!close9(curve[i].R, ref[0]) || !close9(curve[i].g_star, ref[1]) || !close9(curve[i].F, ref[2]))
                worst = std::max({worst, std::abs(curve[i].R - ref[0]), std::abs(curve[i].g_star - ref[1]),
                                  std::abs(curve[i].F - ref[2])});
        }
        return std::make_pair(worst == 0.0, "max regression mismatch " + fmt(worst));
    }));

    return out;
}

}  // namespace ppgate
