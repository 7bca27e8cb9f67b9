#include "ppgate/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace ppgate {

int worker_count() {
    if (const char* e = std::getenv("PPGATE_WORKERS")) {
        int v = std::atoi(e);
        if (v > 0) return v;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? int(h) : 1;
}

namespace {

void parallel_for(int n, const std::function<void(int)>& fn) {
    int workers = std::min(worker_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (int i = next++; i < n; i = next++) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

double wrap_delta(double d) {
    return d - 2.0 * M_PI * std::floor((d + M_PI) / (2.0 * M_PI));
}

}  // namespace

std::vector<SweepRow> sweep_strength(const PulsePair& pair, const InteractionSpec& tmpl,
                                     const std::vector<double>& g_grid, double tol) {
    if (g_grid.empty()) throw usage_error("sweep_strength: empty g grid");
    if (g_grid.front() != 0.0) throw usage_error("sweep_strength: grid must start at g = 0");
    for (std::size_t i = 1; i < g_grid.size(); ++i)
        if (!(g_grid[i] > g_grid[i - 1])) throw usage_error("sweep_strength: grid must be increasing");

    std::vector<SweepRow> rows(g_grid.size());
    parallel_for((int)g_grid.size(), [&](int i) {
        SweepRow& row = rows[i];
        row.index = i;
        row.g = g_grid[i];
        row.R = pair.geometry.R();
        InteractionSpec spec = tmpl;
        spec.g = g_grid[i];
        try {
            GateResult res = fidelity_phase(pair, spec, tol);
            row.F = res.F;
            row.phi_wrapped = res.phi;
            row.err = res.err_estimate;
        } catch (const quadrature_error& e) {
            row.ok = false;
            row.message = e.what();
            row.F = std::norm(e.best_value);
            row.phi_wrapped = std::arg(e.best_value);
            row.err = e.err_estimate;
        }
    });
    double acc = 0.0, prev = 0.0;
    for (auto& row : rows) {
        acc += wrap_delta(row.phi_wrapped - prev);
        prev = row.phi_wrapped;
        row.phi_unwrapped = acc;
    }
    return rows;
}

double unwrapped_phase(const PulsePair& pair, const InteractionSpec& tmpl, double g, double tol) {
    if (g == 0.0) return 0.0;
    for (int m = 8; m <= 1024; m *= 2) {
        double acc = 0.0, prev = 0.0;
        bool fine = true;
        for (int j = 1; j <= m; ++j) {
            InteractionSpec spec = tmpl;
            spec.g = g * j / m;
            double w = fidelity_phase(pair, spec, tol).phi;
            double d = wrap_delta(w - prev);
            if (std::abs(d) >= M_PI / 2) {
                fine = false;
                break;
            }
            acc += d;
            prev = w;
        }
        if (fine) return acc;
    }
    throw numerical_error("unwrapped_phase: phase ladder did not resolve the winding");
}

std::pair<double, GateResult> find_strength_for_phase(const PulsePair& pair,
                                                      const InteractionSpec& tmpl,
                                                      double target_phi,
                                                      std::pair<double, double> bracket,
                                                      double tol) {
    if (!(target_phi >= 0)) throw usage_error("find_strength_for_phase: target must be >= 0");
    if (!(tol > 0)) throw usage_error("find_strength_for_phase: tol must be positive");
    const double quad_tol = std::min(1e-10, 0.01 * tol);
    if (target_phi == 0.0) {
        InteractionSpec spec = tmpl;
        spec.g = 0.0;
        return {0.0, fidelity_phase(pair, spec, quad_tol)};
    }
    auto h = [&](double g) { return std::abs(unwrapped_phase(pair, tmpl, g, quad_tol)) - target_phi; };
    double lo = bracket.first, hi = bracket.second;
    double hlo = h(lo), hhi = h(hi);
    if (hlo * hhi > 0)
        throw usage_error("find_strength_for_phase: bracket does not straddle the target phase");
    double g_mid = lo, hmid = hlo;
    for (int it = 0; it < 200; ++it) {
        g_mid = 0.5 * (lo + hi);
        hmid = h(g_mid);
        if (std::abs(hmid) <= tol || (hi - lo) < 1e-13 * hi) break;
        if ((hmid > 0) == (hhi > 0)) {
            hi = g_mid;
            hhi = hmid;
        } else {
            lo = g_mid;
            hlo = hmid;
        }
    }
    if (std::abs(hmid) > tol)
        throw numerical_error("find_strength_for_phase: bisection did not reach the phase tolerance");
    InteractionSpec spec = tmpl;
    spec.g = g_mid;
    GateResult res = fidelity_phase(pair, spec, quad_tol);
    res.phi_unwrapped = unwrapped_phase(pair, tmpl, g_mid, quad_tol);
    return {g_mid, res};
}

std::vector<TradeoffPoint> tradeoff_curve(const PulsePair& tmpl, const InteractionSpec& spec,
                                          const std::vector<double>& R_grid, double target_phi,
                                          double tol) {
    if (R_grid.empty()) throw usage_error("tradeoff_curve: empty R grid");
    std::vector<TradeoffPoint> out;
    double g_prev = 0.0, R_prev = 0.0;
    for (double R : R_grid) {
        PulsePair pair = tmpl;
        pair.geometry.D = R * pair.geometry.sigma;
        double l_hat = pair.geometry.l_hat();
        double g_c = g_prev > 0 ? g_prev * std::pow(R / R_prev, 3.0)
                                : target_phi * std::max(R * R * R, 1.0) / (4.0 * l_hat);
        double lo = 0.5 * g_c, hi = 1.6 * g_c;
        const double quad_tol = std::min(1e-10, 0.01 * tol);
        auto h = [&](double g) {
            return std::abs(unwrapped_phase(pair, spec, g, quad_tol)) - target_phi;
        };
        int expand = 0;
        while (h(lo) > 0 && expand++ < 40) lo *= 0.5;
        while (h(hi) < 0 && expand++ < 40) hi *= 2.0;
        if (expand >= 40) throw numerical_error("tradeoff_curve: bracket expansion cap exceeded");
        auto [g_star, res] = find_strength_for_phase(pair, spec, target_phi, {lo, hi}, tol);
        out.push_back({R, g_star, res.F, res.phi, res.err_estimate});
        g_prev = g_star;
        R_prev = R;
    }
    return out;
}

}  // namespace ppgate
