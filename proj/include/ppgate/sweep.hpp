#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ppgate/gatemetrics.hpp"

namespace ppgate {

struct SweepRow {
    int index = 0;
    double g = 0.0;
    double R = 0.0;
    double F = 0.0;
    double phi_wrapped = 0.0;
    double phi_unwrapped = 0.0;
    double err = 0.0;
    bool ok = true;
    std::string message;
};

// PPGATE_WORKERS override, else hardware concurrency
int worker_count();

// evaluates fidelity_phase per g (parallel over rows, deterministic ordering)
// and unwraps phi by continuity from g = 0
std::vector<SweepRow> sweep_strength(const PulsePair& pair, const InteractionSpec& tmpl,
                                     const std::vector<double>& g_grid, double tol);

// continuous-in-g phase at strength g, unwrapped along a ladder from 0 that is
// refined until consecutive wrapped steps stay below pi/2
double unwrapped_phase(const PulsePair& pair, const InteractionSpec& tmpl, double g, double tol);

// bisection on |unwrapped phase| - target over the bracket; phase targets are
// magnitudes (the overlap phase itself is negative for positive g)
std::pair<double, GateResult> find_strength_for_phase(const PulsePair& pair,
                                                      const InteractionSpec& tmpl,
                                                      double target_phi,
                                                      std::pair<double, double> bracket,
                                                      double tol);

struct TradeoffPoint {
    double R = 0.0;
    double g_star = 0.0;
    double F = 0.0;
    double phi = 0.0;
    double err = 0.0;
};

// per R, solves |phi| = target with brackets propagated geometrically from the
// previous point's solution
std::vector<TradeoffPoint> tradeoff_curve(const PulsePair& tmpl, const InteractionSpec& spec,
                                          const std::vector<double>& R_grid, double target_phi,
                                          double tol);

}  // namespace ppgate
