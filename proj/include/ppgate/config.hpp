#pragma once

#include <map>
#include <string>
#include <vector>

#include "ppgate/propagator.hpp"
#include "ppgate/sweep.hpp"

namespace ppgate {

// flat key=value configuration with [section] headers; command-line overrides
// use --key=value with the bare key
struct RunConfig {
    // [geometry]
    double sigma_over_lambda = 10.0;
    double l_over_sigma = 4.0 * M_PI;
    double R = 0.0;
    // [interaction]
    std::string kind = "dipole";
    double g = 0.0;
    std::string target_phase = "pi";
    double epsilon_over_sigma = 0.1;
    // [numerics]
    int quad_order = 48;
    double tol = 1e-10;
    int grid_nx = 128, grid_ny = 128, grid_nz = 256;
    double grid_lx = 10.0, grid_ly = 10.0, grid_lz = 0.0;  // 0 -> 2 l + 8 sigma
    int steps = 256;
    bool include_diffraction = true;
    double diffraction_coefficient = 1.0;
    int max_order = 12;
    // [sweep]
    double g_min = 0.02, g_max = 2.0;
    int g_points = 25;
    std::string R_list = "26,40,56,79";
    // [field]
    double field_z_min = -6.0, field_z_max = 6.0;
    int field_nz = 25;
    double field_rho_min = 0.25, field_rho_max = 6.0;
    int field_nrho = 24;
    // [output]
    std::string out;
    std::string svg;

    void set(const std::string& key, const std::string& value);
    void load_file(const std::string& path);
    void apply_override(const std::string& arg);  // "--key=value"

    GateGeometry geometry() const;
    InteractionSpec interaction() const;
    PulsePair pulse_pair() const;
    GridSpec grid() const;
    PropagatorOptions propagator_options() const;
    double target_phase_value() const;
    std::vector<double> g_grid() const;       // {0} + geometric g_min..g_max
    std::vector<double> R_values() const;

    // ordered key -> value map of every resolved setting
    std::vector<std::pair<std::string, std::string>> resolved() const;
};

// accepts plain numbers and pi multiples: "pi", "-pi/2", "3pi/4", "0.5pi"
double parse_pi_expression(const std::string& s);

// fixed 17-significant-digit representation used for all emitted floats
std::string format_float(double v);

std::string svg_line_plot(const std::vector<std::pair<double, double>>& points,
                          const std::string& x_label, const std::string& y_label,
                          const std::string& title);

std::string artifact_version();

}  // namespace ppgate
