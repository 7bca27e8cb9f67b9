#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ppgate/config.hpp"
#include "ppgate/propagator.hpp"
#include "ppgate/sweep.hpp"
#include "ppgate/validate.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace ppgate;

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot write output file: " + path);
    out << content;
}

void write_svg(const RunConfig& cfg, const std::vector<std::pair<double, double>>& pts,
               const std::string& xl, const std::string& yl, const std::string& title) {
    if (cfg.svg.empty()) return;
    std::ofstream out(cfg.svg, std::ios::binary);
    if (!out) throw usage_error("cannot write output file: " + cfg.svg);
    out << svg_line_plot(pts, xl, yl, title);
}

std::string csv_preamble(const RunConfig& cfg) {
    std::ostringstream s;
    for (auto& [k, v] : cfg.resolved()) s << "# " << k << " = " << v << "\n";
    return s.str();
}

json config_json(const RunConfig& cfg) {
    json j;
    for (auto& [k, v] : cfg.resolved()) j[k] = v;
    return j;
}

json gate_result_json(const GateResult& r) {
    json j;
    j["overlap_re"] = r.overlap.real();
    j["overlap_im"] = r.overlap.imag();
    j["F"] = r.F;
    j["phi"] = r.phi;
    j["phi_unwrapped"] = r.phi_unwrapped;
    j["err_estimate"] = r.err_estimate;
    return j;
}

int cmd_phase_field(const RunConfig& cfg) {
    if (cfg.field_nz < 1 || cfg.field_nrho < 1 || !(cfg.field_rho_min > 0) ||
        !(cfg.field_z_max >= cfg.field_z_min) || !(cfg.field_rho_max >= cfg.field_rho_min))
        throw usage_error("phase-field: invalid field grid");
    PhaseField field{cfg.interaction(), cfg.geometry()};
    std::ostringstream s;
    s << csv_preamble(cfg) << "z_over_sigma,rho_over_sigma,phase_rad\n";
    for (int i = 0; i < cfg.field_nz; ++i) {
        double z = cfg.field_nz == 1 ? cfg.field_z_min
                                     : cfg.field_z_min + (cfg.field_z_max - cfg.field_z_min) * i /
                                                             (cfg.field_nz - 1);
        for (int j = 0; j < cfg.field_nrho; ++j) {
            double rho = cfg.field_nrho == 1
                             ? cfg.field_rho_min
                             : cfg.field_rho_min + (cfg.field_rho_max - cfg.field_rho_min) * j /
                                                       (cfg.field_nrho - 1);
            s << format_float(z) << "," << format_float(rho) << ","
              << format_float(field.at(z, rho)) << "\n";
        }
    }
    emit(cfg.out, s.str());
    return 0;
}

int cmd_fidelity(const RunConfig& cfg) {
    GateResult r = fidelity_phase(cfg.pulse_pair(), cfg.interaction(), cfg.tol, cfg.quad_order);
    json j = gate_result_json(r);
    j["config"] = config_json(cfg);
    emit(cfg.out, j.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    auto rows = sweep_strength(cfg.pulse_pair(), cfg.interaction(), cfg.g_grid(), cfg.tol);
    std::ostringstream s;
    s << csv_preamble(cfg) << "index,g,R,F,phi_wrapped,phi_unwrapped,err\n";
    std::vector<std::pair<double, double>> pts;
    for (auto& r : rows) {
        s << r.index << "," << format_float(r.g) << "," << format_float(r.R) << ","
          << format_float(r.F) << "," << format_float(r.phi_wrapped) << ","
          << format_float(r.phi_unwrapped) << "," << format_float(r.err) << "\n";
        pts.emplace_back(r.phi_unwrapped, r.F);
        if (!r.ok) std::cerr << "warning: g = " << format_float(r.g) << ": " << r.message << "\n";
    }
    emit(cfg.out, s.str());
    write_svg(cfg, pts, "unwrapped phase (rad)", "fidelity", "fidelity vs accumulated phase");
    return 0;
}

int cmd_tradeoff(const RunConfig& cfg) {
    auto curve = tradeoff_curve(cfg.pulse_pair(), cfg.interaction(), cfg.R_values(),
                                cfg.target_phase_value(), 1e-6);
    std::ostringstream s;
    s << csv_preamble(cfg) << "R,g_star,F,phi,err\n";
    std::vector<std::pair<double, double>> pts;
    for (auto& p : curve) {
        s << format_float(p.R) << "," << format_float(p.g_star) << "," << format_float(p.F) << ","
          << format_float(p.phi) << "," << format_float(p.err) << "\n";
        pts.emplace_back(p.R, p.F);
    }
    emit(cfg.out, s.str());
    write_svg(cfg, pts, "separation R", "fidelity", "fidelity vs separation at the target phase");
    return 0;
}

int cmd_propagate(const RunConfig& cfg) {
    PulsePair pair = cfg.pulse_pair();
    InteractionSpec spec = cfg.interaction();
    InteractionSpec free_spec = spec;
    free_spec.g = 0.0;
    GridSpec grid = cfg.grid();
    PropagatorOptions opt = cfg.propagator_options();

    RelativeWavefunction xi0 = make_initial_wavefunction(pair, grid);
    RelativeWavefunction xi_int = split_step_evolve(xi0, spec, pair.geometry, opt);
    RelativeWavefunction xi_free = split_step_evolve(xi0, free_spec, pair.geometry, opt);
    GateResult prop = overlap_against_free(xi_int, xi_free);

    PhaseField field{spec, pair.geometry};
    RelativeWavefunction masked = apply_accumulated_phase(xi0, field);
    GateResult an = overlap_against_free(masked, xi0);
    GateResult quad = fidelity_phase(pair, spec, cfg.tol, cfg.quad_order);

    double dev = std::abs(prop.overlap - an.overlap) / std::max(std::abs(an.overlap), 1e-300);
    double dev_quad = std::abs(an.overlap - quad.overlap) / std::max(std::abs(quad.overlap), 1e-300);

    json j;
    j["l_over_r"] = pair.geometry.l_over_r();
    j["propagator"] = gate_result_json(prop);
    j["analytic_on_grid"] = gate_result_json(an);
    j["analytic_quadrature"] = gate_result_json(quad);
    j["deviation"] = dev;
    j["grid_quadrature_deviation"] = dev_quad;
    j["clamped_mass"] = xi_int.clamped_mass;
    j["alias_fraction"] = xi_int.alias_fraction;
    j["norm_defect"] = std::abs(xi_int.norm_sq() - 1.0);
    j["config"] = config_json(cfg);
    emit(cfg.out, j.dump(2) + "\n");
    return 0;
}

int cmd_modes(const RunConfig& cfg) {
    InteractionSpec spec = cfg.interaction();
    ModeMixTensor tensor = mode_mix_tensor(spec, cfg.geometry(), cfg.max_order, cfg.tol);
    SchmidtResult schmidt = schmidt_spectrum(tensor);
    GateResult direct = fidelity_phase(cfg.pulse_pair(), spec, cfg.tol, cfg.quad_order);

    json j;
    j["g"] = tensor.g;
    j["R"] = tensor.R;
    j["max_order"] = tensor.max_order;
    j["sum_sq"] = tensor.sum_sq();
    j["unitarity_deficit"] = 1.0 - tensor.sum_sq();
    j["c0000_re"] = tensor.at(0, 0, 0, 0).real();
    j["c0000_im"] = tensor.at(0, 0, 0, 0).imag();
    j["c0000_overlap_mismatch"] = std::abs(tensor.at(0, 0, 0, 0) - direct.overlap);
    j["entropy"] = schmidt.entropy;
    j["purity"] = schmidt.purity;
    json sv = json::array();
    for (std::size_t i = 0; i < schmidt.singular_values.size() && i < 16; ++i)
        sv.push_back(schmidt.singular_values[i]);
    j["singular_values"] = sv;
    j["config"] = config_json(cfg);
    emit(cfg.out, j.dump(2) + "\n");
    return 0;
}

int cmd_validate(const std::vector<std::string>& args) {
    std::string data_dir = default_data_dir();
    for (auto& a : args) {
        if (a.rfind("--data=", 0) == 0) data_dir = a.substr(7);
        else throw usage_error("validate accepts only --data=DIR, got: " + a);
    }
    auto results = run_acceptance(data_dir, std::cout);
    return all_passed(results) ? 0 : 2;
}

const char* usage_text =
    "usage: ppgate COMMAND [--config=FILE] [--key=value ...]\n"
    "\n"
    "commands:\n"
    "  phase-field   tabulate the accumulated phase phi(z, rho) as CSV\n"
    "  fidelity      single gate evaluation (F, phi) as JSON\n"
    "  sweep         strength sweep at fixed separation -> CSV (+ optional SVG)\n"
    "  tradeoff      solve the target phase across R_list -> CSV (+ optional SVG)\n"
    "  propagate     split-step vs analytic comparison as JSON\n"
    "  modes         transverse mode-mixing tensor summary as JSON\n"
    "  validate      run the acceptance suite [--data=DIR]\n"
    "\n"
    "options are configuration keys (see README); --config=FILE loads key=value\n"
    "pairs first, later --key=value flags override. Set out= / svg= for file\n"
    "output, otherwise results go to standard output. PPGATE_WORKERS overrides\n"
    "the worker-thread count.\n";

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h") {
        std::cout << usage_text;
        return args.empty() ? 1 : 0;
    }
    std::string command = args[0];
    std::vector<std::string> rest(args.begin() + 1, args.end());
    if (command == "validate") return cmd_validate(rest);

    RunConfig cfg;
    for (auto& a : rest) {
        if (a == "--help" || a == "-h") {
            std::cout << usage_text;
            return 0;
        }
        if (a.rfind("--config=", 0) == 0) cfg.load_file(a.substr(9));
        else cfg.apply_override(a);
    }

    if (command == "phase-field") return cmd_phase_field(cfg);
    if (command == "fidelity") return cmd_fidelity(cfg);
    if (command == "sweep") return cmd_sweep(cfg);
    if (command == "tradeoff") return cmd_tradeoff(cfg);
    if (command == "propagate") return cmd_propagate(cfg);
    if (command == "modes") return cmd_modes(cfg);
    throw usage_error("unknown command: " + command);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
