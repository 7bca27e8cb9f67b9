#include "ppgate/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ppgate {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw usage_error("invalid numeric value for " + key + ": " + v);
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        int d = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw usage_error("invalid integer value for " + key + ": " + v);
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw usage_error("invalid boolean value for " + key + ": " + v);
}

}  // namespace

double parse_pi_expression(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) throw usage_error("empty phase expression");
    std::size_t p = s.find("pi");
    if (p == std::string::npos) return to_double("phase", s);
    std::string pre = trim(s.substr(0, p));
    std::string post = trim(s.substr(p + 2));
    double coef = 1.0;
    if (pre == "-") coef = -1.0;
    else if (!pre.empty()) {
        if (!pre.empty() && pre.back() == '*') pre.pop_back();
        coef = to_double("phase", trim(pre));
    }
    double div = 1.0;
    if (!post.empty()) {
        if (post.front() != '/') throw usage_error("invalid phase expression: " + raw);
        div = to_double("phase", trim(post.substr(1)));
    }
    return coef * M_PI / div;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "sigma_over_lambda") sigma_over_lambda = to_double(key, value);
    else if (key == "l_over_sigma") l_over_sigma = parse_pi_expression(value);
    else if (key == "R") R = to_double(key, value);
    else if (key == "kind") kind = (void(potential_kind_from_string(value)), value);
    else if (key == "g") g = to_double(key, value);
    else if (key == "target_phase") target_phase = (void(parse_pi_expression(value)), value);
    else if (key == "epsilon_over_sigma") epsilon_over_sigma = to_double(key, value);
    else if (key == "quad_order") quad_order = to_int(key, value);
    else if (key == "tol") tol = to_double(key, value);
    else if (key == "grid_nx") grid_nx = to_int(key, value);
    else if (key == "grid_ny") grid_ny = to_int(key, value);
    else if (key == "grid_nz") grid_nz = to_int(key, value);
    else if (key == "grid_lx") grid_lx = to_double(key, value);
    else if (key == "grid_ly") grid_ly = to_double(key, value);
    else if (key == "grid_lz") grid_lz = to_double(key, value);
    else if (key == "steps") steps = to_int(key, value);
    else if (key == "include_diffraction") include_diffraction = to_bool(key, value);
    else if (key == "diffraction_coefficient") diffraction_coefficient = to_double(key, value);
    else if (key == "max_order") max_order = to_int(key, value);
    else if (key == "g_min") g_min = to_double(key, value);
    else if (key == "g_max") g_max = to_double(key, value);
    else if (key == "g_points") g_points = to_int(key, value);
    else if (key == "R_list") R_list = value;
    else if (key == "field_z_min") field_z_min = to_double(key, value);
    else if (key == "field_z_max") field_z_max = to_double(key, value);
    else if (key == "field_nz") field_nz = to_int(key, value);
    else if (key == "field_rho_min") field_rho_min = to_double(key, value);
    else if (key == "field_rho_max") field_rho_max = to_double(key, value);
    else if (key == "field_nrho") field_nrho = to_int(key, value);
    else if (key == "out") out = value;
    else if (key == "svg") svg = value;
    else throw usage_error("unknown configuration key: " + key);
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[' && s.back() == ']') continue;  // sections organize, keys are flat
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw usage_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        set(trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
}

void RunConfig::apply_override(const std::string& arg) {
    if (arg.rfind("--", 0) != 0) throw usage_error("expected --key=value, got: " + arg);
    std::size_t eq = arg.find('=');
    if (eq == std::string::npos) throw usage_error("expected --key=value, got: " + arg);
    set(arg.substr(2, eq - 2), arg.substr(eq + 1));
}

GateGeometry RunConfig::geometry() const {
    GateGeometry geo;
    geo.sigma = 1.0;
    geo.lambda = 1.0 / sigma_over_lambda;
    geo.l = l_over_sigma;
    geo.v = 1.0;
    geo.D = R;
    geo.validate();
    return geo;
}

InteractionSpec RunConfig::interaction() const {
    InteractionSpec spec;
    spec.kind = potential_kind_from_string(kind);
    spec.g = g;
    spec.epsilon = epsilon_over_sigma;
    spec.validate();
    return spec;
}

PulsePair RunConfig::pulse_pair() const { return PulsePair{geometry(), {0, 0, 0}, {0, 0, 0}}; }

GridSpec RunConfig::grid() const {
    GridSpec gs;
    gs.nx = grid_nx;
    gs.ny = grid_ny;
    gs.nz = grid_nz;
    gs.Lx = grid_lx;
    gs.Ly = grid_ly;
    gs.Lz = grid_lz > 0 ? grid_lz : 2.0 * l_over_sigma + 8.0;
    gs.validate();
    return gs;
}

PropagatorOptions RunConfig::propagator_options() const {
    PropagatorOptions opt;
    opt.steps = steps;
    opt.include_diffraction = include_diffraction;
    opt.diffraction_coefficient = diffraction_coefficient;
    return opt;
}

double RunConfig::target_phase_value() const { return parse_pi_expression(target_phase); }

std::vector<double> RunConfig::g_grid() const {
    if (g_points < 1 || !(g_min > 0) || !(g_max > g_min))
        throw usage_error("sweep grid requires 0 < g_min < g_max and g_points >= 1");
    std::vector<double> grid{0.0};
    for (int i = 0; i < g_points; ++i)
        grid.push_back(g_min * std::pow(g_max / g_min, g_points == 1 ? 0.0 : double(i) / (g_points - 1)));
    return grid;
}

std::vector<double> RunConfig::R_values() const {
    std::vector<double> out_v;
    std::stringstream ss(R_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string t = trim(item);
        if (!t.empty()) out_v.push_back(to_double("R_list", t));
    }
    if (out_v.empty()) throw usage_error("R_list is empty");
    return out_v;
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("version", artifact_version());
    kv.emplace_back("sigma_over_lambda", format_float(sigma_over_lambda));
    kv.emplace_back("l_over_sigma", format_float(l_over_sigma));
    kv.emplace_back("R", format_float(R));
    kv.emplace_back("kind", kind);
    kv.emplace_back("g", format_float(g));
    kv.emplace_back("target_phase", target_phase);
    kv.emplace_back("epsilon_over_sigma", format_float(epsilon_over_sigma));
    kv.emplace_back("quad_order", std::to_string(quad_order));
    kv.emplace_back("tol", format_float(tol));
    kv.emplace_back("grid_nx", std::to_string(grid_nx));
    kv.emplace_back("grid_ny", std::to_string(grid_ny));
    kv.emplace_back("grid_nz", std::to_string(grid_nz));
    kv.emplace_back("grid_lx", format_float(grid_lx));
    kv.emplace_back("grid_ly", format_float(grid_ly));
    kv.emplace_back("grid_lz", format_float(grid_lz));
    kv.emplace_back("steps", std::to_string(steps));
    kv.emplace_back("include_diffraction", include_diffraction ? "true" : "false");
    kv.emplace_back("diffraction_coefficient", format_float(diffraction_coefficient));
    kv.emplace_back("max_order", std::to_string(max_order));
    kv.emplace_back("g_min", format_float(g_min));
    kv.emplace_back("g_max", format_float(g_max));
    kv.emplace_back("g_points", std::to_string(g_points));
    kv.emplace_back("R_list", R_list);
    kv.emplace_back("field_z_min", format_float(field_z_min));
    kv.emplace_back("field_z_max", format_float(field_z_max));
    kv.emplace_back("field_nz", std::to_string(field_nz));
    kv.emplace_back("field_rho_min", format_float(field_rho_min));
    kv.emplace_back("field_rho_max", format_float(field_rho_max));
    kv.emplace_back("field_nrho", std::to_string(field_nrho));
    return kv;
}

std::string format_float(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string artifact_version() { return std::string("ppgate ") + PPGATE_VERSION; }

std::string svg_line_plot(const std::vector<std::pair<double, double>>& points,
                          const std::string& x_label, const std::string& y_label,
                          const std::string& title) {
    const int W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto& [x, y] : points) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (points.empty()) xmin = ymin = 0, xmax = ymax = 1;
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    s << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double x = xmin + (xmax - xmin) * i / 4.0;
        double y = ymin + (ymax - ymin) * i / 4.0;
        s << "<text x=\"" << px(x) << "\" y=\"" << H - mb + 18
          << "\" font-size=\"11\" text-anchor=\"middle\">" << format_float(std::round(x * 1e6) / 1e6)
          << "</text>\n";
        s << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
          << "\" font-size=\"11\" text-anchor=\"end\">" << format_float(std::round(y * 1e6) / 1e6)
          << "</text>\n";
    }
    s << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
    s << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << (mt + H - mb) / 2
      << ")\">" << y_label << "</text>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">" << title
      << "</text>\n";
    if (!points.empty()) {
        s << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
        for (auto& [x, y] : points) s << px(x) << "," << py(y) << " ";
        s << "\"/>\n";
        for (auto& [x, y] : points)
            s << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\"#1f6fb2\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace ppgate
