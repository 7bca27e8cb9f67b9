#include "ppgate/interaction.hpp"

#include <cmath>

namespace ppgate {

PotentialKind potential_kind_from_string(const std::string& s) {
    if (s == "dipole") return PotentialKind::dipole;
    if (s == "dipole-simplified") return PotentialKind::dipole_simplified;
    if (s == "contact-regularized") return PotentialKind::contact_regularized;
    throw usage_error("unknown interaction kind: " + s);
}

std::string to_string(PotentialKind k) {
    switch (k) {
        case PotentialKind::dipole: return "dipole";
        case PotentialKind::dipole_simplified: return "dipole-simplified";
        case PotentialKind::contact_regularized: return "contact-regularized";
    }
    throw usage_error("invalid PotentialKind");
}

double dipole_potential(const std::array<double, 3>& x, const std::array<double, 3>& orientation) {
    double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    if (r2 == 0.0) throw numerical_error("dipole_potential: singular at |x| = 0");
    double r = std::sqrt(r2);
    double c = (x[0] * orientation[0] + x[1] * orientation[1] + x[2] * orientation[2]) / r;
    return (1.0 - 3.0 * c * c) / (r2 * r);
}

namespace {

// antiderivative shape: A(zeta) = (zeta^3 + 2 zeta rho^2)/(zeta^2 + rho^2)^{3/2}
double A_shape(double zeta, double rho2) {
    double d = zeta * zeta + rho2;
    return zeta * (zeta * zeta + 2.0 * rho2) / (d * std::sqrt(d));
}

}  // namespace

double accumulated_phase_dipole(double z, double rho, const GateGeometry& geo, double g) {
    if (!(rho > 0)) throw usage_error("accumulated_phase_dipole: rho must be positive");
    double rho2 = rho * rho;
    return g * geo.sigma * geo.sigma / rho2 *
           (A_shape(z, rho2) - A_shape(z - 2.0 * geo.l, rho2));
}

double simplified_phase(double rho, const GateGeometry& geo, double g) {
    if (!(rho > 0)) throw usage_error("simplified_phase: rho must be positive");
    return 2.0 * g * geo.sigma * geo.sigma / (rho * rho);
}

double contact_phase_regularized(double z, double rho, const GateGeometry& geo, double u, double eps) {
    if (!(eps > 0)) throw usage_error("contact_phase_regularized: eps must be positive");
    double s2 = geo.sigma * geo.sigma;
    return u * s2 / (2.0 * M_PI * eps * eps) * std::exp(-rho * rho / (2.0 * eps * eps)) *
           (normal_cdf(z / eps) - normal_cdf((z - 2.0 * geo.l) / eps));
}

double numeric_line_phase(const InteractionSpec& spec, const GateGeometry& geo,
                          double z, double xT0, double xT1, double rel_tol) {
    spec.validate();
    geo.validate();
    if (spec.g == 0.0) return 0.0;
    const double T = geo.l / geo.v;
    const double rho2 = xT0 * xT0 + xT1 * xT1;
    const double amp = 2.0 * geo.v * geo.sigma * geo.sigma * spec.g;
    std::function<cdouble(double)> integrand;
    if (spec.kind == PotentialKind::contact_regularized) {
        const double e2 = spec.epsilon * spec.epsilon;
        const double norm = std::pow(2.0 * M_PI * e2, -1.5);
        integrand = [&](double tp) -> cdouble {
            double zeta = z - 2.0 * geo.v * (T - tp);
            return amp * norm * std::exp(-(rho2 + zeta * zeta) / (2.0 * e2));
        };
    } else {
        // longitudinal profile whose zeta-antiderivative is -A(zeta)/rho^2,
        // matching the accumulated-phase sign convention
        integrand = [&](double tp) -> cdouble {
            double zeta = z - 2.0 * geo.v * (T - tp);
            double d = zeta * zeta + rho2;
            return amp * (2.0 * rho2 - zeta * zeta) / (d * d * std::sqrt(d));
        };
    }
    auto res = adaptive_integral_1d(integrand, 0.0, T, rel_tol);
    return res.value.real();
}

double dipole_line_phase_raw(const GateGeometry& geo, double g, double z, double xT0, double xT1,
                             const std::array<double, 3>& orientation, double rel_tol) {
    const double T = geo.l / geo.v;
    const double amp = 2.0 * geo.v * geo.sigma * geo.sigma * g;
    auto res = adaptive_integral_1d(
        [&](double tp) -> cdouble {
            double zeta = z - 2.0 * geo.v * (T - tp);
            return amp * dipole_potential({xT0, xT1, zeta}, orientation);
        },
        0.0, T, rel_tol);
    return res.value.real();
}

GateGeometry to_unit_sigma(const GateGeometry& geo) {
    GateGeometry u = geo;
    u.sigma = 1.0;
    u.lambda = geo.lambda / geo.sigma;
    u.l = geo.l / geo.sigma;
    u.v = 1.0;
    u.D = geo.D / geo.sigma;
    return u;
}

InteractionSpec to_unit_sigma(const InteractionSpec& spec, const GateGeometry& geo) {
    InteractionSpec u = spec;
    u.epsilon = spec.epsilon / geo.sigma;
    return u;
}

double PhaseField::at(double z, double rho) const {
    switch (spec.kind) {
        case PotentialKind::dipole:
            return accumulated_phase_dipole(z, rho, geo, spec.g);
        case PotentialKind::dipole_simplified:
            return simplified_phase(rho, geo, spec.g);
        case PotentialKind::contact_regularized:
            return contact_phase_regularized(z, rho, geo, spec.g, spec.epsilon);
    }
    throw usage_error("PhaseField: invalid kind");
}

}  // namespace ppgate
