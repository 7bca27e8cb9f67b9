#pragma once

#include <array>
#include <cmath>
#include <string>

#include "ppgate/mathcore.hpp"

namespace ppgate {

// All lengths are absolute; sigma is the nondimensionalization unit, so the
// dimensionless combinations are l_hat = l/sigma, R = D/sigma, l/r = l/(k sigma^2).
struct GateGeometry {
    double sigma = 1.0;   // transverse pulse width
    double lambda = 0.1;  // carrier wavelength
    double l = 4.0 * M_PI;  // medium half-passage length
    double v = 1.0;       // group velocity
    double D = 0.0;       // transverse separation of the pulse centers

    double k() const { return 2.0 * M_PI / lambda; }
    double rayleigh() const { return k() * sigma * sigma; }
    double l_over_r() const { return l / rayleigh(); }
    double R() const { return D / sigma; }
    double l_hat() const { return l / sigma; }

    // sigma = 10 lambda, l = 4 pi sigma, unit sigma and v
    static GateGeometry reference(double R = 0.0) {
        GateGeometry g;
        g.sigma = 1.0;
        g.lambda = 0.1;
        g.l = 4.0 * M_PI;
        g.v = 1.0;
        g.D = R;
        return g;
    }
    void validate() const {
        if (!(sigma > 0 && lambda > 0 && l > 0 && v > 0 && D >= 0))
            throw usage_error("GateGeometry: requires sigma, lambda, l, v > 0 and D >= 0");
    }
};

enum class PotentialKind { dipole, dipole_simplified, contact_regularized };

PotentialKind potential_kind_from_string(const std::string& s);
std::string to_string(PotentialKind k);

struct InteractionSpec {
    PotentialKind kind = PotentialKind::dipole;
    double g = 0.0;        // dimensionless strength C/(2 v sigma^2), or V0/(2 v sigma^2) for contact
    double epsilon = 0.0;  // contact regularization width (length)
    std::array<double, 3> orientation = {1.0, 0.0, 0.0};

    // g >= 0 is the canonical branch; negative g is admitted for the exact
    // strength-reversal symmetry (overlap conjugation)
    void validate() const {
        if (!std::isfinite(g)) throw usage_error("InteractionSpec: g must be finite");
        if (kind == PotentialKind::contact_regularized && !(epsilon > 0))
            throw usage_error("InteractionSpec: contact kind requires epsilon > 0");
    }
};

// (1 - 3 cos^2 theta)/|x|^3 with cos theta = x.orientation/|x|; caller multiplies by C
double dipole_potential(const std::array<double, 3>& x, const std::array<double, 3>& orientation);

// phase accumulated over the full counter-propagating passage, evaluated at
// longitudinal relative coordinate z and transverse distance rho
double accumulated_phase_dipole(double z, double rho, const GateGeometry& geo, double g);

// z-independent far-field magnitude 2 g sigma^2 / rho^2 (applied as e^{-i phase})
double simplified_phase(double rho, const GateGeometry& geo, double g);

// Gaussian-regularized contact interaction: the longitudinal step difference
// becomes a difference of normal CDFs, the transverse delta a 2D Gaussian
double contact_phase_regularized(double z, double rho, const GateGeometry& geo, double u, double eps);

// brute-force oracle: adaptive time integral of the moving potential, using the
// azimuthally symmetric longitudinal profile whose antiderivative reproduces
// accumulated_phase_dipole
double numeric_line_phase(const InteractionSpec& spec, const GateGeometry& geo,
                          double z, double xT0, double xT1, double rel_tol);

// same time integral with the raw anisotropic angular factor of the dipole
// potential (available for comparison; not azimuthally symmetric)
double dipole_line_phase_raw(const GateGeometry& geo, double g, double z, double xT0, double xT1,
                             const std::array<double, 3>& orientation, double rel_tol);

// rescale to sigma = 1, v = 1 (all phases are invariant under this rescaling)
GateGeometry to_unit_sigma(const GateGeometry& geo);
InteractionSpec to_unit_sigma(const InteractionSpec& spec, const GateGeometry& geo);

struct PhaseField {
    InteractionSpec spec;
    GateGeometry geo;

    // accumulated phase at lab-frame longitudinal coordinate z
    double at(double z, double rho) const;
    double at(double z, double xT0, double xT1) const { return at(z, std::hypot(xT0, xT1)); }
    // phase entering the output-state overlap, i.e. the bracket at z' +- l
    double at_output(double zprime, double rho) const { return at(zprime + geo.l, rho); }
};

}  // namespace ppgate
