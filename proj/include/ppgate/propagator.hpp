#pragma once

#include "ppgate/gatemetrics.hpp"

namespace ppgate {

// uniform co-moving grid, extents in units of sigma
struct GridSpec {
    int nx = 64, ny = 64, nz = 48;
    double Lx = 10.0, Ly = 10.0, Lz = 10.0;

    void validate() const {
        if (nx < 8 || ny < 8 || nz < 4) throw usage_error("GridSpec: grid too coarse");
        if (!(Lx > 0 && Ly > 0 && Lz > 0)) throw usage_error("GridSpec: extents must be positive");
    }
};

struct RelativeWavefunction {
    int nx = 0, ny = 0, nz = 0;
    double Lx = 0, Ly = 0, Lz = 0;
    double x0 = 0, y0 = 0, z0 = 0;  // grid centers (relative coordinate, sigma units)
    std::vector<cdouble> values;    // index (iz*ny + iy)*nx + ix
    double time = 0.0;              // tau = t v / sigma
    double clamped_mass = 0.0;      // time-averaged probability mass in phase-clamped cells
    double alias_fraction = 0.0;    // spectral power in the top transverse frequency quarter

    double dx() const { return Lx / nx; }
    double dy() const { return Ly / ny; }
    double dz() const { return Lz / nz; }
    double cell_volume() const { return dx() * dy() * dz(); }
    double x_at(int i) const { return (i - 0.5 * nx + 0.5) * dx() + x0; }
    double y_at(int i) const { return (i - 0.5 * ny + 0.5) * dy() + y0; }
    double z_at(int i) const { return (i - 0.5 * nz + 0.5) * dz() + z0; }
    double norm_sq() const;
    bool same_grid(const RelativeWavefunction& o) const;
};

// normalized relative-coordinate Gaussian centered at (-R, 0, -l_hat)
RelativeWavefunction make_initial_wavefunction(const PulsePair& pair, const GridSpec& grid);

struct PropagatorOptions {
    int steps = 64;
    bool include_diffraction = true;
    double clamp = M_PI / 4;               // per-substep phase increment cap
    double diffraction_coefficient = 1.0;  // multiplies the transverse v/2k coefficient
    double tail_threshold = 1e-6;
    double alias_threshold = 0.5;
};

// Strang splitting in the co-moving frame over the full passage time l/v:
// half-interval potential phase (exact time-integrated increment), full
// transverse diffraction step, half-interval potential phase
RelativeWavefunction split_step_evolve(const RelativeWavefunction& xi0, const InteractionSpec& spec,
                                       const GateGeometry& geo, const PropagatorOptions& opt = {});

// discrete inner product <xi_free | xi_int> on identical grids
GateResult overlap_against_free(const RelativeWavefunction& xi_int,
                                const RelativeWavefunction& xi_free);

// first-order interplay correction xi -> xi - (1/2) [phi, (l/2k) grad_T^2] xi,
// with the phase tapered inside rho_b = sqrt(2g/cap) where the expansion breaks
RelativeWavefunction bch_first_order_correct(const RelativeWavefunction& xi, const PhaseField& field,
                                             const GateGeometry& geo, double cap = M_PI / 16);

// phase mask e^{-i phase(z + 2 l, rho)} applied pointwise (the analytic path on the grid)
RelativeWavefunction apply_accumulated_phase(const RelativeWavefunction& xi, const PhaseField& field);

}  // namespace ppgate
