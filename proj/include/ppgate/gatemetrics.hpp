#pragma once

#include <vector>

#include "ppgate/twophoton.hpp"

namespace ppgate {

struct GateResult {
    cdouble overlap{};
    double F = 0.0;              // |overlap|^2
    double phi = 0.0;            // arg(overlap), in (-pi, pi]
    double phi_unwrapped = 0.0;  // filled by sweeps; equals phi otherwise
    double err_estimate = 0.0;
    GateGeometry geometry;
    InteractionSpec spec;
};

GateResult make_gate_result(cdouble overlap, double err, const GateGeometry& geo,
                            const InteractionSpec& spec, double tol);

// sqrt(F) e^{i phi} as the 3D integral of the relative Gaussian density against
// e^{-i phase}; reduced to (z', rho) by azimuthal integration of the transverse
// Gaussian (Bessel weight), certified by doubling the longitudinal rule order
GateResult fidelity_phase(const PulsePair& pair, const InteractionSpec& spec, double tol,
                          int quad_order = 48);

struct ModeMixTensor {
    int max_order = 0;
    double g = 0.0;
    double R = 0.0;
    std::vector<cdouble> c;  // (max_order+1)^4, index ((m*N + n)*N + l)*N + k

    int N() const { return max_order + 1; }
    cdouble at(int m, int n, int l, int k) const {
        int n_ = N();
        return c[((std::size_t(m) * n_ + n) * n_ + l) * n_ + k];
    }
    double sum_sq() const;
};

// transverse mode-mixing coefficients under the z-independent far-field phase
ModeMixTensor mode_mix_tensor(const InteractionSpec& spec, const GateGeometry& geo,
                              int max_order, double tol);

struct SchmidtResult {
    std::vector<double> singular_values;  // descending, of the renormalized tensor
    double entropy = 0.0;                 // -sum p ln p, p = normalized squared singular values
    double purity = 0.0;                  // sum p^2
};

SchmidtResult schmidt_spectrum(const ModeMixTensor& t);

}  // namespace ppgate
