#include "ppgate/twophoton.hpp"

#include <cmath>

namespace ppgate {

RelativeGaussianDensity relative_density(const PulsePair& pair) {
    pair.validate();
    const double s = pair.geometry.sigma;
    RelativeGaussianDensity d;
    // each photon intensity has variance sigma^2/2 per axis; the difference
    // coordinate is their cross-correlation with variance sigma^2
    d.mean = {-pair.geometry.D, 0.0, 0.0};
    d.std = {s, s, s};
    return d;
}

cdouble initial_relative_wavefunction(const PulsePair& pair, double x, double y, double z) {
    pair.validate();
    const double s = pair.geometry.sigma;
    const double dx = x + pair.geometry.D;
    const double dz = z + pair.geometry.l;
    const double r2 = dx * dx + y * y + dz * dz;
    const double norm = std::pow(2.0 * M_PI, -0.75) * std::pow(s, -1.5);
    return norm * std::exp(-r2 / (4.0 * s * s));
}

}  // namespace ppgate
