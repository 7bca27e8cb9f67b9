#pragma once

#include "ppgate/interaction.hpp"

namespace ppgate {

// two counter-propagating pulses: pulse 1 starts at the origin, pulse 2 at
// (D, 0, l); both in the lowest Hermite-Gaussian mode along each axis
struct PulsePair {
    GateGeometry geometry;
    std::array<int, 3> modes1 = {0, 0, 0};
    std::array<int, 3> modes2 = {0, 0, 0};

    void validate() const {
        geometry.validate();
        for (int m : modes1)
            if (m != 0) throw usage_error("PulsePair: only the (0,0,0) mode is supported");
        for (int m : modes2)
            if (m != 0) throw usage_error("PulsePair: only the (0,0,0) mode is supported");
    }
};

// exact Gaussian law of the relative coordinate x' = x1' - x2' under the
// product intensity measure, in the primed (output) frame
struct RelativeGaussianDensity {
    std::array<double, 3> mean{};
    std::array<double, 3> std{};
};

RelativeGaussianDensity relative_density(const PulsePair& pair);

// amplitude of the relative wavefunction at t = 0 in unprimed relative
// coordinates, centered at (-D, 0, -l), unit L2 mass
cdouble initial_relative_wavefunction(const PulsePair& pair, double x, double y, double z);

}  // namespace ppgate
