#include <cmath>

#include "doctest.h"
#include "ppgate/propagator.hpp"

using namespace ppgate;

namespace {

PulsePair pair_at(double R) {
    PulsePair p;
    p.geometry = GateGeometry::reference(R);
    return p;
}

const GridSpec small{32, 32, 24, 12.0, 12.0, 12.0};

}  // namespace

TEST_CASE("grid validation") {
    GridSpec bad = small;
    bad.nx = 4;
    CHECK_THROWS_AS(bad.validate(), usage_error);
    bad = small;
    bad.Lz = 0.0;
    CHECK_THROWS_AS(bad.validate(), usage_error);
}

TEST_CASE("initial wavefunction is grid-normalized and centered") {
    PulsePair pair = pair_at(2.0);
    RelativeWavefunction xi = make_initial_wavefunction(pair, small);
    CHECK(xi.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(xi.x0 == doctest::Approx(-2.0));
    CHECK(xi.z0 == doctest::Approx(-pair.geometry.l_hat()));
}

TEST_CASE("split-step evolution conserves the norm") {
    PulsePair pair = pair_at(0.0);
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole;
    spec.g = 0.3;
    PropagatorOptions opt;
    opt.steps = 16;
    RelativeWavefunction xi = split_step_evolve(make_initial_wavefunction(pair, small), spec,
                                                pair.geometry, opt);
    CHECK(xi.norm_sq() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(xi.time == doctest::Approx(pair.geometry.l_hat()));
}

TEST_CASE("with diffraction off the evolution is the analytic phase mask") {
    // separated so the grid stays away from the rho -> 0 axis and nothing clamps
    PulsePair pair = pair_at(8.0);
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole;
    spec.g = 0.5;
    PropagatorOptions opt;
    opt.steps = 12;
    opt.include_diffraction = false;
    RelativeWavefunction xi0 = make_initial_wavefunction(pair, small);
    RelativeWavefunction evolved = split_step_evolve(xi0, spec, pair.geometry, opt);
    CHECK(evolved.clamped_mass == 0.0);

    PhaseField field{spec, pair.geometry};
    RelativeWavefunction masked = apply_accumulated_phase(xi0, field);
    double worst = 0.0;
    for (std::size_t i = 0; i < evolved.values.size(); ++i)
        worst = std::max(worst, std::abs(evolved.values[i] - masked.values[i]));
    CHECK(worst < 1e-10);
}

TEST_CASE("free diffraction spreads the transverse width and keeps z frozen") {
    PulsePair pair = pair_at(0.0);
    InteractionSpec free_spec;
    free_spec.g = 0.0;
    PropagatorOptions opt;
    opt.steps = 16;
    RelativeWavefunction xi0 = make_initial_wavefunction(pair, small);
    RelativeWavefunction xi = split_step_evolve(xi0, free_spec, pair.geometry, opt);

    auto var_x = [](const RelativeWavefunction& w) {
        double s = 0.0;
        for (int iz = 0; iz < w.nz; ++iz)
            for (int iy = 0; iy < w.ny; ++iy)
                for (int ix = 0; ix < w.nx; ++ix) {
                    double x = w.x_at(ix);
                    s += x * x * std::norm(w.values[(std::size_t(iz) * w.ny + iy) * w.nx + ix]);
                }
        return s * w.cell_volume();
    };
    CHECK(var_x(xi) > var_x(xi0) * 1.001);

    // longitudinal marginal is untouched in the co-moving frame
    auto z_marginal = [](const RelativeWavefunction& w, int iz) {
        double s = 0.0;
        for (int iy = 0; iy < w.ny; ++iy)
            for (int ix = 0; ix < w.nx; ++ix)
                s += std::norm(w.values[(std::size_t(iz) * w.ny + iy) * w.nx + ix]);
        return s;
    };
    for (int iz : {0, 7, 15})
        CHECK(z_marginal(xi, iz) == doctest::Approx(z_marginal(xi0, iz)).epsilon(1e-10));
}

TEST_CASE("overlap against free requires matching grids") {
    PulsePair pair = pair_at(0.0);
    RelativeWavefunction a = make_initial_wavefunction(pair, small);
    GridSpec other = small;
    other.nx = 16;
    RelativeWavefunction b = make_initial_wavefunction(pair, other);
    CHECK_THROWS_AS(overlap_against_free(a, b), usage_error);
    GateResult self = overlap_against_free(a, a);
    CHECK(self.F == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("first-order interplay correction vanishes with the phase") {
    PulsePair pair = pair_at(0.0);
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole;
    spec.g = 0.0;
    PhaseField field{spec, pair.geometry};
    RelativeWavefunction xi = make_initial_wavefunction(pair, small);
    RelativeWavefunction corrected = bch_first_order_correct(xi, field, pair.geometry);
    double worst = 0.0;
    for (std::size_t i = 0; i < xi.values.size(); ++i)
        worst = std::max(worst, std::abs(corrected.values[i] - xi.values[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("interplay correction moves the masked state toward the split-step result") {
    PulsePair pair = pair_at(0.0);
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole;
    spec.g = 0.2;
    GridSpec grid{48, 48, 32, 12.0, 12.0, 12.0};
    PropagatorOptions opt;
    opt.steps = 32;
    RelativeWavefunction xi0 = make_initial_wavefunction(pair, grid);
    InteractionSpec free_spec = spec;
    free_spec.g = 0.0;
    cdouble o_split = overlap_against_free(split_step_evolve(xi0, spec, pair.geometry, opt),
                                           split_step_evolve(xi0, free_spec, pair.geometry, opt))
                          .overlap;

    PhaseField field{spec, pair.geometry};
    RelativeWavefunction masked = apply_accumulated_phase(xi0, field);
    cdouble o_masked = overlap_against_free(masked, xi0).overlap;
    RelativeWavefunction corrected = bch_first_order_correct(masked, field, pair.geometry);
    cdouble o_corr = overlap_against_free(corrected, xi0).overlap;

    CHECK(std::abs(o_corr - o_split) < std::abs(o_masked - o_split));
}
