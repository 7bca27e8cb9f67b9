#include <cmath>

#include "doctest.h"
#include "ppgate/interaction.hpp"

using namespace ppgate;

TEST_CASE("potential kind string round trip") {
    for (auto k : {PotentialKind::dipole, PotentialKind::dipole_simplified,
                   PotentialKind::contact_regularized})
        CHECK(potential_kind_from_string(to_string(k)) == k);
    CHECK_THROWS_AS(potential_kind_from_string("nope"), usage_error);
}

TEST_CASE("dipole potential angular factor") {
    std::array<double, 3> ez{0, 0, 1};
    CHECK(dipole_potential({0, 0, 2}, ez) == doctest::Approx(-2.0 / 8.0).epsilon(1e-14));
    CHECK(dipole_potential({3, 0, 0}, ez) == doctest::Approx(1.0 / 27.0).epsilon(1e-14));
}

TEST_CASE("accumulated phase: reflection symmetry and far-field limit") {
    GateGeometry geo = GateGeometry::reference();
    const double g = 0.8;
    for (double rho : {0.3, 1.0, 4.0})
        for (double z : {-3.0, 0.5, 2.0, 9.0}) {
            double a = accumulated_phase_dipole(z, rho, geo, g);
            double b = accumulated_phase_dipole(2 * geo.l - z, rho, geo, g);
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
    // mid-passage, small rho: approaches the z-independent simplified value
    double mid = accumulated_phase_dipole(geo.l, 0.5, geo, g);
    CHECK(mid == doctest::Approx(simplified_phase(0.5, geo, g)).epsilon(2e-3));
    // far outside the passage the phase dies off
    CHECK(std::abs(accumulated_phase_dipole(300.0, 1.0, geo, g)) < 1e-3);
}

TEST_CASE("accumulated phase is invariant under uniform length rescaling") {
    GateGeometry geo = GateGeometry::reference();
    GateGeometry scaled = geo;
    const double s = 3.7;
    scaled.sigma *= s;
    scaled.lambda *= s;
    scaled.l *= s;
    for (double rho : {0.4, 2.0})
        for (double z : {1.0, 7.0})
            CHECK(accumulated_phase_dipole(z, rho, geo, 0.6) ==
                  doctest::Approx(accumulated_phase_dipole(s * z, s * rho, scaled, 0.6))
                      .epsilon(1e-12));
}

TEST_CASE("regularized contact phase is bounded and symmetric") {
    GateGeometry geo = GateGeometry::reference();
    double at_axis = contact_phase_regularized(geo.l, 1e-9, geo, 1.0, 0.1);
    CHECK(std::isfinite(at_axis));
    CHECK(std::abs(at_axis) > 0.0);
    for (double z : {0.0, 2.0, 5.0})
        CHECK(contact_phase_regularized(z, 0.7, geo, 1.0, 0.2) ==
              doctest::Approx(contact_phase_regularized(2 * geo.l - z, 0.7, geo, 1.0, 0.2))
                  .epsilon(1e-12));
}

TEST_CASE("line-integral oracle agrees at spot points") {
    GateGeometry geo = GateGeometry::reference();
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole;
    spec.g = 0.4;
    for (auto [z, rho] : {std::pair{2.0, 0.8}, {geo.l, 2.5}, {-1.0, 1.2}}) {
        double a = accumulated_phase_dipole(z, rho, geo, spec.g);
        double b = numeric_line_phase(spec, geo, z, rho, 0.0, 1e-10);
        CHECK(a == doctest::Approx(b).epsilon(1e-8));
    }
}

TEST_CASE("phase field output frame shifts by the half-passage length") {
    GateGeometry geo = GateGeometry::reference();
    PhaseField field{{PotentialKind::dipole, 0.3, 0.0, {1, 0, 0}}, geo};
    CHECK(field.at_output(0.7, 1.1) == doctest::Approx(field.at(0.7 + geo.l, 1.1)).epsilon(1e-15));
    CHECK(field.at(2.0, 0.6, 0.8) == doctest::Approx(field.at(2.0, std::hypot(0.6, 0.8))));
}

TEST_CASE("spec validation") {
    InteractionSpec s;
    s.kind = PotentialKind::contact_regularized;
    s.g = 1.0;
    s.epsilon = 0.0;
    CHECK_THROWS_AS(s.validate(), usage_error);
    s.epsilon = 0.1;
    CHECK_NOTHROW(s.validate());
    GateGeometry bad = GateGeometry::reference();
    bad.sigma = -1.0;
    CHECK_THROWS_AS(bad.validate(), usage_error);
}
