#include <cmath>

#include "doctest.h"
#include "ppgate/gatemetrics.hpp"

using namespace ppgate;

namespace {

PulsePair pair_at(double R) {
    PulsePair p;
    p.geometry = GateGeometry::reference(R);
    return p;
}

}  // namespace

TEST_CASE("zero strength gives the identity gate") {
    for (double R : {0.0, 26.0}) {
        InteractionSpec spec;
        spec.g = 0.0;
        GateResult r = fidelity_phase(pair_at(R), spec, 1e-12);
        CHECK(r.F == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(r.phi) < 1e-12);
    }
}

TEST_CASE("head-on overlap at g = 0.5 matches the frozen reference") {
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole;
    spec.g = 0.5;
    GateResult r = fidelity_phase(pair_at(0.0), spec, 1e-10);
    // independently sampled reference value (2e7-sample Monte Carlo, sigma ~ 1.7e-4)
    CHECK(std::abs(r.overlap - cdouble(0.4829140196, -0.4366347019)) < 1e-3);
    CHECK(r.err_estimate < 1e-8);
}

TEST_CASE("strength reversal conjugates the overlap") {
    for (double R : {0.0, 12.0}) {
        InteractionSpec plus;
        plus.kind = PotentialKind::dipole;
        plus.g = R == 0.0 ? 0.5 : 50.0;
        InteractionSpec minus = plus;
        minus.g = -plus.g;
        GateResult a = fidelity_phase(pair_at(R), plus, 1e-11);
        GateResult b = fidelity_phase(pair_at(R), minus, 1e-11);
        CHECK(std::abs(a.overlap - std::conj(b.overlap)) < 1e-9);
    }
}

TEST_CASE("fidelity decreases with strength on the head-on configuration") {
    PulsePair pair = pair_at(0.0);
    double prev = 1.0;
    for (double g : {0.05, 0.2, 0.5}) {
        InteractionSpec spec;
        spec.kind = PotentialKind::dipole;
        spec.g = g;
        GateResult r = fidelity_phase(pair, spec, 1e-10);
        CHECK(r.F < prev);
        CHECK(r.F >= 0.0);
        prev = r.F;
    }
}

TEST_CASE("overlap magnitude above one is rejected") {
    GateGeometry geo = GateGeometry::reference();
    InteractionSpec spec;
    CHECK_THROWS_AS(make_gate_result(cdouble(1.1, 0.0), 0.0, geo, spec, 1e-10), numerical_error);
}

TEST_CASE("mode tensor at g = 0 is the identity channel") {
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole_simplified;
    spec.g = 0.0;
    ModeMixTensor t = mode_mix_tensor(spec, GateGeometry::reference(3.0), 4, 1e-10);
    CHECK(std::abs(t.at(0, 0, 0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(t.at(1, 0, 1, 0)) < 1e-14);
    CHECK(std::abs(t.at(2, 2, 0, 0)) < 1e-14);
    CHECK(t.sum_sq() == doctest::Approx(1.0).epsilon(1e-14));

    SchmidtResult s = schmidt_spectrum(t);
    CHECK(s.entropy == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s.purity == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("small mode tensor: parity rule and overlap consistency") {
    PulsePair pair = pair_at(0.0);
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole_simplified;
    spec.g = 0.05;
    ModeMixTensor t = mode_mix_tensor(spec, pair.geometry, 4, 1e-10);
    double parity = 0.0;
    for (int m = 0; m < t.N(); ++m)
        for (int n = 0; n < t.N(); ++n)
            for (int l = 0; l < t.N(); ++l)
                for (int k = 0; k < t.N(); ++k)
                    if ((m + l) % 2 == 1 || (n + k) % 2 == 1)
                        parity = std::max(parity, std::abs(t.at(m, n, l, k)));
    CHECK(parity < 1e-10);
    CHECK(t.sum_sq() <= 1.0 + 1e-10);

    GateResult direct = fidelity_phase(pair, spec, 1e-11);
    CHECK(std::abs(t.at(0, 0, 0, 0) - direct.overlap) < 1e-6);

    SchmidtResult s = schmidt_spectrum(t);
    CHECK(s.entropy > 0.0);
    CHECK(s.purity <= 1.0 + 1e-12);
}

TEST_CASE("mode tensor rejects unsupported configurations") {
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole;
    spec.g = 0.1;
    CHECK_THROWS_AS(mode_mix_tensor(spec, GateGeometry::reference(), 4, 1e-10), usage_error);
    spec.kind = PotentialKind::dipole_simplified;
    CHECK_THROWS_AS(mode_mix_tensor(spec, GateGeometry::reference(), 17, 1e-10), usage_error);
}
