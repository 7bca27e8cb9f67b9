#include <cmath>
#include <random>

#include "doctest.h"
#include "ppgate/gatemetrics.hpp"
#include "ppgate/mathcore.hpp"

using namespace ppgate;

namespace {

PulsePair pair_at(double R) {
    PulsePair p;
    p.geometry = GateGeometry::reference(R);
    return p;
}

}  // namespace

TEST_CASE("relative density of the reference pair") {
    RelativeGaussianDensity d = relative_density(pair_at(5.0));
    CHECK(d.mean[0] == doctest::Approx(-5.0));
    CHECK(d.mean[1] == 0.0);
    CHECK(d.mean[2] == 0.0);
    for (double s : d.std) CHECK(s == doctest::Approx(1.0));
}

TEST_CASE("initial relative wavefunction squares to the centered gaussian") {
    PulsePair pair = pair_at(3.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        double x = u(rng), y = u(rng), z = u(rng);
        double density = std::norm(initial_relative_wavefunction(pair, x, y, z));
        double dx = x + 3.0, dz = z + pair.geometry.l;
        double expect = std::pow(2 * M_PI, -1.5) *
                        std::exp(-(dx * dx + y * y + dz * dz) / 2.0);
        CHECK(density == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("monte carlo estimate of the head-on overlap matches quadrature") {
    PulsePair pair = pair_at(0.0);
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole;
    spec.g = 0.5;
    PhaseField field{spec, pair.geometry};

    std::mt19937_64 rng(12345);
    std::normal_distribution<double> n01(0.0, 1.0);
    const int samples = 1'000'000;
    cdouble acc = 0.0;
    for (int i = 0; i < samples; ++i) {
        double zp = n01(rng);
        double rho = std::hypot(n01(rng), n01(rng));
        double phase = field.at_output(zp, rho);
        acc += std::exp(cdouble(0.0, -phase));
    }
    acc /= double(samples);

    GateResult quad = fidelity_phase(pair, spec, 1e-10);
    CHECK(std::abs(acc - quad.overlap) < 5e-3);  // MC noise floor
}

TEST_CASE("full two-photon integral reduces to the relative coordinate") {
    // E[e^{-i phase(x1 - x2)}] over the product of the two single-photon
    // intensities equals the same expectation over the relative density
    PulsePair pair = pair_at(12.0);
    InteractionSpec spec;
    spec.kind = PotentialKind::dipole;
    spec.g = 50.0;
    PhaseField field{spec, pair.geometry};
    const double s1 = pair.geometry.sigma / std::sqrt(2.0);  // single-photon intensity width

    QuadratureRule outer = gauss_hermite_rule(16);
    QuadratureRule inner = gauss_hermite_rule(12);
    double mt[4] = {0.0, 0.0, pair.geometry.D, 0.0};
    double st[4] = {s1, s1, s1, s1};
    cdouble full = tensor_gaussian_integral(4, outer, mt, st, [&](std::span<const double> t) {
        double ux = t[0] - t[2], uy = t[1] - t[3];
        double mz[2] = {0.0, 0.0}, sz[2] = {s1, s1};
        return tensor_gaussian_integral(2, inner, mz, sz, [&](std::span<const double> z) {
            return std::exp(cdouble(0.0, -field.at_output(z[0] - z[1], std::hypot(ux, uy))));
        });
    });

    RelativeGaussianDensity d = relative_density(pair);
    double mr[3] = {d.mean[0], d.mean[1], d.mean[2]};
    double sr[3] = {d.std[0], d.std[1], d.std[2]};
    cdouble reduced = tensor_gaussian_integral(3, outer, mr, sr, [&](std::span<const double> r) {
        return std::exp(cdouble(0.0, -field.at_output(r[2], std::hypot(r[0], r[1]))));
    });

    CHECK(std::abs(full - reduced) < 1e-8);
}

TEST_CASE("pulse pair validation rejects excited modes") {
    PulsePair p = pair_at(0.0);
    p.modes1 = {1, 0, 0};
    CHECK_THROWS_AS(p.validate(), usage_error);
}
