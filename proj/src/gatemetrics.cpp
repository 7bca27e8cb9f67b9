#include "ppgate/gatemetrics.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace ppgate {

namespace {

struct RadialIntegrator {
    PhaseField field;  // unit-sigma geometry
    double R;
    double tol;
    static constexpr double rho_c = 0.5;

    double weight(double rho) const {
        double d = rho - R;
        return rho * std::exp(-0.5 * d * d) * i0e(rho * R);
    }

    // integral over rho in (0, R+12] of weight(rho) e^{-i phase(z', rho)}
    IntegralResult integrate(double zprime) const {
        const double hi = R + 12.0;
        auto f = [&](double rho) -> cdouble {
            return weight(rho) * std::exp(cdouble(0.0, -field.at_output(zprime, rho)));
        };
        if (field.spec.kind == PotentialKind::contact_regularized) {
            // phase bounded at rho -> 0; no oscillatory core
            auto r = adaptive_integral_1d(f, 0.0, hi, tol);
            return r;
        }
        if (R - 12.0 > rho_c) {
            // the small-rho region carries a Gaussian weight below e^{-72}
            return adaptive_integral_1d(f, R - 12.0, hi, tol);
        }
        const double core_bound =
            0.5 * rho_c * rho_c * std::exp(-0.5 * (rho_c - R) * (rho_c - R));
        if (core_bound < 1e-16) {
            // core mass is below double precision; don't chase its oscillations
            auto outer = adaptive_integral_1d(f, rho_c, hi, tol);
            outer.err += core_bound;
            return outer;
        }
        auto outer = adaptive_integral_1d(f, rho_c, hi, tol);
        auto core = integrate_core(zprime);
        return IntegralResult{outer.value + core.value, outer.err + core.err,
                              outer.intervals + core.intervals};
    }

    // rho in (0, rho_c] with the substitution u = 1/rho^2: the 1/rho^2 phase
    // becomes asymptotically linear in u, the amplitude decays as u^{-2}
    IntegralResult integrate_core(double zprime) const {
        const double g = std::abs(field.spec.g);
        const double uc = 1.0 / (rho_c * rho_c);
        double U = std::max(4.0 * uc, std::pow(1.0 / (std::max(g, 1e-6) * std::max(g, 1e-6) * 1e-12), 2.0 / 7.0));
        U = std::min(U, 1e7);
        auto amp = [&](double u) { return 0.5 * std::pow(u, -1.5) * weight(std::pow(u, -0.5)); };
        auto ph = [&](double u) { return field.at_output(zprime, std::pow(u, -0.5)); };
        auto f = [&](double u) -> cdouble { return amp(u) * std::exp(cdouble(0.0, -ph(u))); };
        auto body = adaptive_integral_1d(f, uc, U, tol);
        // two-term integration-by-parts tail beyond U
        const double du = U * 1e-5;
        auto dph = [&](double u) { return (ph(u + du) - ph(u - du)) / (2.0 * du); };
        auto q1 = [&](double u) { return amp(u) / (cdouble(0.0, 1.0) * dph(u)); };
        cdouble eU = std::exp(cdouble(0.0, -ph(U)));
        cdouble t1 = q1(U) * eU;
        cdouble dq1 = (q1(U + du) - q1(U - du)) / (2.0 * du);
        cdouble t2 = dq1 / (cdouble(0.0, 1.0) * dph(U)) * eU;
        return IntegralResult{body.value + t1 + t2, body.err + std::abs(t2), body.intervals};
    }
};

cdouble longitudinal_sum(const RadialIntegrator& radial, int order, double* err_acc) {
    QuadratureRule rule = gauss_hermite_rule(order);
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    cdouble total = 0.0;
    double errs = 0.0;
    for (int i = 0; i < order; ++i) {
        auto r = radial.integrate(std::sqrt(2.0) * rule.nodes[i]);
        total += rule.weights[i] * inv_sqrt_pi * r.value;
        errs += rule.weights[i] * inv_sqrt_pi * r.err;
    }
    if (err_acc) *err_acc = errs;
    return total;
}

}  // namespace

GateResult make_gate_result(cdouble overlap, double err, const GateGeometry& geo,
                            const InteractionSpec& spec, double tol) {
    GateResult res;
    res.overlap = overlap;
    res.F = std::norm(overlap);
    res.phi = std::arg(overlap);
    res.phi_unwrapped = res.phi;
    res.err_estimate = err;
    res.geometry = geo;
    res.spec = spec;
    if (res.F > 1.0 + 10.0 * tol)
        throw numerical_error("gate overlap exceeds unity beyond tolerance: F = " + std::to_string(res.F));
    return res;
}

GateResult fidelity_phase(const PulsePair& pair, const InteractionSpec& spec, double tol,
                          int quad_order) {
    pair.validate();
    spec.validate();
    if (!(tol > 0)) throw usage_error("fidelity_phase: tol must be positive");
    if (quad_order < 2 || quad_order > 100)
        throw usage_error("fidelity_phase: quad_order must be in [2, 100]");
    const GateGeometry geo = pair.geometry;
    if (spec.g == 0.0) return make_gate_result(1.0, 0.0, geo, spec, tol);

    RadialIntegrator radial;
    radial.field = PhaseField{to_unit_sigma(spec, geo), to_unit_sigma(geo)};
    radial.R = geo.R();
    radial.tol = std::min(0.1 * tol, 1e-10);

    if (spec.kind == PotentialKind::dipole_simplified) {
        // z-independent phase: the longitudinal integral is exactly 1
        auto r = radial.integrate(0.0);
        RadialIntegrator finer = radial;
        finer.tol = radial.tol * 0.1;
        auto r2 = finer.integrate(0.0);
        double err = std::abs(r.value - r2.value) + r2.err;
        if (err > std::max(tol, 10.0 * r2.err))
            throw quadrature_error("fidelity_phase: radial refinement did not converge", r2.value, err);
        return make_gate_result(r2.value, err, geo, spec, tol);
    }

    double err_a = 0.0, err_b = 0.0;
    cdouble o1 = longitudinal_sum(radial, quad_order, &err_a);
    cdouble o2 = longitudinal_sum(radial, 2 * quad_order, &err_b);
    double diff = std::abs(o1 - o2);
    if (diff > tol) {
        cdouble o4 = longitudinal_sum(radial, std::min(4 * quad_order, 200), &err_b);
        diff = std::abs(o2 - o4);
        o2 = o4;
        if (diff > tol)
            throw quadrature_error("fidelity_phase: order doubling did not converge", o2, diff + err_b);
    }
    return make_gate_result(o2, diff + err_b, geo, spec, tol);
}

double ModeMixTensor::sum_sq() const {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    return s;
}

namespace {

// K_ml(u) = int psi_m psi_0(x) psi_l psi_0(x - u) dx on a Gauss-Hermite rule
// with the substitution x = y/sqrt(2) + u/2
struct ModeOverlapKernel {
    int N;
    QuadratureRule rule;
    mutable std::vector<double> p1, p2, buf;

    ModeOverlapKernel(int N_, int order) : N(N_), rule(gauss_hermite_rule(order)) {
        p1.resize(std::size_t(N) * rule.order);
        p2.resize(std::size_t(N) * rule.order);
        buf.resize(N);
    }

    // out is N x N row-major
    void eval(double u, double* out) const {
        const int q = rule.order;
        std::vector<double> base(q);
        for (int i = 0; i < q; ++i) {
            double x = rule.nodes[i] / std::sqrt(2.0) + 0.5 * u;
            hg_mode_eval_all(N - 1, x, buf.data());
            for (int m = 0; m < N; ++m) p1[std::size_t(m) * q + i] = buf[m];
            double psi0a = buf[0];
            hg_mode_eval_all(N - 1, x - u, buf.data());
            for (int m = 0; m < N; ++m) p2[std::size_t(m) * q + i] = buf[m];
            double w = rule.weights[i] * std::exp(rule.nodes[i] * rule.nodes[i]) / std::sqrt(2.0);
            base[i] = psi0a * buf[0] * w;
        }
        for (int m = 0; m < N; ++m)
            for (int l = 0; l < N; ++l) {
                double s = 0.0;
                for (int i = 0; i < q; ++i)
                    s += p1[std::size_t(m) * q + i] * base[i] * p2[std::size_t(l) * q + i];
                out[std::size_t(m) * N + l] = s;
            }
    }
};

}  // namespace

ModeMixTensor mode_mix_tensor(const InteractionSpec& spec, const GateGeometry& geo,
                              int max_order, double tol) {
    spec.validate();
    geo.validate();
    if (spec.kind != PotentialKind::dipole_simplified)
        throw usage_error("mode_mix_tensor: requires the dipole-simplified kind");
    if (max_order < 0 || max_order > 16)
        throw usage_error("mode_mix_tensor: max_order must be in [0, 16]");
    if (!(tol > 0)) throw usage_error("mode_mix_tensor: tol must be positive");

    const int N = max_order + 1;
    const double g = spec.g;
    const double D = geo.R();
    const std::size_t sz = std::size_t(N) * N * N * N;
    ModeMixTensor tensor;
    tensor.max_order = max_order;
    tensor.g = g;
    tensor.R = D;
    tensor.c.assign(sz, cdouble(0.0, 0.0));
    if (g == 0.0) {  // orthonormality: only the 0000 coefficient survives
        tensor.c[0] = 1.0;
        return tensor;
    }

    ModeOverlapKernel kernel(N, 48);
    const int ntheta = 64;
    std::vector<double> kx(std::size_t(N) * N), ky(std::size_t(N) * N);

    // angular average of K^x(D + rho cos) (x) K^y(rho sin), real N^4 tensor
    auto angular = [&](double rho, std::vector<double>& acc) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int it = 0; it < ntheta; ++it) {
            double th = (it + 0.5) * 2.0 * M_PI / ntheta;
            kernel.eval(D + rho * std::cos(th), kx.data());
            kernel.eval(rho * std::sin(th), ky.data());
            for (int m = 0; m < N; ++m)
                for (int l = 0; l < N; ++l) {
                    double a = kx[std::size_t(m) * N + l];
                    if (a == 0.0) continue;
                    double* dst = acc.data() + ((std::size_t(m) * N) * N + l) * N;
                    // acc[m][n][l][k] += a * ky[n][k]
                    for (int n = 0; n < N; ++n) {
                        const double* kyn = ky.data() + std::size_t(n) * N;
                        double* d = dst + std::size_t(n) * N * N;
                        for (int k = 0; k < N; ++k) d[k] += a * kyn[k];
                    }
                }
        }
        for (auto& v : acc) v *= 2.0 * M_PI / ntheta;
    };

    // outer region rho in [0.35, 10 + D]: fixed Gauss-Legendre panels
    const double rho_core = 0.35;
    std::vector<double> edges;
    for (int i = 0; i < 26; ++i) edges.push_back(rho_core + (2.0 - rho_core) * i / 25.0);
    {
        double hi = 10.0 + D;
        int np = (int)std::ceil((hi - 2.0) / 0.5);
        for (int i = 1; i <= np; ++i) edges.push_back(2.0 + (hi - 2.0) * i / np);
    }
    QuadratureRule gl = gauss_legendre_rule(12);
    std::vector<double> acc(sz);
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
        double a = edges[e], b = edges[e + 1];
        for (int i = 0; i < gl.order; ++i) {
            double rho = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
            angular(rho, acc);
            cdouble w = 0.5 * (b - a) * gl.weights[i] * rho *
                        std::exp(cdouble(0.0, -2.0 * g / (rho * rho)));
            for (std::size_t j = 0; j < sz; ++j) tensor.c[j] += w * acc[j];
        }
    }

    // core rho < 0.35: Chebyshev interpolation of the angular average in rho,
    // times scalar oscillatory moments with the exact e^{-2ig/rho^2} frequency
    const int ncheb = 9;
    std::vector<std::vector<double>> cheb_vals(ncheb, std::vector<double>(sz));
    std::vector<double> xc(ncheb);
    for (int j = 0; j < ncheb; ++j) {
        xc[j] = std::cos(M_PI * (j + 0.5) / ncheb);
        angular(rho_core * (xc[j] + 1.0) / 2.0, cheb_vals[j]);
    }
    std::vector<std::vector<double>> coef(ncheb, std::vector<double>(sz, 0.0));
    for (int j = 0; j < ncheb; ++j) {
        for (int k = 0; k < ncheb; ++k) {
            double t = std::cos(M_PI * j * (k + 0.5) / ncheb) * 2.0 / ncheb;
            for (std::size_t s = 0; s < sz; ++s) coef[j][s] += t * cheb_vals[k][s];
        }
        if (j == 0)
            for (std::size_t s = 0; s < sz; ++s) coef[j][s] *= 0.5;
    }
    const double uc = 1.0 / (rho_core * rho_core);
    double U = std::max(4.0 * uc, std::pow(1.0 / (std::max(g, 1e-8) * std::max(g, 1e-8) * 1e-12), 2.0 / 7.0));
    U = std::min(U, 3e5);
    for (int j = 0; j < ncheb; ++j) {
        auto Tj = [&](double u) {
            double rho = std::pow(u, -0.5);
            double xm = std::clamp(2.0 * rho / rho_core - 1.0, -1.0, 1.0);
            return std::cos(j * std::acos(xm));
        };
        auto f = [&](double u) -> cdouble {
            return 0.5 * std::pow(u, -2.0) * Tj(u) * std::exp(cdouble(0.0, -2.0 * g * u));
        };
        cdouble mj;
        try {
            mj = adaptive_integral_1d(f, uc, U, 1e-11).value;
        } catch (const quadrature_error& e) {
            if (e.err_estimate > 1e-12) throw;
            mj = e.best_value;
        }
        // one integration-by-parts tail term beyond U
        mj += 0.5 * std::pow(U, -2.0) * Tj(U) * std::exp(cdouble(0.0, -2.0 * g * U)) /
              cdouble(0.0, 2.0 * g);
        for (std::size_t s = 0; s < sz; ++s) tensor.c[s] += mj * coef[j][s];
    }
    return tensor;
}

SchmidtResult schmidt_spectrum(const ModeMixTensor& t) {
    const int N = t.N();
    const int M = N * N;
    double total = t.sum_sq();
    if (!(total > 0)) throw usage_error("schmidt_spectrum: zero tensor");
    Eigen::MatrixXcd mat(M, M);
    for (int m = 0; m < N; ++m)
        for (int n = 0; n < N; ++n)
            for (int l = 0; l < N; ++l)
                for (int k = 0; k < N; ++k)
                    mat(m * N + n, l * N + k) = t.at(m, n, l, k);
    mat /= std::sqrt(total);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
    SchmidtResult res;
    res.singular_values.resize(M);
    double psum = 0.0;
    for (int i = 0; i < M; ++i) {
        res.singular_values[i] = svd.singularValues()(i);
        psum += res.singular_values[i] * res.singular_values[i];
    }
    res.entropy = 0.0;
    res.purity = 0.0;
    for (double s : res.singular_values) {
        double p = s * s / psum;
        if (p > 1e-300) res.entropy -= p * std::log(p);
        res.purity += p * p;
    }
    return res;
}

}  // namespace ppgate
