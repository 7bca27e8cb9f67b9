#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "ppgate/errors.hpp"

namespace ppgate {

using cdouble = std::complex<double>;

// Gauss-Hermite rule for the weight e^{-x^2} on (-inf, inf)
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;    // strictly increasing, symmetric about 0
    std::vector<double> weights;  // positive, sum to sqrt(pi)
};

struct HermiteGaussianMode {
    int n = 0;
    double sigma = 1.0;
};

// physicists' Hermite polynomial H_n(x); throws numerical_error on overflow
double hermite_poly(int n, double x);

// psi_n(x) = [sigma sqrt(pi) 2^n n!]^{-1/2} H_n(x/sigma) e^{-(x/sigma)^2/2}
double hg_mode_eval(const HermiteGaussianMode& mode, double x);

// fills out[0..nmax] with psi_0(t)..psi_nmax(t) at unit width (stable recurrence)
void hg_mode_eval_all(int nmax, double t, double* out);

// nodes via Golub-Welsch eigenvalues, polished by Newton iteration on the
// orthonormal recurrence; weights from the Christoffel sum. 1 <= order <= 200.
QuadratureRule gauss_hermite_rule(int order);

// Gauss-Legendre rule on [-1, 1] (internal helper for panel quadrature)
QuadratureRule gauss_legendre_rule(int order);

// integral of f(x) times a product of unit-mass Gaussian densities
// N(x_i; mean_i, std_i), dim in 1..4, via the affinely mapped tensor rule
cdouble tensor_gaussian_integral(int dim, const QuadratureRule& rule,
                                 std::span<const double> means,
                                 std::span<const double> stds,
                                 const std::function<cdouble(std::span<const double>)>& f);

struct IntegralResult {
    cdouble value{};
    double err = 0.0;
    std::size_t intervals = 0;
};

// globally adaptive Gauss7/Kronrod15 bisection; throws quadrature_error
// (carrying the best estimate) if max_intervals is exhausted
IntegralResult adaptive_integral_1d(const std::function<cdouble(double)>& f,
                                    double a, double b, double rel_tol,
                                    std::size_t max_intervals = std::size_t(1) << 14);

// e^{-|x|} I_0(x), scaled modified Bessel function
double i0e(double x);

// standard normal CDF
double normal_cdf(double x);

}  // namespace ppgate
