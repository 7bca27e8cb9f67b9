#include "ppgate/mathcore.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

namespace ppgate {

double hermite_poly(int n, double x) {
    if (n < 0) throw usage_error("hermite_poly: n must be non-negative");
    if (!std::isfinite(x)) throw usage_error("hermite_poly: x must be finite");
    double hm = 1.0, h = 2.0 * x;
    if (n == 0) return hm;
    for (int k = 1; k < n; ++k) {
        double hn = 2.0 * x * h - 2.0 * k * hm;
        hm = h;
        h = hn;
    }
    if (!std::isfinite(h)) throw numerical_error("hermite_poly: overflow in recurrence");
    return h;
}

void hg_mode_eval_all(int nmax, double t, double* out) {
    const double pi_m14 = 0.7511255444649425;  // pi^{-1/4}
    out[0] = pi_m14 * std::exp(-0.5 * t * t);
    if (nmax == 0) return;
    out[1] = std::sqrt(2.0) * t * out[0];
    for (int k = 1; k < nmax; ++k)
        out[k + 1] = std::sqrt(2.0 / (k + 1)) * t * out[k] - std::sqrt(double(k) / (k + 1)) * out[k - 1];
}

double hg_mode_eval(const HermiteGaussianMode& mode, double x) {
    if (mode.sigma <= 0) throw usage_error("hg_mode_eval: sigma must be positive");
    if (mode.n < 0) throw usage_error("hg_mode_eval: n must be non-negative");
    if (!std::isfinite(x)) throw usage_error("hg_mode_eval: x must be finite");
    std::vector<double> buf(mode.n + 1);
    hg_mode_eval_all(mode.n, x / mode.sigma, buf.data());
    return buf[mode.n] / std::sqrt(mode.sigma);
}

namespace {

// orthonormal Hermite functions phi_k = psi_k (unit width) and the value of
// phi_n' at x, used for Newton polishing of Gauss-Hermite nodes
double hermite_function_newton_step(int n, double x) {
    std::vector<double> phi(n + 1);
    hg_mode_eval_all(n, x, phi.data());
    // d/dx phi_n = sqrt(2n) phi_{n-1} - x phi_n
    double d = std::sqrt(2.0 * n) * phi[n - 1] - x * phi[n];
    return phi[n] / d;
}

double christoffel_weight(int n, double x) {
    std::vector<double> phi(n);
    hg_mode_eval_all(n - 1, x, phi.data());
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += phi[k] * phi[k];
    return std::exp(-x * x) / s;
}

}  // namespace

QuadratureRule gauss_hermite_rule(int order) {
    if (order < 1 || order > 200) throw usage_error("gauss_hermite_rule: order must be in [1, 200]");
    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    if (order == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = std::sqrt(M_PI);
        return rule;
    }
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        double b = std::sqrt(0.5 * k);
        J(k, k - 1) = J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    for (int i = 0; i < order; ++i) {
        double x = es.eigenvalues()(i);
        for (int it = 0; it < 8; ++it) {
            double dx = hermite_function_newton_step(order, x);
            x -= dx;
            if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
        }
        rule.nodes[i] = x;
    }
    std::sort(rule.nodes.begin(), rule.nodes.end());
    // enforce exact symmetry about 0
    for (int i = 0; i < order / 2; ++i) {
        double m = 0.5 * (rule.nodes[order - 1 - i] - rule.nodes[i]);
        rule.nodes[i] = -m;
        rule.nodes[order - 1 - i] = m;
    }
    if (order % 2) rule.nodes[order / 2] = 0.0;
    for (int i = 0; i < order; ++i) rule.weights[i] = christoffel_weight(order, rule.nodes[i]);
    for (int i = 0; i < order / 2; ++i) {
        double w = 0.5 * (rule.weights[i] + rule.weights[order - 1 - i]);
        rule.weights[i] = rule.weights[order - 1 - i] = w;
    }
    return rule;
}

QuadratureRule gauss_legendre_rule(int order) {
    if (order < 1 || order > 200) throw usage_error("gauss_legendre_rule: order must be in [1, 200]");
    QuadratureRule rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        rule.weights[i] = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
    }
    return rule;
}

cdouble tensor_gaussian_integral(int dim, const QuadratureRule& rule,
                                 std::span<const double> means,
                                 std::span<const double> stds,
                                 const std::function<cdouble(std::span<const double>)>& f) {
    if (dim < 1 || dim > 4) throw usage_error("tensor_gaussian_integral: dim must be in 1..4");
    if ((int)means.size() != dim || (int)stds.size() != dim)
        throw usage_error("tensor_gaussian_integral: means/stds size mismatch");
    for (double s : stds)
        if (!(s > 0)) throw usage_error("tensor_gaussian_integral: stds must be positive");
    const int n = rule.order;
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    std::array<int, 4> idx{0, 0, 0, 0};
    std::array<double, 4> x{};
    cdouble total = 0.0;
    while (true) {
        double w = 1.0;
        for (int d = 0; d < dim; ++d) {
            x[d] = means[d] + std::sqrt(2.0) * stds[d] * rule.nodes[idx[d]];
            w *= rule.weights[idx[d]] * inv_sqrt_pi;
        }
        total += w * f(std::span<const double>(x.data(), dim));
        int d = 0;
        for (; d < dim; ++d) {
            if (++idx[d] < n) break;
            idx[d] = 0;
        }
        if (d == dim) break;
    }
    return total;
}

namespace {

// Gauss7/Kronrod15 nodes and weights (positive half)
constexpr std::array<double, 8> kXgk = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kWg = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    cdouble value;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk15(const std::function<cdouble(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cdouble fk[15];
    for (int i = 0; i < 7; ++i) {
        fk[i] = f(c - h * kXgk[i]);
        fk[14 - i] = f(c + h * kXgk[i]);
    }
    fk[7] = f(c);
    cdouble k15 = kWgk[7] * fk[7];
    cdouble g7 = kWg[3] * fk[7];
    for (int i = 0; i < 7; ++i) k15 += kWgk[i] * (fk[i] + fk[14 - i]);
    for (int i = 0; i < 3; ++i) g7 += kWg[i] * (fk[2 * i + 1] + fk[13 - 2 * i]);
    k15 *= h;
    g7 *= h;
    return Panel{a, b, k15, std::abs(k15 - g7)};
}

}  // namespace

IntegralResult adaptive_integral_1d(const std::function<cdouble(double)>& f,
                                    double a, double b, double rel_tol,
                                    std::size_t max_intervals) {
    if (!(a < b)) throw usage_error("adaptive_integral_1d: requires a < b");
    if (!(rel_tol > 0)) throw usage_error("adaptive_integral_1d: rel_tol must be positive");
    std::priority_queue<Panel> heap;
    heap.push(gk15(f, a, b));
    cdouble total = heap.top().value;
    double total_err = heap.top().err;
    while (heap.size() < max_intervals) {
        if (total_err <= rel_tol * std::max(std::abs(total), 1e-300)) break;
        Panel worst = heap.top();
        heap.pop();
        double mid = 0.5 * (worst.a + worst.b);
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    if (total_err > rel_tol * std::max(std::abs(total), 1e-300) && heap.size() >= max_intervals)
        throw quadrature_error("adaptive_integral_1d: subdivision cap reached", total, total_err);
    return IntegralResult{total, total_err, heap.size()};
}

double i0e(double x) {
    x = std::abs(x);
    if (x < 20.0) {
        double t = 1.0, s = 1.0;
        const double q = 0.25 * x * x;
        for (int k = 1; k < 80; ++k) {
            t *= q / (double(k) * k);
            s += t;
            if (t < 1e-18 * s) break;
        }
        return s * std::exp(-x);
    }
    double t = 1.0, s = 1.0;
    for (int k = 0; k < 12; ++k) {
        double next = t * (2.0 * k + 1.0) * (2.0 * k + 1.0) / (8.0 * (k + 1.0) * x);
        if (next > t && k > 2) break;
        t = next;
        s += t;
        if (t < 1e-17 * s) break;
    }
    return s / std::sqrt(2.0 * M_PI * x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace ppgate
