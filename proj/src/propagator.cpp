#include "ppgate/propagator.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

namespace ppgate {

namespace {

std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

// batched in-place 2D transforms over all z slices
class BatchFft2 {
  public:
    BatchFft2(int nx, int ny, int nz, cdouble* data) : scale_(1.0 / (double(nx) * ny)) {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        int n[2] = {ny, nx};
        auto* p = reinterpret_cast<fftw_complex*>(data);
        fwd_ = fftw_plan_many_dft(2, n, nz, p, nullptr, 1, nx * ny, p, nullptr, 1, nx * ny,
                                  FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_many_dft(2, n, nz, p, nullptr, 1, nx * ny, p, nullptr, 1, nx * ny,
                                  FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~BatchFft2() {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }
    void forward() { fftw_execute(fwd_); }
    void backward(cdouble* data, std::size_t count) {
        fftw_execute(bwd_);
        for (std::size_t i = 0; i < count; ++i) data[i] *= scale_;
    }

  private:
    fftw_plan fwd_, bwd_;
    double scale_;
};

std::vector<double> fft_freqs(int n, double L) {
    std::vector<double> k(n);
    for (int i = 0; i < n; ++i) {
        int m = i < (n + 1) / 2 ? i : i - n;
        k[i] = 2.0 * M_PI * m / L;
    }
    return k;
}

double boundary_mass(const RelativeWavefunction& w) {
    double m = 0.0;
    for (int iz = 0; iz < w.nz; ++iz)
        for (int iy = 0; iy < w.ny; ++iy)
            for (int ix = 0; ix < w.nx; ++ix) {
                bool edge = ix == 0 || ix == w.nx - 1 || iy == 0 || iy == w.ny - 1 ||
                            iz == 0 || iz == w.nz - 1;
                if (!edge) continue;
                m += std::norm(w.values[(std::size_t(iz) * w.ny + iy) * w.nx + ix]);
            }
    return m * w.cell_volume();
}

// time-integrated potential primitive: phase increment over [t1, t2] for a cell
// at co-moving z and transverse rho^2 is prim(z + 2 t2) - prim(z + 2 t1)
struct PotentialPrimitive {
    PotentialKind kind;
    double g, eps, l_hat;

    double A_shape(double zeta, double rho2) const {
        double d = zeta * zeta + rho2;
        return zeta * (zeta * zeta + 2.0 * rho2) / (d * std::sqrt(d));
    }
    double operator()(double zeta, double rho2) const {
        switch (kind) {
            case PotentialKind::dipole:
                return g / rho2 * A_shape(zeta, rho2);
            case PotentialKind::dipole_simplified:
                return g * zeta / (rho2 * l_hat);
            case PotentialKind::contact_regularized:
                return g / (2.0 * M_PI * eps * eps) * std::exp(-rho2 / (2.0 * eps * eps)) *
                       normal_cdf(zeta / eps);
        }
        return 0.0;
    }
};

}  // namespace

double RelativeWavefunction::norm_sq() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return s * cell_volume();
}

bool RelativeWavefunction::same_grid(const RelativeWavefunction& o) const {
    return nx == o.nx && ny == o.ny && nz == o.nz && Lx == o.Lx && Ly == o.Ly && Lz == o.Lz &&
           x0 == o.x0 && y0 == o.y0 && z0 == o.z0;
}

RelativeWavefunction make_initial_wavefunction(const PulsePair& pair, const GridSpec& grid) {
    pair.validate();
    grid.validate();
    const GateGeometry geo = to_unit_sigma(pair.geometry);
    RelativeWavefunction w;
    w.nx = grid.nx;
    w.ny = grid.ny;
    w.nz = grid.nz;
    w.Lx = grid.Lx;
    w.Ly = grid.Ly;
    w.Lz = grid.Lz;
    w.x0 = -geo.D;
    w.y0 = 0.0;
    w.z0 = -geo.l;
    w.values.resize(std::size_t(w.nx) * w.ny * w.nz);
    for (int iz = 0; iz < w.nz; ++iz) {
        double z = w.z_at(iz) + geo.l;
        for (int iy = 0; iy < w.ny; ++iy) {
            double y = w.y_at(iy);
            for (int ix = 0; ix < w.nx; ++ix) {
                double x = w.x_at(ix) + geo.D;
                w.values[(std::size_t(iz) * w.ny + iy) * w.nx + ix] =
                    std::exp(-(x * x + y * y + z * z) / 4.0);
            }
        }
    }
    double n = std::sqrt(w.norm_sq());
    for (auto& v : w.values) v /= n;
    return w;
}

RelativeWavefunction split_step_evolve(const RelativeWavefunction& xi0, const InteractionSpec& spec,
                                       const GateGeometry& geo_in, const PropagatorOptions& opt) {
    spec.validate();
    geo_in.validate();
    if (opt.steps < 1) throw usage_error("split_step_evolve: steps must be >= 1");
    const GateGeometry geo = to_unit_sigma(geo_in);
    const InteractionSpec uspec = to_unit_sigma(spec, geo_in);
    const double l_hat = geo.l;
    const double delta = 1.0 / geo.k();  // 1/(k sigma), so l/r = l_hat * delta

    RelativeWavefunction w = xi0;
    const double tail = boundary_mass(w);
    if (tail > opt.tail_threshold)
        throw numerical_error("split_step_evolve: grid too small, boundary mass " + std::to_string(tail));

    const int nx = w.nx, ny = w.ny, nz = w.nz;
    const std::size_t slab = std::size_t(nx) * ny;
    const double dV = w.cell_volume();
    const double dtau = l_hat / opt.steps;

    std::vector<double> rho2(slab);
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            double x = w.x_at(ix), y = w.y_at(iy);
            rho2[std::size_t(iy) * nx + ix] = std::max(x * x + y * y, 1e-12);
        }

    std::vector<cdouble> dk(slab);
    {
        auto kx = fft_freqs(nx, w.Lx);
        auto ky = fft_freqs(ny, w.Ly);
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                double k2 = kx[ix] * kx[ix] + ky[iy] * ky[iy];
                dk[std::size_t(iy) * nx + ix] =
                    std::exp(cdouble(0.0, opt.diffraction_coefficient * 0.5 * delta * k2 * dtau));
            }
    }

    PotentialPrimitive prim{uspec.kind, uspec.g, uspec.epsilon, l_hat};
    BatchFft2 fft(nx, ny, nz, w.values.data());

    double clamped = 0.0;
    auto apply_potential = [&](double t1, double t2) {
        if (uspec.g == 0.0) return;
        for (int iz = 0; iz < nz; ++iz) {
            double z = w.z_at(iz);
            cdouble* s = w.values.data() + std::size_t(iz) * slab;
            for (std::size_t j = 0; j < slab; ++j) {
                double ph = prim(z + 2.0 * t2, rho2[j]) - prim(z + 2.0 * t1, rho2[j]);
                if (std::abs(ph) > opt.clamp) {
                    clamped += std::norm(s[j]) * dV;
                    ph = std::copysign(opt.clamp, ph);
                }
                s[j] *= std::exp(cdouble(0.0, -ph));
            }
        }
    };

    for (int st = 0; st < opt.steps; ++st) {
        double t0 = st * dtau, t1 = (st + 1) * dtau, tm = 0.5 * (t0 + t1);
        apply_potential(t0, tm);
        if (opt.include_diffraction) {
            fft.forward();
            for (int iz = 0; iz < nz; ++iz) {
                cdouble* s = w.values.data() + std::size_t(iz) * slab;
                for (std::size_t j = 0; j < slab; ++j) s[j] *= dk[j];
            }
            fft.backward(w.values.data(), w.values.size());
        }
        apply_potential(tm, t1);
    }
    w.time = xi0.time + l_hat;
    w.clamped_mass = xi0.clamped_mass + clamped / (2.0 * opt.steps);

    // spectral tail check: power with transverse frequency in the top quarter
    if (opt.include_diffraction) {
        RelativeWavefunction spec_copy = w;
        BatchFft2 fft2(nx, ny, nz, spec_copy.values.data());
        fft2.forward();
        double hi = 0.0, tot = 0.0;
        for (int iz = 0; iz < nz; ++iz)
            for (int iy = 0; iy < ny; ++iy)
                for (int ix = 0; ix < nx; ++ix) {
                    double p = std::norm(spec_copy.values[(std::size_t(iz) * ny + iy) * nx + ix]);
                    tot += p;
                    int mx = std::min(ix, nx - ix), my = std::min(iy, ny - iy);
                    if (mx > 3 * nx / 8 || my > 3 * ny / 8) hi += p;
                }
        w.alias_fraction = tot > 0 ? hi / tot : 0.0;
        if (w.alias_fraction > opt.alias_threshold)
            throw numerical_error("split_step_evolve: aliasing check failed, high-frequency fraction " +
                                  std::to_string(w.alias_fraction));
    }
    return w;
}

GateResult overlap_against_free(const RelativeWavefunction& xi_int,
                                const RelativeWavefunction& xi_free) {
    if (!xi_int.same_grid(xi_free)) throw usage_error("overlap_against_free: grid mismatch");
    cdouble o = 0.0;
    for (std::size_t i = 0; i < xi_int.values.size(); ++i)
        o += std::conj(xi_free.values[i]) * xi_int.values[i];
    o *= xi_int.cell_volume();
    GateResult res;
    res.overlap = o;
    res.F = std::norm(o);
    res.phi = std::arg(o);
    res.phi_unwrapped = res.phi;
    res.err_estimate = 0.0;
    return res;
}

RelativeWavefunction apply_accumulated_phase(const RelativeWavefunction& xi, const PhaseField& field) {
    const GateGeometry geo = to_unit_sigma(field.geo);
    const PhaseField ufield{to_unit_sigma(field.spec, field.geo), geo};
    RelativeWavefunction w = xi;
    for (int iz = 0; iz < w.nz; ++iz) {
        double z = w.z_at(iz);
        for (int iy = 0; iy < w.ny; ++iy)
            for (int ix = 0; ix < w.nx; ++ix) {
                double rho = std::sqrt(std::max(w.x_at(ix) * w.x_at(ix) + w.y_at(iy) * w.y_at(iy), 1e-12));
                double ph = ufield.at(z + 2.0 * geo.l, rho);
                w.values[(std::size_t(iz) * w.ny + iy) * w.nx + ix] *= std::exp(cdouble(0.0, -ph));
            }
    }
    w.time = xi.time + geo.l;
    return w;
}

RelativeWavefunction bch_first_order_correct(const RelativeWavefunction& xi, const PhaseField& field,
                                             const GateGeometry& geo_in, double cap) {
    const GateGeometry geo = to_unit_sigma(geo_in);
    const PhaseField ufield{to_unit_sigma(field.spec, field.geo), to_unit_sigma(field.geo)};
    const double c = 0.5 * geo_in.l_over_r();
    const int nx = xi.nx, ny = xi.ny, nz = xi.nz;
    const std::size_t slab = std::size_t(nx) * ny;
    const double g = std::abs(ufield.spec.g);
    const bool dipolar = ufield.spec.kind != PotentialKind::contact_regularized;
    const double rho_b2 = dipolar && g > 0 ? 2.0 * g / cap : 0.0;

    auto kx = fft_freqs(nx, xi.Lx);
    auto ky = fft_freqs(ny, xi.Ly);

    RelativeWavefunction out = xi;
    std::vector<cdouble> ph(slab), lap(slab), gx(slab), gy(slab), s(slab), sx(slab), sy(slab);
    for (int iz = 0; iz < nz; ++iz) {
        double z = xi.z_at(iz);
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                double r2 = std::max(xi.x_at(ix) * xi.x_at(ix) + xi.y_at(iy) * xi.y_at(iy), 1e-12);
                double w = rho_b2 > 0 ? 1.0 / (1.0 + std::pow(rho_b2 / r2, 4.0)) : 1.0;
                double p = ufield.at(z + 2.0 * geo.l, std::sqrt(r2)) * w;
                if (!std::isfinite(p))
                    throw numerical_error("bch_first_order_correct: singular phase on grid");
                ph[std::size_t(iy) * nx + ix] = p;
            }
        const cdouble* src = xi.values.data() + std::size_t(iz) * slab;
        std::copy(src, src + slab, s.begin());

        auto spectral = [&](std::vector<cdouble>& a, auto factor) {
            std::vector<cdouble> tmp = a;
            BatchFft2 f(nx, ny, 1, tmp.data());
            f.forward();
            for (int iy = 0; iy < ny; ++iy)
                for (int ix = 0; ix < nx; ++ix)
                    tmp[std::size_t(iy) * nx + ix] *= factor(kx[ix], ky[iy]);
            f.backward(tmp.data(), slab);
            return tmp;
        };
        lap = spectral(ph, [](double a, double b) { return cdouble(-(a * a + b * b), 0.0); });
        gx = spectral(ph, [](double a, double) { return cdouble(0.0, a); });
        gy = spectral(ph, [](double, double b) { return cdouble(0.0, b); });
        sx = spectral(s, [](double a, double) { return cdouble(0.0, a); });
        sy = spectral(s, [](double, double b) { return cdouble(0.0, b); });

        cdouble* dst = out.values.data() + std::size_t(iz) * slab;
        for (std::size_t j = 0; j < slab; ++j) {
            cdouble comm = -c * (lap[j].real() * s[j] + 2.0 * (gx[j].real() * sx[j] + gy[j].real() * sy[j]));
            dst[j] = s[j] - 0.5 * comm;
        }
    }
    return out;
}

}  // namespace ppgate
