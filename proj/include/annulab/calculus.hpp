#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "annulab/field.hpp"

namespace annulab {

namespace detail {

/// 4th-order first derivative in the radial index, one-sided at the ends.
/// Operates on a single component strided through the field values.
inline void d_dt_column(const double* f, std::size_t stride, std::size_t n, double h,
                        double* out, std::size_t out_stride) {
    auto v = [&](std::size_t j) { return f[j * stride]; };
    const double s = 1.0 / (12.0 * h);
    out[0] = (-25.0 * v(0) + 48.0 * v(1) - 36.0 * v(2) + 16.0 * v(3) - 3.0 * v(4)) * s;
    out[out_stride] = (-3.0 * v(0) - 10.0 * v(1) + 18.0 * v(2) - 6.0 * v(3) + v(4)) * s;
    for (std::size_t j = 2; j + 2 < n; ++j)
        out[j * out_stride] = (v(j - 2) - 8.0 * v(j - 1) + 8.0 * v(j + 1) - v(j + 2)) * s;
    out[(n - 2) * out_stride] =
        -(-3.0 * v(n - 1) - 10.0 * v(n - 2) + 18.0 * v(n - 3) - 6.0 * v(n - 4) + v(n - 5)) * s;
    out[(n - 1) * out_stride] =
        -(-25.0 * v(n - 1) + 48.0 * v(n - 2) - 36.0 * v(n - 3) + 16.0 * v(n - 4) - 3.0 * v(n - 5)) * s;
}

/// Spectral d/dtheta of one ring of a single component.
inline void d_dtheta_ring(const double* f, std::size_t stride, std::size_t n_theta, double* out,
                          std::size_t out_stride) {
    std::vector<std::complex<double>> a(n_theta);
    for (std::size_t i = 0; i < n_theta; ++i) a[i] = f[i * stride];
    fft::transform(a, false);
    const std::size_t half = n_theta / 2;
    for (std::size_t i = 0; i < n_theta; ++i) {
        const auto ni = static_cast<std::ptrdiff_t>(i);
        std::ptrdiff_t n = (i <= half) ? ni : ni - static_cast<std::ptrdiff_t>(n_theta);
        if (i == half) n = 0;  // Nyquist mode has no odd derivative
        a[i] *= std::complex<double>(0.0, static_cast<double>(n));
    }
    fft::transform(a, true);
    for (std::size_t i = 0; i < n_theta; ++i) out[i * out_stride] = a[i].real();
}

}  // namespace detail

/// Radial/angular first derivatives: radial = d f / d rho, angular = rho^{-1} d f / d theta.
/// Both are computed from the log-polar derivatives (d/dt spectral-free 4th order,
/// d/dtheta spectral), scaled by e^{-t}.
inline std::pair<Field, Field> radial_angular_derivatives(const Field& f) {
    const auto& g = f.grid();
    const std::size_t nc = f.n_components();
    const std::size_t nt = g.n_theta();
    const std::size_t nr = g.n_radial();
    Field radial(f.grid_ptr(), nc), angular(f.grid_ptr(), nc);
    const double* data = f.data().data();
    // d/dt along radial columns
    for (std::size_t i = 0; i < nt; ++i)
        for (std::size_t c = 0; c < nc; ++c)
            detail::d_dt_column(data + (i * nc + c), nt * nc, nr, g.dt(),
                                radial.data().data() + (i * nc + c), nt * nc);
    // d/dtheta along rings
    for (std::size_t j = 0; j < nr; ++j)
        for (std::size_t c = 0; c < nc; ++c)
            detail::d_dtheta_ring(data + (j * nt * nc) + c, nc, nt,
                                  angular.data().data() + (j * nt * nc) + c, nc);
    for (std::size_t j = 0; j < nr; ++j) {
        const double inv_rho = 1.0 / g.rho(j);
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t c = 0; c < nc; ++c) {
                radial.at(j, i, c) *= inv_rho;
                angular.at(j, i, c) *= inv_rho;
            }
    }
    return {std::move(radial), std::move(angular)};
}

/// Cartesian gradient; output has 2 * n_components components ordered
/// (d_x c0, d_y c0, d_x c1, ...).
inline Field gradient(const Field& f) {
    const auto& g = f.grid();
    if (g.n_radial() < 8) throw std::invalid_argument("gradient: n_radial < 8");
    auto [radial, angular] = radial_angular_derivatives(f);
    const std::size_t nc = f.n_components();
    Field out(f.grid_ptr(), 2 * nc);
    for (std::size_t j = 0; j < g.n_radial(); ++j)
        for (std::size_t i = 0; i < g.n_theta(); ++i) {
            const double ct = std::cos(g.theta(i)), st = std::sin(g.theta(i));
            for (std::size_t c = 0; c < nc; ++c) {
                const double r = radial.at(j, i, c), a = angular.at(j, i, c);
                out.at(j, i, 2 * c) = ct * r - st * a;
                out.at(j, i, 2 * c + 1) = st * r + ct * a;
            }
        }
    return out;
}

/// Split of the gradient into radial and angular parts; rejects disk grids
/// (the centre ring would need rho^{-1} at the origin).
inline std::pair<Field, Field> angular_radial_split(const Field& f) {
    if (f.grid().is_disk())
        throw std::invalid_argument("angular_radial_split: disk grid; restrict to an annulus");
    auto [radial, angular] = radial_angular_derivatives(f);
    return {std::move(radial), std::move(angular)};
}

/// |grad f|^2 summed over components, as a scalar field.
inline Field gradient_squared(const Field& f) {
    auto [radial, angular] = radial_angular_derivatives(f);
    Field out(f.grid_ptr(), 1);
    const std::size_t nc = f.n_components();
    for (std::size_t k = 0; k < f.grid().n_nodes(); ++k) {
        double s = 0.0;
        for (std::size_t c = 0; c < nc; ++c) {
            const double r = radial[k * nc + c], a = angular[k * nc + c];
            s += r * r + a * a;
        }
        out[k] = s;
    }
    return out;
}

/// Quadrature of a scalar (or summed-component) field over a concentric
/// subregion, with exact fractional masses for cells straddling the region
/// circles. `region` must sit inside the grid's annulus.
inline double integrate(const Field& f, const AnnulusSpec& region) {
    const auto& g = f.grid();
    const double tol = 1e-9;
    if (std::abs(region.center.x - g.spec().center.x) > tol ||
        std::abs(region.center.y - g.spec().center.y) > tol)
        throw std::invalid_argument("integrate: region must be concentric with the grid");
    if (region.r_outer > g.spec().r_outer * (1.0 + tol))
        throw std::invalid_argument("integrate: region exceeds the grid outer radius");
    if (!g.is_disk() && region.r_inner < g.spec().r_inner * (1.0 - tol))
        throw std::invalid_argument("integrate: region exceeds the grid inner radius");
    const double ta = region.is_disk() ? -std::numeric_limits<double>::infinity()
                                       : std::log(region.r_inner);
    const double tb = std::log(std::min(region.r_outer, g.spec().r_outer));
    const std::size_t nc = f.n_components();
    double total = 0.0;
    for (std::size_t j = 0; j < g.n_radial(); ++j) {
        const double m = g.clipped_ring_mass(j, ta, tb);
        if (m == 0.0) continue;
        double ring = 0.0;
        for (std::size_t i = 0; i < g.n_theta(); ++i)
            for (std::size_t c = 0; c < nc; ++c) ring += f.at(j, i, c);
        total += ring * m * g.dtheta();
    }
    return total;
}

inline double integrate(const Field& f) { return integrate(f, f.grid().spec()); }

/// Dirichlet energy of f over a concentric subregion.
inline double dirichlet_energy(const Field& f, const AnnulusSpec& region) {
    return integrate(gradient_squared(f), region);
}
inline double dirichlet_energy(const Field& f) { return dirichlet_energy(f, f.grid().spec()); }

inline double l2_norm(const Field& f, const AnnulusSpec& region) {
    Field sq(f.grid_ptr(), 1);
    const std::size_t nc = f.n_components();
    for (std::size_t k = 0; k < f.grid().n_nodes(); ++k) {
        double s = 0.0;
        for (std::size_t c = 0; c < nc; ++c) s += f[k * nc + c] * f[k * nc + c];
        sq[k] = s;
    }
    return std::sqrt(integrate(sq, region));
}
inline double l2_norm(const Field& f) { return l2_norm(f, f.grid().spec()); }

namespace detail {

inline std::array<double, 4> lagrange_cubic_weights(double u) {
    // nodes at local coordinates {-1, 0, 1, 2}
    return {-u * (u - 1.0) * (u - 2.0) / 6.0, (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0,
            -(u + 1.0) * u * (u - 2.0) / 2.0, (u + 1.0) * u * (u - 1.0) / 6.0};
}

/// Bicubic (Lagrange) interpolation in (t, theta); theta periodic, t clamped
/// stencils at the radial edges. t must lie within [t0, t1] up to rounding.
inline double interp_bicubic(const Field& f, std::size_t c, double t, double theta) {
    const auto& g = f.grid();
    const auto nr = static_cast<std::ptrdiff_t>(g.n_radial());
    const auto nt = static_cast<std::ptrdiff_t>(g.n_theta());
    double x = (t - g.t0()) / g.dt();
    x = std::min(std::max(x, 0.0), static_cast<double>(nr - 1));
    auto j1 = static_cast<std::ptrdiff_t>(std::floor(x));
    j1 = std::min(std::max<std::ptrdiff_t>(j1, 1), nr - 3);
    const auto wt = lagrange_cubic_weights(x - static_cast<double>(j1));

    double y = theta / g.dtheta();
    y -= std::floor(y / static_cast<double>(nt)) * static_cast<double>(nt);
    auto i1 = static_cast<std::ptrdiff_t>(std::floor(y));
    const auto wth = lagrange_cubic_weights(y - static_cast<double>(i1));

    double acc = 0.0;
    for (int a = -1; a <= 2; ++a) {
        const std::size_t j = static_cast<std::size_t>(j1 + a);
        double row = 0.0;
        for (int b = -1; b <= 2; ++b) {
            std::ptrdiff_t i = (i1 + b) % nt;
            if (i < 0) i += nt;
            row += wth[static_cast<std::size_t>(b + 1)] * f.at(j, static_cast<std::size_t>(i), c);
        }
        acc += wt[static_cast<std::size_t>(a + 1)] * row;
    }
    return acc;
}

inline double smootherstep(double s) {
    s = std::min(std::max(s, 0.0), 1.0);
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

}  // namespace detail

struct ExtendResult {
    Field field;
    double energy_ratio;  // target Dirichlet energy over source Dirichlet energy
};

/// Resample f onto `target`. On the overlap this is bicubic interpolation in
/// (t, theta). Below the source inner radius the values are the even
/// reflection in t, damped toward the inner-ring mean by a smooth cutoff that
/// closes over one reflected period; deeper targets are rejected.
inline ExtendResult restrict_extend(const Field& f, GridPtr target) {
    const auto& src = f.grid();
    const auto& dst = *target;
    const double tol = 1e-12;
    if (std::abs(dst.spec().center.x - src.spec().center.x) > tol ||
        std::abs(dst.spec().center.y - src.spec().center.y) > tol)
        throw std::invalid_argument("restrict_extend: grids must share a center");
    if (dst.t1() > src.t1() + 1e-9)
        throw std::invalid_argument("restrict_extend: target exceeds the source outer radius");
    const double period = src.t1() - src.t0();
    if (dst.t0() < src.t0() - period - 1e-9)
        throw std::invalid_argument("restrict_extend: extension beyond one reflected period");

    const std::size_t nc = f.n_components();
    Field out(target, nc);
    std::vector<double> inner_mean(nc, 0.0);
    for (std::size_t c = 0; c < nc; ++c) {
        double s = 0.0;
        for (std::size_t i = 0; i < src.n_theta(); ++i) s += f.at(0, i, c);
        inner_mean[c] = s / static_cast<double>(src.n_theta());
    }
    for (std::size_t j = 0; j < dst.n_radial(); ++j) {
        const double t = dst.t(j);
        for (std::size_t i = 0; i < dst.n_theta(); ++i) {
            const double th = dst.theta(i);
            for (std::size_t c = 0; c < nc; ++c) {
                if (t >= src.t0() - 1e-14) {
                    out.at(j, i, c) = detail::interp_bicubic(f, c, std::max(t, src.t0()), th);
                } else {
                    const double tr = 2.0 * src.t0() - t;
                    const double chi = detail::smootherstep((t - (src.t0() - period)) / period);
                    out.at(j, i, c) =
                        inner_mean[c] + chi * (detail::interp_bicubic(f, c, tr, th) - inner_mean[c]);
                }
            }
        }
    }
    const double src_e = dirichlet_energy(f);
    const double dst_e = dirichlet_energy(out);
    return {std::move(out), src_e > 0.0 ? dst_e / src_e : 1.0};
}

}  // namespace annulab
