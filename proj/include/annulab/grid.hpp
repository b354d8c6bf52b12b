#pragma once

#include <cmath>
#include <limits>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "annulab/annulus.hpp"
#include "annulab/fft.hpp"

namespace annulab {

/// Log-polar discretization of an annulus (or truncated disk): radial nodes
/// t_j = log rho uniformly spaced over [log r_inner, log r_outer], angular
/// nodes theta_i = 2 pi i / n_theta. For a disk (r_inner == 0) the grid is the
/// annulus [r_outer 2^-disk_octaves, r_outer]; solvers treat the inner edge as
/// a regularity boundary and quadrature folds the centre hole into the first
/// radial cell.
///
/// Node storage order is ring-major: index = j * n_theta + i.
class LogPolarGrid {
  public:
    static constexpr int kDefaultDiskOctaves = 7;

    LogPolarGrid(AnnulusSpec spec, std::size_t n_theta, std::size_t n_radial,
                 int disk_octaves = kDefaultDiskOctaves)
        : spec_(spec), n_theta_(n_theta), n_radial_(n_radial), disk_octaves_(disk_octaves) {
        spec_.validate();
        if (!fft::is_pow2(n_theta_)) throw std::invalid_argument("LogPolarGrid: n_theta must be a power of two");
        if (n_radial_ < 8) throw std::invalid_argument("LogPolarGrid: n_radial < 8");
        const double ln2 = std::log(2.0);
        if (spec_.is_disk()) {
            if (disk_octaves_ < 2) throw std::invalid_argument("LogPolarGrid: disk_octaves < 2");
            t1_ = std::log(spec_.r_outer);
            t0_ = t1_ - disk_octaves_ * ln2;
        } else {
            t0_ = std::log(spec_.r_inner);
            t1_ = std::log(spec_.r_outer);
            disk_octaves_ = 0;
        }
        dt_ = (t1_ - t0_) / static_cast<double>(n_radial_ - 1);
        dtheta_ = 2.0 * kPi / static_cast<double>(n_theta_);
        t_.resize(n_radial_);
        rho_.resize(n_radial_);
        ring_mass_.resize(n_radial_);
        for (std::size_t j = 0; j < n_radial_; ++j) {
            t_[j] = t0_ + dt_ * static_cast<double>(j);
            rho_[j] = std::exp(t_[j]);
        }
        t_[n_radial_ - 1] = t1_;  // guard against rounding drift at the ends
        rho_[n_radial_ - 1] = spec_.r_outer;
        if (!spec_.is_disk()) rho_[0] = spec_.r_inner;
        // Exact mass of each radial cell: integral of e^{2t} dt over the cell,
        // so that sum_j ring_mass * n_theta * dtheta reproduces the area exactly.
        for (std::size_t j = 0; j < n_radial_; ++j) {
            double a = (j == 0) ? t0_ : t_[j] - 0.5 * dt_;
            double b = (j + 1 == n_radial_) ? t1_ : t_[j] + 0.5 * dt_;
            if (j == 0 && spec_.is_disk()) {
                // fold the centre hole into the innermost cell: integrate from rho = 0
                ring_mass_[j] = 0.5 * std::exp(2.0 * b);
            } else {
                ring_mass_[j] = 0.5 * (std::exp(2.0 * b) - std::exp(2.0 * a));
            }
        }
    }

    const AnnulusSpec& spec() const { return spec_; }
    std::size_t n_theta() const { return n_theta_; }
    std::size_t n_radial() const { return n_radial_; }
    std::size_t n_nodes() const { return n_theta_ * n_radial_; }
    int disk_octaves() const { return disk_octaves_; }
    bool is_disk() const { return spec_.is_disk(); }

    double t0() const { return t0_; }
    double t1() const { return t1_; }
    double dt() const { return dt_; }
    double dtheta() const { return dtheta_; }

    double t(std::size_t j) const { return t_[j]; }
    double rho(std::size_t j) const { return rho_[j]; }
    double theta(std::size_t i) const { return dtheta_ * static_cast<double>(i); }

    /// Innermost grid radius (truncation ring for disks, r_inner otherwise).
    double rho_min() const { return rho_.front(); }

    std::size_t node(std::size_t j, std::size_t i) const { return j * n_theta_ + i; }

    /// Quadrature weight of node (j, i): exact cell mass times dtheta.
    double cell_area(std::size_t j) const { return ring_mass_[j] * dtheta_; }

    /// Cartesian position of node (j, i) relative to the global origin.
    Point xy(std::size_t j, std::size_t i) const {
        return {spec_.center.x + rho_[j] * std::cos(theta(i)),
                spec_.center.y + rho_[j] * std::sin(theta(i))};
    }

    /// Mass (area / dtheta) of the radial cells clipped to log-radii [ta, tb],
    /// per angular node. Fractional end cells get their exact partial mass.
    double clipped_ring_mass(std::size_t j, double ta, double tb) const {
        double a = (j == 0) ? std::min(t0_, ta) : t_[j] - 0.5 * dt_;
        double b = (j + 1 == n_radial_) ? t1_ : t_[j] + 0.5 * dt_;
        if (j == 0 && spec_.is_disk()) a = -std::numeric_limits<double>::infinity();
        const double lo = std::max(a, ta);
        const double hi = std::min(b, tb);
        if (hi <= lo) return 0.0;
        const double e_lo = std::isinf(lo) ? 0.0 : std::exp(2.0 * lo);
        return 0.5 * (std::exp(2.0 * hi) - e_lo);
    }

    /// Radial cell width in rho at ring j (resolution scale for that radius).
    double radial_cell_width(std::size_t j) const { return rho_[j] * dt_; }

    bool same_layout(const LogPolarGrid& o) const {
        return n_theta_ == o.n_theta_ && n_radial_ == o.n_radial_ &&
               std::abs(t0_ - o.t0_) < 1e-14 && std::abs(t1_ - o.t1_) < 1e-14 &&
               std::abs(spec_.center.x - o.spec_.center.x) < 1e-14 &&
               std::abs(spec_.center.y - o.spec_.center.y) < 1e-14;
    }

  private:
    AnnulusSpec spec_;
    std::size_t n_theta_;
    std::size_t n_radial_;
    int disk_octaves_;
    double t0_ = 0.0, t1_ = 0.0, dt_ = 0.0, dtheta_ = 0.0;
    std::vector<double> t_;
    std::vector<double> rho_;
    std::vector<double> ring_mass_;
};

using GridPtr = std::shared_ptr<const LogPolarGrid>;

inline GridPtr make_grid(AnnulusSpec spec, std::size_t n_theta, std::size_t n_radial,
                         int disk_octaves = LogPolarGrid::kDefaultDiskOctaves) {
    return std::make_shared<const LogPolarGrid>(spec, n_theta, n_radial, disk_octaves);
}

/// Grid sized for a degenerating annulus: fixed angular resolution and a fixed
/// number of radial nodes per octave of conformal modulus.
inline GridPtr make_annulus_grid(double eps, std::size_t n_theta = 256,
                                 std::size_t nodes_per_octave = 64) {
    const double octaves = std::log2(1.0 / eps);
    auto n_radial = static_cast<std::size_t>(std::ceil(octaves * static_cast<double>(nodes_per_octave)));
    n_radial = std::max<std::size_t>(n_radial, 64);
    return make_grid(AnnulusSpec(eps, 1.0), n_theta, n_radial);
}

}  // namespace annulab
