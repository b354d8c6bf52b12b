#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "annulab/grid.hpp"

namespace annulab {

/// Real vector-valued function sampled on a LogPolarGrid. Component count is
/// fixed at construction; values are stored node-major then component:
/// values[(j * n_theta + i) * n_components + c].
class Field {
  public:
    Field(GridPtr grid, std::size_t n_components = 1)
        : grid_(std::move(grid)), n_components_(n_components),
          values_(grid_->n_nodes() * n_components, 0.0) {
        if (n_components_ == 0) throw std::invalid_argument("Field: n_components == 0");
    }

    const LogPolarGrid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    std::size_t n_components() const { return n_components_; }
    std::size_t size() const { return values_.size(); }

    double& at(std::size_t j, std::size_t i, std::size_t c = 0) {
        return values_[(j * grid_->n_theta() + i) * n_components_ + c];
    }
    double at(std::size_t j, std::size_t i, std::size_t c = 0) const {
        return values_[(j * grid_->n_theta() + i) * n_components_ + c];
    }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }

    std::vector<double>& data() { return values_; }
    const std::vector<double>& data() const { return values_; }

    bool all_finite() const {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Pointwise Euclidean norm across components (scalar field on same grid).
    Field pointwise_norm() const {
        Field out(grid_, 1);
        const std::size_t n = grid_->n_nodes();
        for (std::size_t k = 0; k < n; ++k) {
            double s = 0.0;
            for (std::size_t c = 0; c < n_components_; ++c) {
                const double v = values_[k * n_components_ + c];
                s += v * v;
            }
            out[k] = std::sqrt(s);
        }
        return out;
    }

    template <typename F>
    static Field sample(GridPtr grid, F&& f) {  // f(rho, theta) -> double
        Field out(grid, 1);
        for (std::size_t j = 0; j < grid->n_radial(); ++j)
            for (std::size_t i = 0; i < grid->n_theta(); ++i)
                out.at(j, i) = f(grid->rho(j), grid->theta(i));
        return out;
    }

    // -- flat binary container -------------------------------------------------
    //
    // layout (little endian):
    //   u64 magic 'ANBFLD01', f64 r_inner, f64 r_outer, f64 cx, f64 cy,
    //   u64 n_theta, u64 n_radial, u64 n_components, u64 disk_octaves,
    //   then n_radial * n_theta * n_components f64 values, ring-major.

    static constexpr std::uint64_t kMagic = 0x3130444C46424E41ULL;  // "ANBFLD01"

    void write_binary(const std::string& path) const {
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::runtime_error("Field: cannot open " + path);
        auto put_u64 = [&](std::uint64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); };
        auto put_f64 = [&](double v) { os.write(reinterpret_cast<const char*>(&v), 8); };
        put_u64(kMagic);
        put_f64(grid_->spec().r_inner);
        put_f64(grid_->spec().r_outer);
        put_f64(grid_->spec().center.x);
        put_f64(grid_->spec().center.y);
        put_u64(grid_->n_theta());
        put_u64(grid_->n_radial());
        put_u64(n_components_);
        put_u64(static_cast<std::uint64_t>(grid_->disk_octaves()));
        os.write(reinterpret_cast<const char*>(values_.data()),
                 static_cast<std::streamsize>(values_.size() * sizeof(double)));
        if (!os) throw std::runtime_error("Field: short write to " + path);
    }

    static Field read_binary(const std::string& path) {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw std::runtime_error("Field: cannot open " + path);
        auto get_u64 = [&] {
            std::uint64_t v = 0;
            is.read(reinterpret_cast<char*>(&v), 8);
            return v;
        };
        auto get_f64 = [&] {
            double v = 0;
            is.read(reinterpret_cast<char*>(&v), 8);
            return v;
        };
        if (get_u64() != kMagic) throw std::runtime_error("Field: bad magic in " + path);
        const double ri = get_f64(), ro = get_f64(), cx = get_f64(), cy = get_f64();
        const std::uint64_t nt = get_u64(), nr = get_u64(), nc = get_u64(), oct = get_u64();
        if (!is) throw std::runtime_error("Field: truncated header in " + path);
        auto grid = make_grid(AnnulusSpec(ri, ro, {cx, cy}), nt, nr,
                              ri == 0.0 ? static_cast<int>(oct) : LogPolarGrid::kDefaultDiskOctaves);
        Field f(grid, nc);
        is.read(reinterpret_cast<char*>(f.values_.data()),
                static_cast<std::streamsize>(f.values_.size() * sizeof(double)));
        if (!is) throw std::runtime_error("Field: truncated payload in " + path);
        return f;
    }

    /// CSV rows (t, theta, c0, c1, ...) with a header line.
    void write_csv(const std::string& path) const {
        std::ofstream os(path);
        if (!os) throw std::runtime_error("Field: cannot open " + path);
        os << "t,theta";
        for (std::size_t c = 0; c < n_components_; ++c) os << ",c" << c;
        os << "\n";
        char buf[64];
        for (std::size_t j = 0; j < grid_->n_radial(); ++j)
            for (std::size_t i = 0; i < grid_->n_theta(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g", grid_->t(j), grid_->theta(i));
                os << buf;
                for (std::size_t c = 0; c < n_components_; ++c) {
                    std::snprintf(buf, sizeof buf, ",%.17g", at(j, i, c));
                    os << buf;
                }
                os << "\n";
            }
    }

  private:
    GridPtr grid_;
    std::size_t n_components_;
    std::vector<double> values_;
};

inline void require_same_grid(const Field& a, const Field& b) {
    if (!a.grid().same_layout(b.grid()))
        throw std::invalid_argument("fields live on different grids");
}

}  // namespace annulab
