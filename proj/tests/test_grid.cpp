#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "annulab/calculus.hpp"
#include "annulab/field.hpp"
#include "annulab/grid.hpp"

using namespace annulab;

namespace {

Field band_limited_random(GridPtr g, unsigned seed, int max_mode = 6) {
    // random trigonometric polynomial with smooth radial profiles
    std::mt19937_64 rng(seed);
    auto unit = [&] { return 2.0 * (static_cast<double>(rng()) / 1.8446744073709552e19) - 1.0; };
    const int nprof = 3;
    std::vector<double> c(static_cast<std::size_t>((2 * max_mode + 1) * nprof * 2));
    for (auto& v : c) v = unit();
    Field f(g, 1);
    const auto& grid = *g;
    for (std::size_t j = 0; j < grid.n_radial(); ++j) {
        const double s = (grid.t(j) - grid.t0()) / (grid.t1() - grid.t0());
        for (std::size_t i = 0; i < grid.n_theta(); ++i) {
            const double th = grid.theta(i);
            double acc = 0.0;
            std::size_t k = 0;
            for (int n = -max_mode; n <= max_mode; ++n) {
                const double decay = 1.0 / (1.0 + n * n);
                for (int p = 0; p < nprof; ++p) {
                    const double prof = std::sin((1.3 + p) * s + 0.7 * p);
                    acc += decay * prof *
                           (c[k] * std::cos(n * th) + c[k + 1] * std::sin(n * th));
                    k += 2;
                }
            }
            f.at(j, i) = acc;
        }
    }
    return f;
}

}  // namespace

TEST_CASE("cell areas sum to the annulus area") {
    for (double eps : {0.25, 1.0 / 64.0, 1.0 / 1024.0}) {
        auto g = make_grid(AnnulusSpec(eps, 1.0), 128, 128);
        Field one(g, 1);
        for (auto& v : one.data()) v = 1.0;
        const double area = kPi * (1.0 - eps * eps);
        REQUIRE(integrate(one) == Catch::Approx(area).epsilon(1e-12));
    }
    // disk: the truncation hole is folded into the innermost cell
    auto gd = make_grid(AnnulusSpec(0.0, 1.0), 128, 128);
    Field one(gd, 1);
    for (auto& v : one.data()) v = 1.0;
    REQUIRE(integrate(one) == Catch::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("clipped integration") {
    auto g = make_grid(AnnulusSpec(1.0 / 64.0, 1.0), 128, 256);
    Field one(g, 1);
    for (auto& v : one.data()) v = 1.0;
    const double got = integrate(one, AnnulusSpec(0.25, 0.5));
    REQUIRE(got == Catch::Approx(kPi * (0.25 - 0.0625)).epsilon(1e-3));
    REQUIRE_THROWS_AS(integrate(one, AnnulusSpec(1.0 / 128.0, 0.5)), std::invalid_argument);
    REQUIRE_THROWS_AS(integrate(one, AnnulusSpec(0.25, 2.0)), std::invalid_argument);
}

TEST_CASE("gradient of log rho is 1/rho") {
    auto g = make_grid(AnnulusSpec(1.0 / 256.0, 1.0), 64, 256);
    auto f = Field::sample(g, [](double rho, double) { return std::log(rho); });
    auto grad = gradient(f);
    double worst = 0.0;
    for (std::size_t j = 0; j < g->n_radial(); ++j)
        for (std::size_t i = 0; i < g->n_theta(); ++i) {
            const double gx = grad.at(j, i, 0), gy = grad.at(j, i, 1);
            const double mag = std::sqrt(gx * gx + gy * gy);
            worst = std::max(worst, std::abs(mag * g->rho(j) - 1.0));
        }
    REQUIRE(worst <= 1e-8);
}

TEST_CASE("gradient of x is (1,0)") {
    auto g = make_grid(AnnulusSpec(1.0 / 16.0, 1.0), 64, 128);
    auto f = Field::sample(g, [](double rho, double th) { return rho * std::cos(th); });
    auto grad = gradient(f);
    double worst = 0.0;
    for (std::size_t k = 0; k < g->n_nodes(); ++k) {
        worst = std::max(worst, std::abs(grad[2 * k] - 1.0));
        worst = std::max(worst, std::abs(grad[2 * k + 1]));
    }
    REQUIRE(worst <= 1e-6);
}

TEST_CASE("Dirichlet energy of Re z^3") {
    // |grad Re z^n|^2 = n^2 rho^(2n-2); integrating over B_1 \ B_eps gives
    // pi n (1 - eps^(2n)).  n = 3, eps = 1/16.
    auto g = make_grid(AnnulusSpec(1.0 / 16.0, 1.0), 64, 4096);
    auto f = Field::sample(g, [](double rho, double th) { return std::pow(rho, 3) * std::cos(3 * th); });
    const double expect = 3.0 * kPi * (1.0 - std::pow(16.0, -6.0));
    REQUIRE(dirichlet_energy(f) == Catch::Approx(expect).epsilon(1e-6));
}

TEST_CASE("energy of grad log over a degenerating annulus") {
    const double eps = std::pow(2.0, -10);
    auto g = make_annulus_grid(eps, 128, 64);
    auto f = Field::sample(g, [](double rho, double) { return std::log(rho); });
    REQUIRE(dirichlet_energy(f) == Catch::Approx(2.0 * kPi * std::log(1.0 / eps)).epsilon(1e-4));
}

TEST_CASE("angular radial split") {
    auto g = make_grid(AnnulusSpec(0.125, 1.0), 64, 128);

    SECTION("log rho is purely radial") {
        auto f = Field::sample(g, [](double rho, double) { return std::log(rho); });
        auto [radial, angular] = angular_radial_split(f);
        for (std::size_t k = 0; k < g->n_nodes(); ++k) REQUIRE(std::abs(angular[k]) < 1e-12);
    }

    SECTION("conformal monomial splits evenly") {
        auto gf = make_grid(AnnulusSpec(0.125, 1.0), 64, 256);
        auto f = Field::sample(gf, [](double rho, double th) { return rho * std::cos(th); });
        auto [radial, angular] = angular_radial_split(f);
        Field r2(gf, 1), a2(gf, 1);
        for (std::size_t k = 0; k < gf->n_nodes(); ++k) {
            r2[k] = radial[k] * radial[k];
            a2[k] = angular[k] * angular[k];
        }
        REQUIRE(integrate(r2) == Catch::Approx(integrate(a2)).epsilon(1e-8));
    }

    SECTION("pointwise Pythagoras against the Cartesian gradient") {
        auto f = band_limited_random(g, 7);
        auto [radial, angular] = angular_radial_split(f);
        auto grad = gradient(f);
        for (std::size_t k = 0; k < g->n_nodes(); ++k) {
            const double lhs = radial[k] * radial[k] + angular[k] * angular[k];
            const double rhs = grad[2 * k] * grad[2 * k] + grad[2 * k + 1] * grad[2 * k + 1];
            REQUIRE(lhs == Catch::Approx(rhs).margin(1e-10 * (1.0 + rhs)));
        }
    }

    SECTION("disk grids are rejected") {
        auto gd = make_grid(AnnulusSpec(0.0, 1.0), 64, 128);
        auto f = Field::sample(gd, [](double rho, double) { return rho; });
        REQUIRE_THROWS_AS(angular_radial_split(f), std::invalid_argument);
    }
}

TEST_CASE("spectral gradient matches 2nd-order differences under refinement") {
    // observed order of the mismatch must be >= 1.9 (the 2nd-order side dominates)
    auto mismatch = [](std::size_t n_radial, unsigned seed) {
        auto g = make_grid(AnnulusSpec(0.25, 1.0), 64, n_radial);
        auto f = band_limited_random(g, seed);
        auto grad = gradient(f);
        // 2nd-order central differences in t, one-sided at the ends
        double worst = 0.0;
        for (std::size_t i = 0; i < g->n_theta(); ++i) {
            for (std::size_t j = 1; j + 1 < g->n_radial(); ++j) {
                const double dfdt = (f.at(j + 1, i) - f.at(j - 1, i)) / (2.0 * g->dt());
                const double radial = dfdt / g->rho(j);
                const double ct = std::cos(g->theta(i)), st = std::sin(g->theta(i));
                // project the spectral gradient back onto the radial direction
                const double rad_spec = ct * grad.at(j, i, 0) + st * grad.at(j, i, 1);
                worst = std::max(worst, std::abs(rad_spec - radial));
            }
        }
        return worst;
    };
    double orders = 0.0;
    int cnt = 0;
    for (unsigned seed = 0; seed < 20; ++seed) {
        const double c = mismatch(65, seed);
        const double fine = mismatch(129, seed);
        orders += std::log2(c / fine);
        ++cnt;
    }
    REQUIRE(orders / cnt >= 1.9);
}

TEST_CASE("restrict_extend") {
    auto g = make_grid(AnnulusSpec(1.0 / 32.0, 1.0), 64, 256);

    SECTION("identity resampling is exact at shared nodes") {
        auto f = band_limited_random(g, 3);
        auto r = restrict_extend(f, g);
        for (std::size_t k = 0; k < g->n_nodes(); ++k)
            REQUIRE(r.field[k] == Catch::Approx(f[k]).margin(1e-6));
    }

    SECTION("log field agrees on the overlap after extension") {
        auto f = Field::sample(g, [](double rho, double) { return std::log(rho); });
        auto target = make_grid(AnnulusSpec(0.0, 1.0), 64, 256, 5);
        auto r = restrict_extend(f, target);
        for (std::size_t j = 0; j < target->n_radial(); ++j) {
            if (target->t(j) < g->t0() - 1e-14) continue;
            for (std::size_t i = 0; i < target->n_theta(); ++i)
                REQUIRE(r.field.at(j, i) == Catch::Approx(std::log(target->rho(j))).margin(1e-9));
        }
    }

    SECTION("reflection energy ratio stays below 4") {
        auto target = make_grid(AnnulusSpec(0.0, 1.0), 64, 320, 7);
        for (unsigned seed = 0; seed < 50; ++seed) {
            auto f = band_limited_random(g, 100 + seed);
            auto r = restrict_extend(f, target);
            REQUIRE(r.energy_ratio <= 4.0);
        }
    }

    SECTION("extension beyond one reflected period is rejected") {
        auto f = band_limited_random(g, 5);
        auto shallow = make_grid(AnnulusSpec(1.0 / 4.0, 1.0), 64, 64);
        auto fshallow = band_limited_random(shallow, 6);
        auto deep = make_grid(AnnulusSpec(0.0, 1.0), 64, 256, 10);
        REQUIRE_THROWS_AS(restrict_extend(fshallow, deep), std::invalid_argument);
    }
}

TEST_CASE("field binary round trip") {
    auto g = make_grid(AnnulusSpec(0.5, 2.0, {0.25, -1.0}), 32, 16);
    Field f(g, 3);
    std::mt19937_64 rng(11);
    for (auto& v : f.data()) v = static_cast<double>(rng()) / 1e19 - 0.9;
    const std::string path = "round_trip_field.bin";
    f.write_binary(path);
    auto back = Field::read_binary(path);
    REQUIRE(back.n_components() == 3);
    REQUIRE(back.grid().n_theta() == 32);
    REQUIRE(back.grid().spec().r_inner == 0.5);
    REQUIRE(back.grid().spec().center.y == -1.0);
    for (std::size_t k = 0; k < f.size(); ++k) REQUIRE(back[k] == f[k]);
    std::remove(path.c_str());
}
