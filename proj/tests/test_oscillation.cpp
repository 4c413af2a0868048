#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "garo/oscillation.hpp"
#include "oracles.hpp"

using namespace garo;

namespace {
GridFunction random_grid(std::mt19937_64& rng, int dim, int N, bool ties) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> k(0, 3);
    std::size_t count = 1;
    for (int i = 0; i < dim; ++i) count *= N;
    std::vector<double> v(count);
    for (auto& x : v) x = ties ? k(rng) : u(rng);
    return GridFunction(dim, N, 1.0, v);
}
const GridFunction kHalf(1, 2, 1.0, {1, 0});
const GridFunction kSteps(1, 4, 1.0, {0, 0, 4, 4});
}  // namespace

TEST_CASE("mean oscillation") {
    CHECK(mean_oscillation(kHalf, kHalf.whole_cube()) == doctest::Approx(0.5));
    CHECK(mean_oscillation(GridFunction::constant(2, 4, 1.0, 2.0), Cube{{1, 1, 0}, 3}) == 0.0);
    CHECK(mean_oscillation(kSteps, kSteps.whole_cube()) == doctest::Approx(2.0));
    CHECK(q_mean_oscillation(kSteps, kSteps.whole_cube(), 1.0) == doctest::Approx(2.0));
    CHECK(q_mean_oscillation(kSteps, kSteps.whole_cube(), 3.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(q_mean_oscillation(kSteps, kSteps.whole_cube(), 0.5), std::invalid_argument);
}

TEST_CASE("double oscillation") {
    CHECK(double_oscillation(kHalf, kHalf.whole_cube()) == doctest::Approx(0.5));
    CHECK(double_oscillation(GridFunction::constant(1, 8, 1.0, -1.5), Cube{{2, 0, 0}, 4}) == 0.0);
    CHECK(double_oscillation(GridFunction(1, 2, 1.0, {0, 1}), Cube{{0, 0, 0}, 2}) == doctest::Approx(0.5));

    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 30; ++rep) {
        const auto f = random_grid(rng, 1 + rep % 2, 6, rep % 3 == 0);
        for (const auto& q : enumerate_subcubes(f, CubeFamily::all_grid)) {
            CHECK(double_oscillation(f, q) == doctest::Approx(oracle::double_osc(f, q)).epsilon(1e-12));
            CHECK(mean_oscillation(f, q) == doctest::Approx(oracle::mean_osc(f, q)).epsilon(1e-12));
        }
    }
}

TEST_CASE("cube stats serial and parallel agree with direct evaluation") {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 12; ++rep) {
        const int dim = 1 + rep % 2;
        const auto f = random_grid(rng, dim, dim == 1 ? 32 : 8, rep % 4 == 0);
        for (auto family : {CubeFamily::all_grid, CubeFamily::dyadic}) {
            const auto s = cube_stats(f, family, Exec::serial);
            const auto p = cube_stats(f, family, Exec::parallel);
            REQUIRE(s.size() == p.size());
            for (std::size_t i = 0; i < s.size(); ++i) {
                CHECK(s.cubes[i] == p.cubes[i]);
                const double scale = std::max(1.0, s.double_osc[i]);
                CHECK(std::fabs(s.double_osc[i] - p.double_osc[i]) <= 1e-12 * scale);
                CHECK(std::fabs(s.mean_osc[i] - p.mean_osc[i]) <= 1e-12 * std::max(1.0, s.mean_osc[i]));
                CHECK(s.mean[i] == doctest::Approx(mean(f, s.cubes[i])).epsilon(1e-12));
                CHECK(s.double_osc[i] == doctest::Approx(oracle::double_osc(f, s.cubes[i])).epsilon(1e-11));
            }
        }
    }
}

TEST_CASE("cube means and q oscillation") {
    std::mt19937_64 rng(3);
    const auto f = random_grid(rng, 1, 20, false);
    const auto cubes = enumerate_subcubes(f, CubeFamily::all_grid);
    const auto m = cube_means(f, CubeFamily::all_grid, cubes);
    const auto q = cube_q_oscillation(f, cubes, 2.0);
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        CHECK(m[i] == doctest::Approx(mean(f, cubes[i])).epsilon(1e-12));
        CHECK(q[i] == doctest::Approx(q_mean_oscillation(f, cubes[i], 2.0)).epsilon(1e-12));
        // Jensen: the L2 mean oscillation dominates the L1 one.
        CHECK(q[i] >= mean_oscillation(f, cubes[i]) - 1e-14);
    }
}

TEST_CASE("bmo norms") {
    CHECK(bmo_norm_classic(GridFunction::constant(1, 8, 1.0, 3.0), CubeFamily::all_grid).value == 0.0);
    CHECK(bmo_norm_star(GridFunction::constant(2, 4, 1.0, 3.0), CubeFamily::dyadic).value == 0.0);
    CHECK(bmo_norm_classic(kHalf, CubeFamily::all_grid).value == doctest::Approx(0.5));
    CHECK(bmo_norm_classic(kSteps, CubeFamily::all_grid).value == doctest::Approx(2.0));
    CHECK(bmo_norm_star(kHalf, CubeFamily::all_grid).value == doctest::Approx(0.5));

    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 40; ++rep) {
        const int dim = 1 + rep % 2;
        const auto f = random_grid(rng, dim, dim == 1 ? 16 : 4, rep % 3 == 0);
        for (auto family : {CubeFamily::all_grid, CubeFamily::dyadic}) {
            const double c = bmo_norm_classic(f, family).value;
            const double s = bmo_norm_star(f, family).value;
            CHECK(c <= s * (1 + 1e-12));
            CHECK(s <= 2 * c * (1 + 1e-12));
        }
        // Dyadic cubes are a subfamily.
        CHECK(bmo_norm_star(f, CubeFamily::dyadic).value <= bmo_norm_star(f, CubeFamily::all_grid).value * (1 + 1e-12));
    }
}

TEST_CASE("sharp maximal function") {
    const GridFunction f(1, 2, 1.0, {0, 1});
    for (double beta : {0.0, 1.0}) {
        const auto s = sharp_maximal(f, beta);
        CHECK(s[0] == doctest::Approx(0.5));
        CHECK(s[1] == doctest::Approx(0.5));
    }
    const auto z = sharp_maximal(GridFunction::constant(2, 4, 1.0, 7.0), 0.5, CubeFamily::dyadic);
    for (double v : z.values()) CHECK(v == 0.0);
}

TEST_CASE("hardy littlewood maximal function") {
    const auto m = hl_maximal(GridFunction(1, 2, 1.0, {0, 1}));
    CHECK(m[0] == doctest::Approx(0.5));
    CHECK(m[1] == doctest::Approx(1.0));
    const auto c = hl_maximal(GridFunction::constant(2, 4, 1.0, 2.5), CubeFamily::dyadic);
    for (double v : c.values()) CHECK(v == doctest::Approx(2.5));
}

TEST_CASE("maximal functions against brute force, serial and parallel") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 16; ++rep) {
        const int dim = 1 + rep % 2;
        const auto f = random_grid(rng, dim, dim == 1 ? 32 : 8, rep % 4 == 1);
        for (auto family : {CubeFamily::all_grid, CubeFamily::dyadic}) {
            const auto cubes = enumerate_subcubes(f, family);
            std::vector<double> sharp(f.cell_count(), 0.0), hl(f.cell_count(), 0.0);
            for (const auto& q : cubes) {
                const double w = std::pow(cube_measure(f, q), -1.0 / dim) * oracle::mean_osc(f, q);
                const double a = mean(f.abs(), q);
                for (auto c : cube_cells(f, q)) {
                    sharp[c] = std::max(sharp[c], w);
                    hl[c] = std::max(hl[c], a);
                }
            }
            for (auto exec : {Exec::serial, Exec::parallel}) {
                const auto s = sharp_maximal(f, 1.0 / dim, family, exec);
                const auto m = hl_maximal(f, family, exec);
                for (std::size_t c = 0; c < f.cell_count(); ++c) {
                    CHECK(s[c] == doctest::Approx(sharp[c]).epsilon(1e-12));
                    CHECK(m[c] == doctest::Approx(hl[c]).epsilon(1e-12));
                    CHECK(m[c] >= std::fabs(f[c]) - 1e-15);
                }
            }
        }
    }
}

TEST_CASE("cellwise sup") {
    const GridFunction f(1, 4, 1.0, {0, 0, 0, 0});
    const auto cubes = enumerate_subcubes(f, CubeFamily::all_grid);
    std::vector<double> w(cubes.size(), -1.0);
    w[interval_index(4, 1, 2)] = 3.0;
    for (auto exec : {Exec::serial, Exec::parallel}) {
        const auto s = cellwise_sup(f, CubeFamily::all_grid, cubes, w, exec);
        CHECK(s == std::vector<double>{0, 3, 3, 0});
    }
}
