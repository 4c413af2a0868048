#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "garo/rearrange.hpp"
#include "oracles.hpp"

using namespace garo;

namespace {
StepRearrangement steps(std::vector<Plateau> p) {
    StepRearrangement r;
    for (const auto& x : p) r.total_measure += x.measure;
    r.plateaus = std::move(p);
    return r;
}
const StepRearrangement kThree = steps({{3, 1.0 / 3}, {2, 1.0 / 3}, {1, 1.0 / 3}});

GridFunction random_line(std::mt19937_64& rng, int N, bool ties) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> k(-2, 2);
    std::vector<double> v(N);
    for (auto& x : v) x = ties ? k(rng) : u(rng);
    return GridFunction(1, N, 1.0, v);
}
}  // namespace

TEST_CASE("rearrangement plateaus") {
    const auto r = rearrangement(GridFunction(1, 3, 1.0, {3, 1, 2}));
    REQUIRE(r.plateaus.size() == 3);
    CHECK(r.plateaus[0].value == 3);
    CHECK(r.plateaus[2].value == 1);
    CHECK(r.plateaus[1].measure == doctest::Approx(1.0 / 3));

    const auto c = rearrangement(GridFunction::constant(1, 5, 2.0, 5.0));
    REQUIRE(c.plateaus.size() == 1);
    CHECK(c.plateaus[0].value == 5);
    CHECK(c.plateaus[0].measure == doctest::Approx(2.0));

    const auto a = rearrangement(GridFunction(1, 2, 1.0, {-4, 1}));
    CHECK(a.plateaus[0].value == 4);
    CHECK(a.plateaus[1].value == 1);

    const auto raw = rearrangement(GridFunction(1, 2, 1.0, {-4, 1}), RearrangeMode::raw);
    CHECK(raw.plateaus[0].value == 1);
    CHECK(raw.plateaus[1].value == -4);
}

TEST_CASE("eval star and average") {
    CHECK(eval_star(kThree, 0.5) == 2);
    CHECK(eval_star(kThree, 1.0 / 3) == 3);
    CHECK(eval_star(kThree, 1.0) == 1);
    CHECK(eval_avg(kThree, 2.0 / 3) == doctest::Approx(2.5));
    CHECK(eval_avg(steps({{5, 1}}), 0.3) == doctest::Approx(5));
    CHECK(eval_avg(steps({{1, 1}}), 0.25) == doctest::Approx(1));
    CHECK_THROWS_AS(eval_star(kThree, 0.0), std::out_of_range);
    CHECK_THROWS_AS(eval_avg(kThree, 1.5), std::out_of_range);
}

TEST_CASE("weak lorentz norm") {
    CHECK(weak_lorentz_norm(kThree, 2.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(weak_lorentz_norm(steps({{0, 1}}), 2.0) == 0.0);
    CHECK(weak_lorentz_norm(steps({{1, 0.36}}), 2.0) == doctest::Approx(0.6));
    CHECK(weak_lorentz_norm(kThree, kInf) == 3.0);
    CHECK_THROWS_AS(weak_lorentz_norm(kThree, 1.0), std::invalid_argument);
}

TEST_CASE("weak oscillation norm") {
    CHECK(weak_oscillation_norm(steps({{4, 1}}), 2.0) == 0.0);
    const auto half = steps({{1, 0.5}, {0, 0.5}});
    // f** - f* = (1/2)/t just right of t = 1/2, so the supremum is 1 at p = inf.
    CHECK(weak_oscillation_norm(half, kInf) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(weak_oscillation_norm(half, 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    const auto dense = oracle::dense_sup(1.0, 0.5, [&](double t) { return eval_avg(half, t) - eval_star(half, t); });
    CHECK(dense == doctest::Approx(std::sqrt(0.5)).epsilon(1e-4));
    const auto dense_inf = oracle::dense_sup(1.0, 0.0, [&](double t) { return eval_avg(half, t) - eval_star(half, t); });
    CHECK(dense_inf == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("dense-t oracle for the sup functionals") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const auto f = random_line(rng, 12, rep % 2 == 0);
        const auto r = rearrangement(f);
        for (double p : {1.5, 3.0}) {
            const double a = 1.0 / p;
            const double wl = oracle::dense_sup(1.0, a, [&](double t) { return eval_star(r, t); }, 60000);
            const double wa = oracle::dense_sup(1.0, a, [&](double t) { return eval_avg(r, t); }, 60000);
            CHECK(weak_lorentz_norm(r, p) >= wl - 1e-12);
            CHECK(weak_lorentz_norm(r, p) == doctest::Approx(wl).epsilon(2e-4));
            // Left limits at cell ends: t^{1/p} f*(t) peaks just before each drop.
            std::vector<double> mags;
            for (double x : f.values()) mags.push_back(std::fabs(x));
            std::sort(mags.rbegin(), mags.rend());
            double exact = 0.0;
            for (std::size_t i = 0; i < mags.size(); ++i)
                exact = std::max(exact, mags[i] * std::pow((i + 1.0) / mags.size(), a));
            CHECK(weak_lorentz_norm(r, p) == doctest::Approx(exact).epsilon(1e-12));
            CHECK(weak_average_norm(r, p) == doctest::Approx(wa).epsilon(1e-9));
            // The gap supremum is approached from the right of a breakpoint.
            const double wo = oracle::dense_sup(1.0, a, [&](double t) { return eval_avg(r, t) - eval_star(r, t); }, 60000);
            CHECK(weak_oscillation_norm(r, p) >= wo - 1e-12);
            CHECK(weak_oscillation_norm(r, p) == doctest::Approx(wo).epsilon(2e-4));
        }
    }
}

TEST_CASE("reconstruction identity") {
    CHECK(reconstruct_avg(steps({{1, 1}}), 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(reconstruct_avg(steps({{0, 1}}), 0.5) == 0.0);
    CHECK(reconstruct_avg(kThree, 2.0 / 3) == doctest::Approx(2.5).epsilon(1e-12));

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const auto f = random_line(rng, 9, rep % 3 == 0);
        const auto r = rearrangement(f.shifted(-mean(f)));
        const auto b = profile(r);
        for (std::size_t k = 1; k < b.breakpoints.size(); ++k)
            CHECK(reconstruct_avg(r, b.breakpoints[k]) ==
                  doctest::Approx(eval_avg(r, b.breakpoints[k])).epsilon(1e-9));
        for (int i = 0; i < 20; ++i) {
            const double t = 1.0 - u(rng);
            CHECK(reconstruct_avg(r, t) == doctest::Approx(eval_avg(r, t)).epsilon(1e-9));
        }
    }
}

TEST_CASE("reconstruction matches quadrature") {
    const double t = 0.5;
    CHECK(reconstruct_avg(kThree, t) == doctest::Approx(oracle::avg_quadrature(kThree, t)).epsilon(1e-6));
    const auto r = steps({{2.5, 0.2}, {1.0, 0.3}, {0.25, 0.5}});
    for (double s : {0.1, 0.35, 0.8, 1.0})
        CHECK(reconstruct_avg(r, s) == doctest::Approx(oracle::avg_quadrature(r, s)).epsilon(1e-6));
}

TEST_CASE("k functional") {
    CHECK(k_functional(kThree, 2.0 / 3) == doctest::Approx(5.0 / 3));
    CHECK(k_functional(kThree, 1.0) == doctest::Approx(l1_norm(kThree)));
    CHECK(k_functional(kThree, 7.0) == doctest::Approx(2.0));
    CHECK(k_functional(steps({{0, 1}}), 0.4) == 0.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.5);
    for (int rep = 0; rep < 40; ++rep) {
        const auto r = rearrangement(random_line(rng, 10, rep % 2 == 1));
        for (int i = 0; i < 25; ++i) {
            const double t = 1e-3 + u(rng);
            CHECK(k_functional(r, t) == doctest::Approx(k_functional_by_truncation(r, t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("properties of f* and f**") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 30; ++rep) {
        const auto f = random_line(rng, 16, rep % 2 == 0);
        const auto r = rearrangement(f);
        const auto b = profile(r);
        // Equimeasurability: same L1 norm.
        double l1 = 0.0;
        for (double v : f.values()) l1 += std::fabs(v) * f.cell_measure();
        CHECK(l1_norm(r) == doctest::Approx(l1).epsilon(1e-12));
        for (std::size_t k = 1; k < r.plateaus.size(); ++k) CHECK(r.plateaus[k].value < r.plateaus[k - 1].value);
        double prev_avg = kInf;
        for (int i = 1; i <= 64; ++i) {
            const double t = i / 64.0;
            const double s = eval_star(r, t), a = eval_avg(r, t);
            CHECK(a >= s - 1e-15);
            CHECK(a <= prev_avg + 1e-15);
            CHECK(s == oracle::star(f, t));
            prev_avg = a;
            // t (f** - f*) is the gap mass of the piece.
            CHECK(t * (a - s) == doctest::Approx(b.gap_mass(b.piece_of(t))).epsilon(1e-12));
        }
        // Homogeneity of the weak functionals.
        const auto r2 = rearrangement(f.scaled(-3.0));
        CHECK(weak_lorentz_norm(r2, 2.0) == doctest::Approx(3.0 * weak_lorentz_norm(r, 2.0)).epsilon(1e-12));
        CHECK(weak_oscillation_norm(r2, 4.0) == doctest::Approx(3.0 * weak_oscillation_norm(r, 4.0)).epsilon(1e-12));
    }
}
