#include "garo/sobolev.hpp"

#include <algorithm>
#include <cmath>

namespace garo {

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::reported: return "reported";
    }
    return "?";
}

const InequalityRecord& ChainReport::item(const std::string& name) const {
    for (const auto& it : items)
        if (it.name == name) return it;
    throw std::out_of_range("no chain item named " + name);
}

bool ChainReport::all_pass() const {
    return std::none_of(items.begin(), items.end(), [](const auto& it) { return it.status == CheckStatus::fail; });
}

double slack_of(double lhs, double rhs) { return lhs == 0.0 ? kInf : rhs / lhs; }

InequalityRecord exact_check(std::string name, double lhs, double rhs, double tol) {
    InequalityRecord r{std::move(name), lhs, rhs, slack_of(lhs, rhs), CheckStatus::fail, std::nullopt};
    if (lhs <= rhs * (1.0 + tol)) r.status = CheckStatus::pass;
    return r;
}

InequalityRecord reported_check(std::string name, double lhs, double rhs) {
    return {std::move(name), lhs, rhs, slack_of(lhs, rhs), CheckStatus::reported, std::nullopt};
}

namespace {

InequalityRecord identity_check(std::string name, double lhs, double rhs, double tol) {
    InequalityRecord r{std::move(name), lhs, rhs, slack_of(lhs, rhs), CheckStatus::fail, std::nullopt};
    if (std::fabs(lhs - rhs) <= tol * std::max(std::fabs(lhs), std::fabs(rhs))) r.status = CheckStatus::pass;
    return r;
}

void require_same_grid(const GridFunction& f, const GridFunction& g) {
    if (f.dim() != g.dim() || f.cells_per_axis() != g.cells_per_axis() || f.side() != g.side())
        throw std::invalid_argument("f and g must live on the same grid");
}

CubeFamily cube_family_of(NormFamily family) {
    return family == NormFamily::dyadic ? CubeFamily::dyadic : CubeFamily::all_grid;
}

void require_covering_fit(const GradientPair& pair, NormFamily family) {
    // Packing cubes must be among the cubes the constant was fitted on.
    if (pair.family == CubeFamily::dyadic && family != NormFamily::dyadic)
        throw std::invalid_argument("constant fitted on dyadic cubes cannot control all_grid packings");
}

}  // namespace

GradientPair fit_upper_gradient_constant(const GridFunction& f, const GridFunction& g, double p,
                                         CubeFamily family, double q, Exec exec) {
    require_same_grid(f, g);
    if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("gradient exponent p must be finite and >= 1");
    if (!(q >= 1.0) || std::isinf(q)) throw std::invalid_argument("oscillation exponent q must be finite and >= 1");
    for (double v : g.values())
        if (v < 0.0) throw std::invalid_argument("upper gradient must be nonnegative");

    const double inv_n = 1.0 / f.dim();
    std::vector<Cube> cubes;
    std::vector<double> osc, measure;
    if (q == 1.0) {
        auto st = cube_stats(f, family, exec);
        cubes = std::move(st.cubes);
        osc = std::move(st.mean_osc);
        measure = std::move(st.measure);
    } else {
        cubes = enumerate_subcubes(f, family);
        osc = cube_q_oscillation(f, cubes, q, exec);
        measure.resize(cubes.size());
        for (std::size_t i = 0; i < cubes.size(); ++i) measure[i] = cube_measure(f, cubes[i]);
    }
    std::vector<double> gp(g.values().begin(), g.values().end());
    if (p != 1.0)
        for (double& x : gp) x = std::pow(x, p);
    const auto gmean = cube_means(g.with_values(std::move(gp)), family, cubes, exec);

    GradientPair pair{f, g, p, q, family, 0.0, cubes.empty() ? Cube{} : cubes.front()};
    for (std::size_t i = 0; i < cubes.size(); ++i) {
        if (osc[i] == 0.0) continue;
        const double denom = std::pow(measure[i], inv_n) * std::pow(gmean[i], 1.0 / p);
        if (denom == 0.0) throw InfiniteConstant("upper gradient vanishes on a cube where f oscillates", cubes[i]);
        const double ratio = osc[i] / denom;
        if (ratio > pair.c_f) {
            pair.c_f = ratio;
            pair.witness = cubes[i];
        }
    }
    return pair;
}

double lp_norm(const GridFunction& g, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : g.values()) m = std::max(m, std::fabs(v));
        return m;
    }
    double s = 0.0;
    for (double v : g.values()) s += std::pow(std::fabs(v), p);
    return std::pow(s * g.cell_measure(), 1.0 / p);
}

double sobolev_conjugate(double p, int n) {
    if (!(p >= 1.0) || !(p < n)) throw std::invalid_argument("Sobolev conjugate needs 1 <= p < n");
    const double p_star = n * p / (n - p);
    const double expected = 1.0 / p - 1.0 / n;
    if (std::fabs(1.0 / p_star - expected) > 1e-14 * std::max(1.0, expected))
        throw std::logic_error("Sobolev conjugate arithmetic drifted");
    return p_star;
}

double weak_vs_garo_constant(int n, double p) {
    const double inv_conj = 1.0 - 1.0 / p;
    return p * (std::pow(2.0, n * inv_conj + 1.0) + std::pow(4.0, inv_conj));
}

ChainReport poincare_chain_subcritical(const GradientPair& pair, NormFamily family) {
    const int n = pair.f.dim();
    if (pair.q != 1.0) throw std::invalid_argument("subcritical chain needs an S_p pair (q = 1)");
    if (!(pair.p > 1.0 && pair.p < n)) throw std::invalid_argument("subcritical chain needs 1 < p < n");
    require_covering_fit(pair, family);
    const double p_star = sobolev_conjugate(pair.p, n);

    ChainReport rep;
    const double g_norm = lp_norm(pair.g, pair.p);
    const double bound = 2.0 * pair.c_f * g_norm;

    const auto centered = pair.f.shifted(-mean(pair.f));
    const auto raw = PackingEngine(pair.f, family).garo(p_star);
    const auto cen = PackingEngine(centered, family).garo(p_star);

    auto a = exact_check("garo", raw.value, bound);
    a.witness = raw.witness.cubes.empty() ? std::nullopt : std::optional<Cube>(raw.witness.cubes.front());
    rep.items.push_back(a);
    rep.items.push_back(exact_check("garo_centered", cen.value, bound));

    const double weak = weak_lorentz_norm(rearrangement(centered), p_star);
    const double c_np = weak_vs_garo_constant(n, p_star);
    rep.items.push_back(reported_check("weak_from_garo", weak, c_np * cen.value));

    rep.values = {{"p_star", p_star}, {"c_f", pair.c_f}, {"g_norm", g_norm}, {"weak_constant", c_np}};
    return rep;
}

ChainReport poincare_chain_critical(const GradientPair& pair, NormFamily family) {
    const int n = pair.f.dim();
    if (pair.q != 1.0) throw std::invalid_argument("critical chain needs an S_p pair (q = 1)");
    if (n < 2 || std::fabs(pair.p - n) > 1e-12) throw std::invalid_argument("critical chain needs p = n >= 2");
    require_covering_fit(pair, family);

    ChainReport rep;
    const double g_norm = lp_norm(pair.g, pair.p);
    const auto centered = pair.f.shifted(-mean(pair.f));
    const auto garo_inf = PackingEngine(centered, family).garo(kInf);
    const auto star = bmo_norm_star(centered, cube_family_of(family));

    auto a = exact_check("garo_inf", garo_inf.value, 2.0 * pair.c_f * g_norm);
    a.witness = star.witness;
    rep.items.push_back(a);
    rep.items.push_back(identity_check("bmo_identity", garo_inf.value, star.value, kExactTolerance));
    rep.values = {{"c_f", pair.c_f}, {"g_norm", g_norm}, {"bmo_star", star.value}};
    return rep;
}

std::vector<double> rearrangement_sample_points(const BreakpointProfile& b, double cell, double limit,
                                                int log_samples) {
    std::vector<double> pts;
    for (std::size_t k = 1; k < b.breakpoints.size(); ++k)
        if (b.breakpoints[k] < limit) pts.push_back(b.breakpoints[k]);
    if (log_samples > 1 && cell < limit) {
        const double ratio = limit / cell;
        for (int i = 0; i < log_samples; ++i) {
            const double t = cell * std::pow(ratio, static_cast<double>(i) / (log_samples - 1));
            const double snapped = std::max(1.0, std::floor(t / cell * (1.0 + 1e-12))) * cell;
            if (snapped < limit) pts.push_back(snapped);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [&](double x, double y) { return std::fabs(x - y) <= 1e-12 * cell; }),
              pts.end());
    return pts;
}

namespace {

// f*(t) and f**(t) for t in (0, total].
struct StarPair {
    double star, avg;
};

StarPair star_pair(const BreakpointProfile& b, double t) {
    const std::size_t k = b.piece_of(t);
    return {b.values[k], (b.partial_integrals[k] + b.values[k] * (t - b.breakpoints[k])) / t};
}

double k_value(const BreakpointProfile& b, double t) {
    const std::size_t k = b.piece_of(t);
    return b.partial_integrals[k] + b.values[k] * (t - b.breakpoints[k]);
}

}  // namespace

ChainReport gradient_rearrangement_check(const GradientPair& pair, int log_samples) {
    if (pair.p != 1.0 || pair.q != 1.0) throw std::invalid_argument("gradient rearrangement check needs an S_1 pair");
    const int n = pair.f.dim();
    const double inv_n = 1.0 / n;
    const auto fb = profile(rearrangement(pair.f));
    const auto gb = profile(rearrangement(pair.g));
    const double limit = pair.f.total_measure() / 2.0;
    const double cell = pair.f.cell_measure();

    auto pts = rearrangement_sample_points(fb, cell, limit, log_samples);
    for (std::size_t k = 1; k < gb.breakpoints.size(); ++k)
        if (gb.breakpoints[k] < limit) pts.push_back(gb.breakpoints[k]);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    ChainReport rep;
    double c_hat = 0.0, lhs_at = 0.0, rhs_at = 0.0, t_at = 0.0;
    for (double t : pts) {
        const auto fs = star_pair(fb, t);
        const double lhs = std::max(0.0, fs.avg - fs.star);
        const double rhs = std::pow(t, inv_n) * star_pair(gb, t).avg;
        if (lhs == 0.0) continue;
        const double ratio = rhs > 0.0 ? lhs / rhs : kInf;
        if (ratio > c_hat) {
            c_hat = ratio;
            lhs_at = lhs;
            rhs_at = rhs;
            t_at = t;
        }
    }

    // Exact supremum of the step model on (0, limit): on every piece between consecutive
    // breakpoints of f* and g*, the ratio D / (t^{1/n} K_g(t)) decreases, so it peaks just
    // right of a breakpoint.
    std::vector<double> left(fb.breakpoints.begin(), fb.breakpoints.end() - 1);
    left.insert(left.end(), gb.breakpoints.begin(), gb.breakpoints.end() - 1);
    std::sort(left.begin(), left.end());
    double c_sup = 0.0;
    for (double a : left) {
        if (!(a > 0.0) || a >= limit) continue;
        // Piece of f just right of a.
        const std::size_t k = std::upper_bound(fb.breakpoints.begin(), fb.breakpoints.end(), a) -
                              fb.breakpoints.begin() - 1;
        const double gap = std::max(0.0, fb.gap_mass(std::min(k, fb.piece_count() - 1)));
        if (gap == 0.0) continue;
        const double denom = std::pow(a, inv_n) * k_value(gb, a);
        c_sup = std::max(c_sup, denom > 0.0 ? gap / denom : kInf);
    }

    auto item = reported_check("rearranged_gradient", lhs_at, rhs_at);
    rep.items.push_back(item);
    rep.values = {{"c_hat", c_hat}, {"c_hat_sup", c_sup}, {"t_star", t_at},
                  {"samples", static_cast<double>(pts.size())}, {"c_f", pair.c_f}};
    return rep;
}

ChainReport weak_gn_check(const GradientPair& pair) {
    if (pair.p != 1.0 || pair.q != 1.0) throw std::invalid_argument("weak Gagliardo-Nirenberg check needs an S_1 pair");
    const int n = pair.f.dim();
    const double n_conj = n == 1 ? kInf : static_cast<double>(n) / (n - 1);
    const double volume = pair.f.total_measure();
    const auto centered = pair.f.shifted(-mean(pair.f));
    const auto rc = rearrangement(centered);
    const double weak_osc = weak_oscillation_norm(rc, n_conj);
    const double weak_norm = weak_lorentz_norm(rc, n_conj);
    const double g1 = lp_norm(pair.g, 1.0);
    const double f1 = l1_norm(rc);

    ChainReport rep;
    rep.items.push_back(exact_check("l1_absorption", f1, pair.c_f * std::pow(volume, 1.0 / n) * g1));
    rep.items.push_back(reported_check("weak_gn", weak_norm, g1));

    const double c_n = weak_norm == 0.0 ? 0.0 : (g1 > 0.0 ? weak_norm / g1 : kInf);
    const double tail = std::pow(volume / 2.0, (std::isinf(n_conj) ? 0.0 : 1.0 / n_conj) - 1.0) * f1;
    const double c_osc = g1 > 0.0 ? std::max(0.0, weak_osc - tail) / g1 : (weak_osc > tail ? kInf : 0.0);
    rep.values = {{"c_n", c_n}, {"c_osc", c_osc}, {"weak_osc", weak_osc}, {"weak_norm", weak_norm},
                  {"g_l1", g1}, {"f_l1", f1}, {"c_f", pair.c_f}};
    return rep;
}

double gap_power_integral(const StepRearrangement& r, double t, double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("gap exponent must be >= 1");
    const auto b = profile(r);
    double acc = 0.0;
    for (std::size_t k = 1; k < b.piece_count(); ++k) {
        const double lo = b.breakpoints[k];
        if (lo >= t) break;
        const double hi = std::min(t, b.breakpoints[k + 1]);
        const double gap = std::max(0.0, b.gap_mass(k));
        if (gap == 0.0) continue;
        // (f** - f*)(s) = gap / s on this piece.
        if (q == 1.0)
            acc += gap * std::log(hi / lo);
        else
            acc += std::pow(gap, q) * (std::pow(hi, 1.0 - q) - std::pow(lo, 1.0 - q)) / (1.0 - q);
    }
    return acc;
}

ChainReport qp_rearrangement_check(const GradientPair& pair, int log_samples) {
    const int n = pair.f.dim();
    const double inv_n = 1.0 / n;
    const auto fr = rearrangement(pair.f);
    const auto fb = profile(fr);
    std::vector<double> gp(pair.g.values().begin(), pair.g.values().end());
    for (double& x : gp) x = std::pow(x, pair.p);
    const auto gpb = profile(rearrangement(pair.g.with_values(std::move(gp))));
    const double limit = pair.f.total_measure() / 2.0;
    const auto pts = rearrangement_sample_points(fb, pair.f.cell_measure(), limit, log_samples);

    ChainReport rep;
    double best = 0.0, lhs_at = 0.0, rhs_at = 0.0;
    for (double t : pts) {
        const double inner = gap_power_integral(fr, t, pair.q) / t;
        const double lhs = std::pow(t, inv_n) * std::pow(inner, 1.0 / pair.q);
        const double rhs = pair.c_f * std::pow(star_pair(gpb, t).avg, 1.0 / pair.p);
        if (lhs == 0.0) continue;
        const double ratio = rhs > 0.0 ? lhs / rhs : kInf;
        if (ratio > best) {
            best = ratio;
            lhs_at = lhs;
            rhs_at = rhs;
        }
    }
    rep.items.push_back(reported_check("qp_rearranged", lhs_at, rhs_at));
    rep.values = {{"C", best}, {"c_f", pair.c_f}, {"q", pair.q}, {"p", pair.p}};
    return rep;
}

}  // namespace garo
