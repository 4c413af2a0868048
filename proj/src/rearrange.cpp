#include "garo/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace garo {

namespace {

void check_t(const StepRearrangement& r, double t) {
    if (!(t > 0.0) || t > r.total_measure * (1.0 + 1e-14))
        throw std::out_of_range("t must lie in (0, total_measure]");
}

}  // namespace

StepRearrangement rearrangement_of(std::vector<double> values, double cell_measure) {
    std::sort(values.begin(), values.end(), std::greater<>());
    StepRearrangement r;
    r.total_measure = cell_measure * static_cast<double>(values.size());
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i;
        while (j < values.size() && values[j] == values[i]) ++j;
        r.plateaus.push_back({values[i], cell_measure * static_cast<double>(j - i)});
        i = j;
    }
    return r;
}

StepRearrangement rearrangement(const GridFunction& f, RearrangeMode mode) {
    std::vector<double> v(f.values().begin(), f.values().end());
    if (mode == RearrangeMode::abs)
        for (double& x : v) x = std::fabs(x);
    return rearrangement_of(std::move(v), f.cell_measure());
}

BreakpointProfile profile(const StepRearrangement& r) {
    BreakpointProfile b;
    const std::size_t m = r.plateaus.size();
    b.breakpoints.reserve(m + 1);
    b.partial_integrals.reserve(m + 1);
    b.values.reserve(m);
    double t = 0.0, a = 0.0;
    b.breakpoints.push_back(0.0);
    b.partial_integrals.push_back(0.0);
    for (std::size_t k = 0; k < m; ++k) {
        const auto& pl = r.plateaus[k];
        b.values.push_back(pl.value);
        t += pl.measure;
        a += pl.value * pl.measure;
        b.breakpoints.push_back(k + 1 == m ? r.total_measure : t);
        b.partial_integrals.push_back(a);
    }
    return b;
}

std::size_t BreakpointProfile::piece_of(double t) const {
    auto it = std::lower_bound(breakpoints.begin() + 1, breakpoints.end(), t);
    if (it == breakpoints.end()) return values.size() - 1;
    return static_cast<std::size_t>(it - (breakpoints.begin() + 1));
}

double eval_star(const StepRearrangement& r, double t) {
    check_t(r, t);
    const auto b = profile(r);
    return b.values[b.piece_of(t)];
}

double eval_avg(const BreakpointProfile& b, double t) {
    const std::size_t k = b.piece_of(t);
    return (b.partial_integrals[k] + b.values[k] * (t - b.breakpoints[k])) / t;
}

double eval_avg(const StepRearrangement& r, double t) {
    check_t(r, t);
    return eval_avg(profile(r), t);
}

double weak_lorentz_norm(const StepRearrangement& r, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("weak Lorentz norm needs p > 1");
    const auto b = profile(r);
    double best = 0.0;
    const double a = std::isinf(p) ? 0.0 : 1.0 / p;
    for (std::size_t k = 0; k < b.piece_count(); ++k) {
        const double v = b.values[k];
        // t^{1/p} v is monotone on each plateau: the sup sits at the right end for v >= 0.
        const double t = v >= 0.0 ? b.breakpoints[k + 1] : b.breakpoints[k];
        if (t > 0.0) best = std::max(best, v * std::pow(t, a));
    }
    return best;
}

double weak_oscillation_norm(const StepRearrangement& r, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("weak oscillation norm needs p > 1");
    const auto b = profile(r);
    const double e = std::isinf(p) ? -1.0 : 1.0 / p - 1.0;
    double best = 0.0;
    // On piece k, t^{1/p}(f** - f*) = D_k t^{1/p - 1} is non-increasing: sup is the left limit.
    for (std::size_t k = 1; k < b.piece_count(); ++k) {
        const double gap = std::max(0.0, b.gap_mass(k));
        best = std::max(best, gap * std::pow(b.breakpoints[k], e));
    }
    return best;
}

double weak_average_norm(const StepRearrangement& r, double p) {
    if (!(p > 1.0)) throw std::invalid_argument("weak average norm needs p > 1");
    const auto b = profile(r);
    if (b.piece_count() == 0) return 0.0;
    if (std::isinf(p)) return std::max(0.0, b.values.front());
    // t^{1/p} f**(t) = (D_k + v_k t) t^{1/p - 1} has no interior maximum on a piece.
    const double e = 1.0 / p - 1.0;
    double best = 0.0;
    for (std::size_t k = 1; k < b.breakpoints.size(); ++k)
        best = std::max(best, b.partial_integrals[k] * std::pow(b.breakpoints[k], e));
    return best;
}

double reconstruct_avg(const StepRearrangement& r, double t) {
    if (!(t > 0.0)) throw std::out_of_range("t must be positive");
    const auto b = profile(r);
    if (b.piece_count() == 0) return 0.0;
    const double total = b.breakpoints.back();
    // Past the support g** = ||g||_1 / s and g* = 0.
    double acc = b.partial_integrals.back() / std::max(t, total);
    for (std::size_t k = 1; k < b.piece_count(); ++k) {
        const double hi = b.breakpoints[k + 1];
        if (hi <= t) continue;
        const double lo = std::max(t, b.breakpoints[k]);
        acc += b.gap_mass(k) * (1.0 / lo - 1.0 / hi);
    }
    return acc;
}

double k_functional(const StepRearrangement& r, double t) {
    if (!(t > 0.0)) throw std::out_of_range("t must be positive");
    const auto b = profile(r);
    if (b.piece_count() == 0) return 0.0;
    if (t >= b.breakpoints.back()) return b.partial_integrals.back();
    return eval_avg(b, t) * t;
}

double k_functional_by_truncation(const StepRearrangement& r, double t) {
    if (!(t > 0.0)) throw std::out_of_range("t must be positive");
    auto cost = [&](double lambda) {
        double excess = 0.0;
        for (const auto& pl : r.plateaus)
            if (pl.value > lambda) excess += (pl.value - lambda) * pl.measure;
        return excess + t * lambda;
    };
    // Convex piecewise linear in lambda with kinks at plateau values.
    double best = cost(0.0);
    for (const auto& pl : r.plateaus)
        if (pl.value > 0.0) best = std::min(best, cost(pl.value));
    return best;
}

double l1_norm(const StepRearrangement& r) {
    double s = 0.0;
    for (const auto& pl : r.plateaus) s += std::fabs(pl.value) * pl.measure;
    return s;
}

}  // namespace garo
