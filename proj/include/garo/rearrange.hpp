#pragma once

#include <limits>
#include <vector>

#include "garo/grid.hpp"

namespace garo {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Plateau {
    double value;
    double measure;
};

// Decreasing rearrangement of a step function as plateaus with strictly decreasing values.
// f*(t) = plateaus[k].value for t in (t_k, t_{k+1}], with the first plateau closed at 0.
struct StepRearrangement {
    std::vector<Plateau> plateaus;
    double total_measure = 0.0;
};

// Cumulative breakpoints t_0 = 0 < ... < t_m and partial integrals A_k = int_0^{t_k} f*.
// On (t_k, t_{k+1}]: f**(t) = (A_k + v_k (t - t_k)) / t.
struct BreakpointProfile {
    std::vector<double> breakpoints;
    std::vector<double> partial_integrals;
    std::vector<double> values;

    std::size_t piece_count() const noexcept { return values.size(); }
    // Index k of the piece (t_k, t_{k+1}] holding t; t in (0, total].
    std::size_t piece_of(double t) const;
    // A_k - v_k t_k; t (f** - f*) is constant and equal to this on piece k.
    double gap_mass(std::size_t k) const noexcept {
        return partial_integrals[k] - values[k] * breakpoints[k];
    }
};

enum class RearrangeMode { raw, abs };

StepRearrangement rearrangement(const GridFunction& f, RearrangeMode mode = RearrangeMode::abs);
StepRearrangement rearrangement_of(std::vector<double> values, double cell_measure);
BreakpointProfile profile(const StepRearrangement& r);

double eval_star(const StepRearrangement& r, double t);
double eval_avg(const StepRearrangement& r, double t);
double eval_avg(const BreakpointProfile& b, double t);

// sup_t t^{1/p} f*(t); p = kInf gives sup f*.
double weak_lorentz_norm(const StepRearrangement& r, double p);
// sup_t t^{1/p} (f**(t) - f*(t)); p = kInf gives sup (f** - f*).
double weak_oscillation_norm(const StepRearrangement& r, double p);
// sup_t t^{1/p} f**(t).
double weak_average_norm(const StepRearrangement& r, double p);

// int_t^inf (g**(s) - g*(s)) ds / s with g* extended by zero past total_measure.
double reconstruct_avg(const StepRearrangement& r, double t);

// K(t, f; L^1, L^inf) = t f**(t), equal to ||f||_1 once t >= total_measure.
double k_functional(const StepRearrangement& r, double t);

// Independent route: inf over truncation levels lambda >= 0 of int (|f| - lambda)_+ + t lambda.
double k_functional_by_truncation(const StepRearrangement& r, double t);

double l1_norm(const StepRearrangement& r);

}  // namespace garo
