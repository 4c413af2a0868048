#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "garo/grid.hpp"
#include "garo/packing.hpp"
#include "garo/rearrange.hpp"

namespace garo {

// The upper-gradient inequality fails on some cube for every finite constant.
class InfiniteConstant : public std::domain_error {
public:
    InfiniteConstant(const std::string& what, Cube witness) : std::domain_error(what), witness_(witness) {}
    const Cube& witness() const noexcept { return witness_; }

private:
    Cube witness_;
};

// f with an upper gradient g: for every family cube Q,
//   (avg_Q |f - f_Q|^q)^{1/q} <= c_f l(Q) (avg_Q g^p)^{1/p},  l(Q) = |Q|^{1/n},
// with c_f the least such constant (q = 1 is the usual S_p class).
struct GradientPair {
    GridFunction f;
    GridFunction g;
    double p = 1.0;
    double q = 1.0;
    CubeFamily family = CubeFamily::all_grid;
    double c_f = 0.0;
    Cube witness;
};

GradientPair fit_upper_gradient_constant(const GridFunction& f, const GridFunction& g, double p,
                                         CubeFamily family, double q = 1.0, Exec exec = Exec::parallel);

enum class CheckStatus { pass, fail, reported };
std::string_view to_string(CheckStatus s);

struct InequalityRecord {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = kInf;  // rhs / lhs, infinite when lhs == 0
    CheckStatus status = CheckStatus::reported;
    std::optional<Cube> witness;
};

struct ChainReport {
    std::vector<InequalityRecord> items;
    // Named scalars: estimated constants, exponents, auxiliary norms.
    std::map<std::string, double> values;

    const InequalityRecord& item(const std::string& name) const;
    bool all_pass() const;
};

// Relative tolerance for inequalities that hold exactly in the discrete model.
inline constexpr double kExactTolerance = 1e-12;

double slack_of(double lhs, double rhs);
// pass iff lhs <= rhs (1 + tol), with absolute slack tol for rhs == 0.
InequalityRecord exact_check(std::string name, double lhs, double rhs, double tol = kExactTolerance);
InequalityRecord reported_check(std::string name, double lhs, double rhs);

double lp_norm(const GridFunction& g, double p);
// 1/p* = 1/p - 1/n.
double sobolev_conjugate(double p, int n);
// p (2^{n/p' + 1} + 4^{1/p'}): weak norm of f - f_Q0 against its GaRo_p norm.
double weak_vs_garo_constant(int n, double p);

// 1 < p < n. Items: "garo", "garo_centered", "weak_from_garo".
ChainReport poincare_chain_subcritical(const GradientPair& pair, NormFamily family);
// p = n. Items: "garo_inf", "bmo_identity".
ChainReport poincare_chain_critical(const GradientPair& pair, NormFamily family);

// Rearranged gradient inequality f** - f* <= c t^{1/n} g** on t < |Q0|/2 for an S_1 pair.
// values: "c_hat" (max over breakpoints and cell-resolved sample points), "c_hat_sup"
// (exact supremum of the step model, including sub-cell jumps), "samples".
ChainReport gradient_rearrangement_check(const GradientPair& pair, int log_samples = 100);

// Weak Gagliardo-Nirenberg consequence for an S_1 pair. values: "c_n" (least constant in
// ||f - f_Q0||*_{L(n',inf)} <= c ||g||_1), "weak_osc" and "weak_norm". Item "l1_absorption" is exact.
ChainReport weak_gn_check(const GradientPair& pair);

// (q, p) variant: t^{1/n} ((1/t) int_0^t (f** - f*)^q)^{1/q} <= C c_f ((g^p)**(t))^{1/p}.
// values: "C" (least constant over the evaluation points).
ChainReport qp_rearrangement_check(const GradientPair& pair, int log_samples = 100);

// int_0^t (f**(s) - f*(s))^q ds in closed form per plateau.
double gap_power_integral(const StepRearrangement& r, double t, double q);

// Evaluation points for the rearranged inequalities: every breakpoint below `limit` plus
// log-spaced points on [cell, limit) snapped down to whole cells.
std::vector<double> rearrangement_sample_points(const BreakpointProfile& b, double cell, double limit, int log_samples);

}  // namespace garo
