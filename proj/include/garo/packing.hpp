#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "garo/grid.hpp"
#include "garo/oscillation.hpp"
#include "garo/rearrange.hpp"

namespace garo {

enum class PackingKind { jn, garo };

inline constexpr double kMaxPackingExponent = 64.0;

struct PackingObjective {
    PackingKind kind = PackingKind::garo;
    double p = 2.0;  // kInf allowed for garo

    static PackingObjective jn(double p);
    static PackingObjective garo(double p);

    bool is_endpoint() const noexcept;
    // 1/p' = 1 - 1/p, equal to 1 at the endpoint.
    double inverse_conjugate() const noexcept;
};

// Where a norm value came from; exhaustive means full packing enumeration over all_grid.
enum class NormFamily { all_grid, dyadic, exhaustive };

std::string_view to_string(NormFamily family);
NormFamily parse_norm_family(std::string_view name);

struct NormResult {
    PackingObjective objective;
    NormFamily family = NormFamily::all_grid;
    double value = 0.0;
    Packing witness;
    // Grid-aligned packings only see part of the continuum supremum.
    bool lower_bound_flag = true;
};

struct PackingSum {
    double measure = 0.0;
    double value = 0.0;
};

// GaRo: value = sum_i D(f, Q_i) / |Q_i|.  JN: value = sum_i |Q_i| Omega(f, Q_i)^p.
// Throws std::invalid_argument on an invalid packing.
PackingSum packing_sum(const GridFunction& f, const Packing& pk, const PackingObjective& obj);
// Re-evaluates a norm from its witness packing.
double evaluate_witness(const GridFunction& f, const NormResult& r);

struct FrontierPoint {
    std::int64_t cells = 0;  // packing measure in cell units
    double measure = 0.0;
    double value = 0.0;      // sum_i D(f, Q_i) / |Q_i|
};

// Nondominated (measure, oscillation-sum) pairs, strictly increasing in both coordinates.
struct ParetoFrontier {
    std::vector<FrontierPoint> points;
};

// Largest ratio value / measure^{1/p'} over m > 0.
struct FrontierOptimum {
    double value = 0.0;
    std::int64_t cells = 0;
};
FrontierOptimum maximize_ratio(const std::vector<double>& best_by_cells, double cell_measure, double inv_conj);

// Precomputes cube statistics for one function and family, then answers JN / GaRo queries.
// The GaRo optimizer state is independent of p and built once.
class PackingEngine {
public:
    PackingEngine(const GridFunction& f, NormFamily family, Exec exec = Exec::parallel);

    NormResult jn(double p) const;
    NormResult garo(double p) const;
    ParetoFrontier frontier() const;

    const CubeStats& stats() const;
    NormFamily family() const noexcept { return family_; }

    // best_by_cells[c] is the largest oscillation sum over packings of exactly c cells
    // (-inf if none).
    const std::vector<double>& best_by_cells() const noexcept { return best_by_cells_; }

private:
    Packing reconstruct_garo(std::int64_t cells) const;

    GridFunction f_;
    NormFamily family_;
    std::optional<CubeStats> stats_;
    std::vector<double> best_by_cells_;

    // 1D all_grid prefix DP: choice_[j][c] = -1 (cell j-1 unused) or the left end i of [i, j).
    std::vector<std::vector<int>> choice_;
    // Dyadic tree DP backtracking: per node, merge stages over children plus a take flag.
    struct NodeTable {
        std::vector<double> best;                      // best[c] over packings inside the node
        std::vector<std::vector<std::int32_t>> split;  // split[k][c]: cells given to child k
        std::vector<std::uint8_t> take;                // the node itself is optimal at c
    };
    std::vector<NodeTable> nodes_;
    // Exhaustive mode: best packing per cell count.
    std::vector<Packing> exhaustive_witness_;
    void build_dyadic();
    void build_interval_dp();
    void build_exhaustive();
    void collect_dyadic(std::size_t node, std::int64_t cells, Packing& out) const;
};

// Oracle: enumerates every packing of `family` and evaluates each objective from direct
// per-cube oscillations. Results are index-aligned with `objectives`.
std::vector<NormResult> exhaustive_norms(const GridFunction& f, CubeFamily family,
                                         const std::vector<PackingObjective>& objectives);

NormResult jn_norm(const GridFunction& f, double p, NormFamily family);
NormResult garo_norm(const GridFunction& f, double p, NormFamily family);
ParetoFrontier pareto_frontier(const GridFunction& f);

// Enumerates every packing of the chosen family exactly once, starting with the empty one.
// all_grid: cell-scan order (each cube is placed at its first cell). dyadic: preorder tree walk.
class ExhaustivePackings {
public:
    static constexpr std::size_t kMaxAllGridCells = 12;
    static constexpr std::uint64_t kMaxPackings = std::uint64_t{1} << 24;

    ExhaustivePackings(const GridFunction& f, CubeFamily family);

    // Writes the next packing; returns false once exhausted.
    bool next(Packing& out);
    // Number of packings the enumeration will produce.
    std::uint64_t count() const noexcept { return count_; }

private:
    struct Decision {
        std::size_t cell;  // all_grid: scan position; dyadic: node id
        int choice;        // all_grid: 0 = skip, s = cube of side s; dyadic: 0 = descend, 1 = take
    };
    bool advance_all_grid();
    bool advance_dyadic();
    void fill_all_grid(std::size_t from);
    void fill_dyadic(std::size_t from);
    bool fits(std::size_t cell, int side) const;
    void mark(std::size_t cell, int side, bool on);
    void emit(Packing& out) const;

    int dim_;
    int cells_per_axis_;
    CubeFamily family_;
    std::vector<Cube> dyadic_nodes_;        // preorder
    std::vector<std::size_t> subtree_end_;  // preorder index past the subtree
    std::vector<std::uint8_t> occupied_;
    std::vector<Decision> stack_;
    bool started_ = false;
    bool done_ = false;
    std::uint64_t count_ = 0;
};

std::uint64_t count_packings(int dim, int cells_per_axis, CubeFamily family);

}  // namespace garo
