#pragma once

#include <vector>

#include "garo/grid.hpp"

namespace garo {

// Kernel execution policy. The serial path is the reference implementation; parallel
// kernels must agree with it to rounding.
enum class Exec { serial, parallel };

struct OscillationReport {
    Cube cube;
    double mean_osc = 0.0;    // (1/|Q|) int_Q |f - f_Q|
    double double_osc = 0.0;  // int_Q int_Q |f(x) - f(y)| dx dy
};

double mean_oscillation(const GridFunction& f, const Cube& q);
// (1/|Q|) int_Q |f - f_Q|^q, raised to 1/q.
double q_mean_oscillation(const GridFunction& f, const Cube& q, double exponent);
// Sort + prefix sums, O(m log m) in the cell count m.
double double_oscillation(const GridFunction& f, const Cube& q);
OscillationReport oscillation_report(const GridFunction& f, const Cube& q);

// Per-cube statistics of f over a whole family, index-aligned with `cubes`.
struct CubeStats {
    CubeFamily family = CubeFamily::all_grid;
    double cell_measure = 0.0;
    std::vector<Cube> cubes;
    std::vector<double> measure;
    std::vector<double> mean;
    std::vector<double> mean_osc;
    std::vector<double> double_osc;

    std::size_t size() const noexcept { return cubes.size(); }
    std::size_t cells(std::size_t i, int dim) const noexcept;
};

CubeStats cube_stats(const GridFunction& f, CubeFamily family, Exec exec = Exec::parallel);

// Mean of g over each cube.
std::vector<double> cube_means(const GridFunction& g, CubeFamily family, const std::vector<Cube>& cubes,
                               Exec exec = Exec::parallel);
// q-mean oscillation over each cube.
std::vector<double> cube_q_oscillation(const GridFunction& f, const std::vector<Cube>& cubes, double exponent,
                                       Exec exec = Exec::parallel);

// out[cell] = max over cubes containing cell of weight[i]; max(0, .) since every cell has a cube.
std::vector<double> cellwise_sup(const GridFunction& f, CubeFamily family, const std::vector<Cube>& cubes,
                                 const std::vector<double>& weight, Exec exec = Exec::parallel);

struct SupResult {
    double value = 0.0;
    Cube witness;
};

SupResult bmo_norm_classic(const GridFunction& f, CubeFamily family);
// sup_Q |Q|^{-2} int_Q int_Q |f(x) - f(y)|.
SupResult bmo_norm_star(const GridFunction& f, CubeFamily family);
SupResult bmo_norm_classic(const CubeStats& stats);
SupResult bmo_norm_star(const CubeStats& stats);

// sup over family cubes Q containing the cell of |Q|^{-beta} Omega(f, Q).
GridFunction sharp_maximal(const GridFunction& f, double beta, CubeFamily family = CubeFamily::all_grid,
                           Exec exec = Exec::parallel);
// Non-centered cube maximal function of |f|.
GridFunction hl_maximal(const GridFunction& f, CubeFamily family = CubeFamily::all_grid, Exec exec = Exec::parallel);

}  // namespace garo
