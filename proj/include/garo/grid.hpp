#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace garo {

inline constexpr int kMaxDim = 3;

// Grid-aligned subcube of Q0: integer per-axis cell offset plus side length in cells.
struct Cube {
    std::array<int, kMaxDim> offset{0, 0, 0};
    int side_cells = 1;

    friend bool operator==(const Cube&, const Cube&) = default;
};

// Finite family of cubes. Validity (disjoint interiors, in bounds) is checked by
// validate_packing(), not enforced at construction.
struct Packing {
    std::vector<Cube> cubes;
};

enum class CubeFamily { all_grid, dyadic };

std::string_view to_string(CubeFamily family);
CubeFamily parse_cube_family(std::string_view name);

// Piecewise-constant function on a uniform N^n grid over Q0 = [0, L)^n.
// Cells are row-major with axis 0 fastest.
class GridFunction {
public:
    GridFunction(int dim, int cells_per_axis, double side, std::vector<double> values);

    static GridFunction constant(int dim, int cells_per_axis, double side, double c);

    int dim() const noexcept { return dim_; }
    int cells_per_axis() const noexcept { return cells_; }
    double side() const noexcept { return side_; }
    std::size_t cell_count() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t cell) const noexcept { return values_[cell]; }

    double cell_measure() const noexcept { return cell_measure_; }
    double cell_width() const noexcept { return side_ / cells_; }
    double total_measure() const noexcept { return cell_measure_ * static_cast<double>(values_.size()); }

    std::size_t index(const std::array<int, kMaxDim>& coords) const noexcept;
    std::array<int, kMaxDim> coords(std::size_t cell) const noexcept;

    // Same grid, new cell values.
    GridFunction with_values(std::vector<double> values) const;
    GridFunction shifted(double c) const;
    GridFunction scaled(double lambda) const;
    GridFunction abs() const;

    Cube whole_cube() const noexcept;

private:
    int dim_;
    int cells_;
    double side_;
    double cell_measure_;
    std::vector<double> values_;
};

double cell_measure(const GridFunction& f);

bool contains(const GridFunction& f, const Cube& q) noexcept;
std::size_t cube_cell_count(const GridFunction& f, const Cube& q) noexcept;
double cube_measure(const GridFunction& f, const Cube& q) noexcept;
// Edge length l(Q) = s L / N = |Q|^{1/n}.
double cube_edge(const GridFunction& f, const Cube& q) noexcept;
bool cube_contains_cell(const GridFunction& f, const Cube& q, std::size_t cell) noexcept;
bool interiors_overlap(const Cube& a, const Cube& b, int dim) noexcept;

// Cell indices of q in row-major order. Throws std::out_of_range if q is not inside Q0.
std::vector<std::size_t> cube_cells(const GridFunction& f, const Cube& q);

// Exact cell sum of value * cell_measure over q.
double integrate(const GridFunction& f, const Cube& q);
double mean(const GridFunction& f, const Cube& q);
double integral(const GridFunction& f);
double mean(const GridFunction& f);

bool is_power_of_two(int n) noexcept;

// all_grid: ordered by side ascending, then offset row-major.
// dyadic: ordered by level from the root, row-major within a level.
std::vector<Cube> enumerate_subcubes(const GridFunction& f, CubeFamily family);
std::size_t all_grid_count(int dim, int cells_per_axis) noexcept;

// Index of the 1D interval [offset, offset + side) in the all_grid ordering.
std::size_t interval_index(int cells_per_axis, int offset, int side) noexcept;

bool validate_packing(const Packing& p, const GridFunction& f);

// CSV: first line "n,N,L", then the N^n cell values, one per line.
GridFunction read_grid_csv(std::istream& in);
GridFunction read_grid_csv_file(const std::string& path);
void write_grid_csv(std::ostream& out, const GridFunction& f);

}  // namespace garo
