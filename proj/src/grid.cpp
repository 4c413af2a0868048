#include "garo/grid.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace garo {

std::string_view to_string(CubeFamily family) {
    switch (family) {
        case CubeFamily::all_grid: return "all_grid";
        case CubeFamily::dyadic: return "dyadic";
    }
    return "?";
}

CubeFamily parse_cube_family(std::string_view name) {
    if (name == "all_grid") return CubeFamily::all_grid;
    if (name == "dyadic") return CubeFamily::dyadic;
    throw std::invalid_argument("unknown cube family: " + std::string(name));
}

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

GridFunction::GridFunction(int dim, int cells_per_axis, double side, std::vector<double> values)
    : dim_(dim), cells_(cells_per_axis), side_(side), values_(std::move(values)) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("grid dimension must be in [1, 3]");
    if (cells_per_axis < 1) throw std::invalid_argument("cells per axis must be >= 1");
    if (!(side > 0.0) || !std::isfinite(side)) throw std::invalid_argument("side length must be positive");
    if (values_.size() != ipow(static_cast<std::size_t>(cells_per_axis), dim))
        throw std::invalid_argument("grid function needs exactly N^n values");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("grid function values must be finite");
    cell_measure_ = std::pow(side / cells_per_axis, dim);
}

GridFunction GridFunction::constant(int dim, int cells_per_axis, double side, double c) {
    return GridFunction(dim, cells_per_axis, side,
                        std::vector<double>(ipow(static_cast<std::size_t>(cells_per_axis), dim), c));
}

std::size_t GridFunction::index(const std::array<int, kMaxDim>& coords) const noexcept {
    std::size_t idx = 0;
    for (int k = dim_ - 1; k >= 0; --k) idx = idx * static_cast<std::size_t>(cells_) + coords[k];
    return idx;
}

std::array<int, kMaxDim> GridFunction::coords(std::size_t cell) const noexcept {
    std::array<int, kMaxDim> c{0, 0, 0};
    for (int k = 0; k < dim_; ++k) {
        c[k] = static_cast<int>(cell % static_cast<std::size_t>(cells_));
        cell /= static_cast<std::size_t>(cells_);
    }
    return c;
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
    return GridFunction(dim_, cells_, side_, std::move(values));
}

GridFunction GridFunction::shifted(double c) const {
    std::vector<double> v(values_);
    for (double& x : v) x += c;
    return with_values(std::move(v));
}

GridFunction GridFunction::scaled(double lambda) const {
    std::vector<double> v(values_);
    for (double& x : v) x *= lambda;
    return with_values(std::move(v));
}

GridFunction GridFunction::abs() const {
    std::vector<double> v(values_);
    for (double& x : v) x = std::fabs(x);
    return with_values(std::move(v));
}

Cube GridFunction::whole_cube() const noexcept {
    return Cube{{0, 0, 0}, cells_};
}

double cell_measure(const GridFunction& f) { return f.cell_measure(); }

bool contains(const GridFunction& f, const Cube& q) noexcept {
    if (q.side_cells < 1 || q.side_cells > f.cells_per_axis()) return false;
    for (int k = 0; k < f.dim(); ++k)
        if (q.offset[k] < 0 || q.offset[k] + q.side_cells > f.cells_per_axis()) return false;
    for (int k = f.dim(); k < kMaxDim; ++k)
        if (q.offset[k] != 0) return false;
    return true;
}

std::size_t cube_cell_count(const GridFunction& f, const Cube& q) noexcept {
    return ipow(static_cast<std::size_t>(q.side_cells), f.dim());
}

double cube_measure(const GridFunction& f, const Cube& q) noexcept {
    return std::pow(q.side_cells * f.cell_width(), f.dim());
}

double cube_edge(const GridFunction& f, const Cube& q) noexcept {
    return q.side_cells * f.cell_width();
}

bool cube_contains_cell(const GridFunction& f, const Cube& q, std::size_t cell) noexcept {
    const auto c = f.coords(cell);
    for (int k = 0; k < f.dim(); ++k)
        if (c[k] < q.offset[k] || c[k] >= q.offset[k] + q.side_cells) return false;
    return true;
}

bool interiors_overlap(const Cube& a, const Cube& b, int dim) noexcept {
    for (int k = 0; k < dim; ++k) {
        if (a.offset[k] + a.side_cells <= b.offset[k]) return false;
        if (b.offset[k] + b.side_cells <= a.offset[k]) return false;
    }
    return true;
}

std::vector<std::size_t> cube_cells(const GridFunction& f, const Cube& q) {
    if (!contains(f, q)) throw std::out_of_range("cube is not contained in Q0");
    const int n = f.dim();
    const std::size_t count = cube_cell_count(f, q);
    std::vector<std::size_t> cells;
    cells.reserve(count);
    std::array<int, kMaxDim> local{0, 0, 0};
    for (std::size_t i = 0; i < count; ++i) {
        std::array<int, kMaxDim> c{0, 0, 0};
        for (int k = 0; k < n; ++k) c[k] = q.offset[k] + local[k];
        cells.push_back(f.index(c));
        for (int k = 0; k < n; ++k) {
            if (++local[k] < q.side_cells) break;
            local[k] = 0;
        }
    }
    return cells;
}

double integrate(const GridFunction& f, const Cube& q) {
    double s = 0.0;
    for (std::size_t c : cube_cells(f, q)) s += f[c];
    return s * f.cell_measure();
}

double mean(const GridFunction& f, const Cube& q) {
    double s = 0.0;
    const auto cells = cube_cells(f, q);
    for (std::size_t c : cells) s += f[c];
    return s / static_cast<double>(cells.size());
}

double integral(const GridFunction& f) { return integrate(f, f.whole_cube()); }
double mean(const GridFunction& f) { return mean(f, f.whole_cube()); }

bool is_power_of_two(int n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

std::size_t all_grid_count(int dim, int cells_per_axis) noexcept {
    std::size_t total = 0;
    for (int s = 1; s <= cells_per_axis; ++s) total += ipow(static_cast<std::size_t>(cells_per_axis - s + 1), dim);
    return total;
}

std::size_t interval_index(int cells_per_axis, int offset, int side) noexcept {
    // Sides 1..side-1 contribute N, N-1, ..., N-side+2 intervals.
    const std::size_t n = static_cast<std::size_t>(cells_per_axis);
    const std::size_t s = static_cast<std::size_t>(side - 1);
    return s * n - s * (s - 1) / 2 + static_cast<std::size_t>(offset);
}

namespace {

void append_grid_of_cubes(std::vector<Cube>& out, int dim, int positions, int stride, int side) {
    const std::size_t count = ipow(static_cast<std::size_t>(positions), dim);
    std::array<int, kMaxDim> pos{0, 0, 0};
    for (std::size_t i = 0; i < count; ++i) {
        Cube q;
        q.side_cells = side;
        for (int k = 0; k < dim; ++k) q.offset[k] = pos[k] * stride;
        out.push_back(q);
        for (int k = 0; k < dim; ++k) {
            if (++pos[k] < positions) break;
            pos[k] = 0;
        }
    }
}

}  // namespace

std::vector<Cube> enumerate_subcubes(const GridFunction& f, CubeFamily family) {
    const int n = f.dim();
    const int cells = f.cells_per_axis();
    std::vector<Cube> out;
    if (family == CubeFamily::all_grid) {
        out.reserve(all_grid_count(n, cells));
        for (int s = 1; s <= cells; ++s) append_grid_of_cubes(out, n, cells - s + 1, 1, s);
        return out;
    }
    if (!is_power_of_two(cells)) throw std::invalid_argument("dyadic family requires N to be a power of two");
    for (int side = cells, per_axis = 1; side >= 1; side /= 2, per_axis *= 2)
        append_grid_of_cubes(out, n, per_axis, side, side);
    return out;
}

bool validate_packing(const Packing& p, const GridFunction& f) {
    for (const Cube& q : p.cubes)
        if (!contains(f, q)) return false;
    for (std::size_t i = 0; i < p.cubes.size(); ++i)
        for (std::size_t j = i + 1; j < p.cubes.size(); ++j)
            if (interiors_overlap(p.cubes[i], p.cubes[j], f.dim())) return false;
    return true;
}

GridFunction read_grid_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("grid csv: missing header line");
    std::istringstream header(line);
    int n = 0, cells = 0;
    double side = 0.0;
    char c1 = 0, c2 = 0;
    if (!(header >> n >> c1 >> cells >> c2 >> side) || c1 != ',' || c2 != ',')
        throw std::runtime_error("grid csv: first line must be n,N,L (dimension, cells per axis, side)");
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        std::size_t used = 0;
        double v = std::stod(line, &used);
        values.push_back(v);
    }
    return GridFunction(n, cells, side, std::move(values));
}

GridFunction read_grid_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open grid file: " + path);
    return read_grid_csv(in);
}

void write_grid_csv(std::ostream& out, const GridFunction& f) {
    const auto old = out.precision();
    out << std::setprecision(17);
    out << f.dim() << ',' << f.cells_per_axis() << ',' << f.side() << '\n';
    for (double v : f.values()) out << v << '\n';
    out.precision(old);
}

}  // namespace garo
