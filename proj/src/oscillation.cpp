#include "garo/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace garo {

namespace {

std::vector<double> gather(const GridFunction& f, const Cube& q) {
    const auto cells = cube_cells(f, q);
    std::vector<double> v;
    v.reserve(cells.size());
    for (std::size_t c : cells) v.push_back(f[c]);
    return v;
}

bool all_equal(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// sum_{a,b} |v_a - v_b| for values already sorted ascending.
double sorted_pair_sum(const std::vector<double>& sorted) {
    const double m = static_cast<double>(sorted.size());
    double s = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) s += sorted[i] * (2.0 * static_cast<double>(i) - m + 1.0);
    return std::max(0.0, 2.0 * s);
}

struct DirectStats {
    double mean, mean_osc, double_osc;
};

DirectStats direct_stats(const GridFunction& f, const Cube& q) {
    auto v = gather(f, q);
    const double mu = mean_of(v);
    if (all_equal(v)) return {mu, 0.0, 0.0};
    double dev = 0.0;
    for (double x : v) dev += std::fabs(x - mu);
    for (double& x : v) x -= mu;
    std::sort(v.begin(), v.end());
    const double cm = f.cell_measure();
    return {mu, dev / static_cast<double>(v.size()), sorted_pair_sum(v) * cm * cm};
}

// Fenwick tree over value ranks holding counts and sums.
class RankTree {
public:
    explicit RankTree(std::size_t n) : count_(n + 1, 0), sum_(n + 1, 0.0) {}
    void clear() {
        std::fill(count_.begin(), count_.end(), 0);
        std::fill(sum_.begin(), sum_.end(), 0.0);
    }
    void add(std::size_t rank, double v) {
        for (std::size_t i = rank + 1; i < count_.size(); i += i & (~i + 1)) {
            ++count_[i];
            sum_[i] += v;
        }
    }
    // Count and sum of entries with rank < r.
    std::pair<long, double> prefix(std::size_t r) const {
        long c = 0;
        double s = 0.0;
        for (std::size_t i = r; i > 0; i -= i & (~i + 1)) {
            c += count_[i];
            s += sum_[i];
        }
        return {c, s};
    }

private:
    std::vector<long> count_;
    std::vector<double> sum_;
};

// 1D all_grid: for each left end, extend the interval one cell at a time, maintaining
// rank-indexed counts/sums so each step costs O(log N).
void sweep_intervals_1d(const GridFunction& f, CubeStats& st, bool parallel) {
    const int n = f.cells_per_axis();
    const double cm = f.cell_measure();
    // Centering keeps the cancellations in the rank sums small.
    const double center = mean(f);
    std::vector<double> u(f.values().begin(), f.values().end());
    for (double& x : u) x -= center;
    std::vector<double> sorted(u);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> rank(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        rank[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), u[i]) - sorted.begin());

    auto run_left = [&](int a, RankTree& tree) {
        tree.clear();
        double raw_sum = 0.0, sum = 0.0, pair = 0.0;
        double lo = u[a], hi = u[a];
        for (int b = a; b < n; ++b) {
            const double x = u[b];
            const auto [c_lt, s_lt] = tree.prefix(rank[b]);
            const auto [c_le, s_le] = tree.prefix(rank[b] + 1);
            const long count_before = b - a;
            const double s_gt = sum - s_le;
            const long c_gt = count_before - c_le;
            pair += 2.0 * ((static_cast<double>(c_lt) * x - s_lt) + (s_gt - static_cast<double>(c_gt) * x));
            tree.add(rank[b], x);
            sum += x;
            raw_sum += f[b];
            lo = std::min(lo, x);
            hi = std::max(hi, x);
            const long count = count_before + 1;
            const std::size_t idx = interval_index(n, a, b - a + 1);
            st.mean[idx] = raw_sum / static_cast<double>(count);
            if (lo == hi) {
                st.mean_osc[idx] = 0.0;
                st.double_osc[idx] = 0.0;
                continue;
            }
            const double mu = sum / static_cast<double>(count);
            const std::size_t r = static_cast<std::size_t>(
                std::upper_bound(sorted.begin(), sorted.end(), mu) - sorted.begin());
            const auto [c_m, s_m] = tree.prefix(r);
            const double dev = (mu * static_cast<double>(c_m) - s_m) +
                               ((sum - s_m) - mu * static_cast<double>(count - c_m));
            st.mean_osc[idx] = std::max(0.0, dev / static_cast<double>(count));
            st.double_osc[idx] = std::max(0.0, pair) * cm * cm;
        }
    };

    if (parallel) {
#pragma omp parallel
        {
            RankTree tree(sorted.size());
#pragma omp for schedule(dynamic, 8)
            for (int a = 0; a < n; ++a) run_left(a, tree);
        }
    } else {
        RankTree tree(sorted.size());
        for (int a = 0; a < n; ++a) run_left(a, tree);
    }
}

CubeStats empty_stats(const GridFunction& f, CubeFamily family) {
    CubeStats st;
    st.family = family;
    st.cell_measure = f.cell_measure();
    st.cubes = enumerate_subcubes(f, family);
    const std::size_t m = st.cubes.size();
    st.measure.resize(m);
    st.mean.resize(m);
    st.mean_osc.resize(m);
    st.double_osc.resize(m);
    for (std::size_t i = 0; i < m; ++i) st.measure[i] = cube_measure(f, st.cubes[i]);
    return st;
}

}  // namespace

double mean_oscillation(const GridFunction& f, const Cube& q) { return direct_stats(f, q).mean_osc; }

double q_mean_oscillation(const GridFunction& f, const Cube& q, double exponent) {
    if (!(exponent >= 1.0)) throw std::invalid_argument("oscillation exponent must be >= 1");
    const auto v = gather(f, q);
    if (all_equal(v)) return 0.0;
    const double mu = mean_of(v);
    double s = 0.0;
    for (double x : v) s += std::pow(std::fabs(x - mu), exponent);
    return std::pow(s / static_cast<double>(v.size()), 1.0 / exponent);
}

double double_oscillation(const GridFunction& f, const Cube& q) { return direct_stats(f, q).double_osc; }

OscillationReport oscillation_report(const GridFunction& f, const Cube& q) {
    const auto s = direct_stats(f, q);
    return {q, s.mean_osc, s.double_osc};
}

std::size_t CubeStats::cells(std::size_t i, int dim) const noexcept {
    std::size_t c = 1;
    for (int k = 0; k < dim; ++k) c *= static_cast<std::size_t>(cubes[i].side_cells);
    return c;
}

CubeStats cube_stats(const GridFunction& f, CubeFamily family, Exec exec) {
    CubeStats st = empty_stats(f, family);
    const bool parallel = exec == Exec::parallel;
    if (parallel && f.dim() == 1 && family == CubeFamily::all_grid) {
        sweep_intervals_1d(f, st, true);
        return st;
    }
    const long m = static_cast<long>(st.size());
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < m; ++i) {
            const auto s = direct_stats(f, st.cubes[i]);
            st.mean[i] = s.mean;
            st.mean_osc[i] = s.mean_osc;
            st.double_osc[i] = s.double_osc;
        }
    } else {
        for (long i = 0; i < m; ++i) {
            const auto s = direct_stats(f, st.cubes[i]);
            st.mean[i] = s.mean;
            st.mean_osc[i] = s.mean_osc;
            st.double_osc[i] = s.double_osc;
        }
    }
    return st;
}

std::vector<double> cube_means(const GridFunction& g, CubeFamily family, const std::vector<Cube>& cubes,
                               Exec exec) {
    std::vector<double> out(cubes.size());
    const long m = static_cast<long>(cubes.size());
    if (exec == Exec::parallel && g.dim() == 1 && family == CubeFamily::all_grid) {
        // Running left-to-right sums reproduce the direct summation order exactly.
        const int n = g.cells_per_axis();
#pragma omp parallel for schedule(dynamic, 8)
        for (int a = 0; a < n; ++a) {
            double s = 0.0;
            for (int b = a; b < n; ++b) {
                s += g[b];
                out[interval_index(n, a, b - a + 1)] = s / static_cast<double>(b - a + 1);
            }
        }
        return out;
    }
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < m; ++i) out[i] = mean(g, cubes[i]);
    } else {
        for (long i = 0; i < m; ++i) out[i] = mean(g, cubes[i]);
    }
    return out;
}

std::vector<double> cube_q_oscillation(const GridFunction& f, const std::vector<Cube>& cubes, double exponent,
                                       Exec exec) {
    std::vector<double> out(cubes.size());
    const long m = static_cast<long>(cubes.size());
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < m; ++i) out[i] = q_mean_oscillation(f, cubes[i], exponent);
    } else {
        for (long i = 0; i < m; ++i) out[i] = q_mean_oscillation(f, cubes[i], exponent);
    }
    return out;
}

namespace {

void scatter_max(const GridFunction& f, const std::vector<Cube>& cubes, const std::vector<double>& weight,
                 std::size_t begin, std::size_t end, std::vector<double>& out) {
    for (std::size_t i = begin; i < end; ++i)
        for (std::size_t c : cube_cells(f, cubes[i])) out[c] = std::max(out[c], weight[i]);
}

// 1D all_grid in O(N^2): best[x] = max_{a <= x} max_{b > x} w(a, b).
std::vector<double> interval_sup_1d(int n, const std::vector<double>& weight) {
    std::vector<double> out(n, 0.0);
#pragma omp parallel
    {
        std::vector<double> local(n, 0.0);
        std::vector<double> suffix(n + 1);
#pragma omp for schedule(dynamic, 8)
        for (int a = 0; a < n; ++a) {
            // suffix[x] = max over right ends b > x of w([a, b)).
            suffix[n] = 0.0;
            for (int b = n; b > a; --b) suffix[b - 1] = std::max(b < n ? suffix[b] : 0.0, weight[interval_index(n, a, b - a)]);
            for (int x = a; x < n; ++x) local[x] = std::max(local[x], suffix[x]);
        }
#pragma omp critical
        for (int x = 0; x < n; ++x) out[x] = std::max(out[x], local[x]);
    }
    return out;
}

}  // namespace

std::vector<double> cellwise_sup(const GridFunction& f, CubeFamily family, const std::vector<Cube>& cubes,
                                 const std::vector<double>& weight, Exec exec) {
    if (weight.size() != cubes.size()) throw std::invalid_argument("one weight per cube required");
    if (exec == Exec::serial) {
        std::vector<double> out(f.cell_count(), 0.0);
        scatter_max(f, cubes, weight, 0, cubes.size(), out);
        return out;
    }
    if (f.dim() == 1 && family == CubeFamily::all_grid && cubes.size() == all_grid_count(1, f.cells_per_axis()))
        return interval_sup_1d(f.cells_per_axis(), weight);
    std::vector<double> out(f.cell_count(), 0.0);
#pragma omp parallel
    {
        std::vector<double> local(f.cell_count(), 0.0);
        int threads = 1, tid = 0;
#ifdef _OPENMP
        threads = omp_get_num_threads();
        tid = omp_get_thread_num();
#endif
        const std::size_t chunk = (cubes.size() + threads - 1) / threads;
        const std::size_t begin = std::min(cubes.size(), chunk * tid);
        const std::size_t end = std::min(cubes.size(), begin + chunk);
        scatter_max(f, cubes, weight, begin, end, local);
#pragma omp critical
        for (std::size_t c = 0; c < out.size(); ++c) out[c] = std::max(out[c], local[c]);
    }
    return out;
}

SupResult bmo_norm_classic(const CubeStats& st) {
    SupResult r;
    for (std::size_t i = 0; i < st.size(); ++i)
        if (st.mean_osc[i] > r.value) r = {st.mean_osc[i], st.cubes[i]};
    if (r.value == 0.0 && st.size() > 0) r.witness = st.cubes.front();
    return r;
}

SupResult bmo_norm_star(const CubeStats& st) {
    SupResult r;
    for (std::size_t i = 0; i < st.size(); ++i) {
        const double v = st.double_osc[i] / (st.measure[i] * st.measure[i]);
        if (v > r.value) r = {v, st.cubes[i]};
    }
    if (r.value == 0.0 && st.size() > 0) r.witness = st.cubes.front();
    return r;
}

SupResult bmo_norm_classic(const GridFunction& f, CubeFamily family) {
    return bmo_norm_classic(cube_stats(f, family));
}

SupResult bmo_norm_star(const GridFunction& f, CubeFamily family) { return bmo_norm_star(cube_stats(f, family)); }

GridFunction sharp_maximal(const GridFunction& f, double beta, CubeFamily family, Exec exec) {
    if (!(beta >= 0.0)) throw std::invalid_argument("sharp maximal exponent must be >= 0");
    const auto st = cube_stats(f, family, exec);
    std::vector<double> w(st.size());
    for (std::size_t i = 0; i < st.size(); ++i) w[i] = std::pow(st.measure[i], -beta) * st.mean_osc[i];
    return f.with_values(cellwise_sup(f, family, st.cubes, w, exec));
}

GridFunction hl_maximal(const GridFunction& f, CubeFamily family, Exec exec) {
    const auto a = f.abs();
    const auto cubes = enumerate_subcubes(f, family);
    return f.with_values(cellwise_sup(f, family, cubes, cube_means(a, family, cubes, exec), exec));
}

}  // namespace garo
