#include "garo/packing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace garo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_exponent(double p, bool allow_endpoint) {
    if (allow_endpoint && std::isinf(p) && p > 0) return;
    if (!(p > 1.0) || p > kMaxPackingExponent)
        throw std::invalid_argument("packing exponent p must lie in (1, 64]");
}

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

PackingObjective PackingObjective::jn(double p) {
    check_exponent(p, false);
    return {PackingKind::jn, p};
}

PackingObjective PackingObjective::garo(double p) {
    check_exponent(p, true);
    return {PackingKind::garo, p};
}

bool PackingObjective::is_endpoint() const noexcept { return std::isinf(p); }

double PackingObjective::inverse_conjugate() const noexcept { return is_endpoint() ? 1.0 : 1.0 - 1.0 / p; }

std::string_view to_string(NormFamily family) {
    switch (family) {
        case NormFamily::all_grid: return "all_grid";
        case NormFamily::dyadic: return "dyadic";
        case NormFamily::exhaustive: return "exhaustive";
    }
    return "?";
}

NormFamily parse_norm_family(std::string_view name) {
    if (name == "all_grid") return NormFamily::all_grid;
    if (name == "dyadic") return NormFamily::dyadic;
    if (name == "exhaustive") return NormFamily::exhaustive;
    throw std::invalid_argument("unknown packing family: " + std::string(name));
}

PackingSum packing_sum(const GridFunction& f, const Packing& pk, const PackingObjective& obj) {
    if (!validate_packing(pk, f)) throw std::invalid_argument("invalid packing");
    PackingSum s;
    for (const Cube& q : pk.cubes) {
        const double m = cube_measure(f, q);
        s.measure += m;
        const auto rep = oscillation_report(f, q);
        if (obj.kind == PackingKind::garo)
            s.value += rep.double_osc / m;
        else
            s.value += m * std::pow(rep.mean_osc, obj.p);
    }
    return s;
}

double evaluate_witness(const GridFunction& f, const NormResult& r) {
    const auto s = packing_sum(f, r.witness, r.objective);
    if (r.objective.kind == PackingKind::jn) return std::pow(s.value, 1.0 / r.objective.p);
    if (s.measure <= 0.0) return 0.0;
    return s.value / std::pow(s.measure, r.objective.inverse_conjugate());
}

FrontierOptimum maximize_ratio(const std::vector<double>& best_by_cells, double cell_measure, double inv_conj) {
    FrontierOptimum opt{0.0, best_by_cells.size() > 1 ? 1 : 0};
    bool first = true;
    for (std::size_t c = 1; c < best_by_cells.size(); ++c) {
        const double v = best_by_cells[c];
        if (v == kNegInf) continue;
        const double ratio = v / std::pow(static_cast<double>(c) * cell_measure, inv_conj);
        if (first || ratio > opt.value) {
            opt = {ratio, static_cast<std::int64_t>(c)};
            first = false;
        }
    }
    opt.value = std::max(0.0, opt.value);
    return opt;
}

// ---------------------------------------------------------------------------------------------
// Exhaustive enumeration

std::uint64_t count_packings(int dim, int cells_per_axis, CubeFamily family) {
    constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max() / 4;
    if (family == CubeFamily::dyadic) {
        if (!is_power_of_two(cells_per_axis)) throw std::invalid_argument("dyadic family requires N a power of two");
        std::uint64_t p = 2;
        const std::uint64_t children = std::uint64_t{1} << dim;
        for (int side = 2; side <= cells_per_axis; side *= 2) {
            std::uint64_t prod = 1;
            for (std::uint64_t k = 0; k < children; ++k) prod = (prod > cap / std::max<std::uint64_t>(p, 1)) ? cap : prod * p;
            p = std::min(cap, prod + 1);
        }
        return p;
    }
    if (dim == 1) {
        // c(j) = c(j-1) + sum_{i<j} c(i): cell j-1 unused, or an interval [i, j).
        std::vector<std::uint64_t> c(cells_per_axis + 1, 0);
        c[0] = 1;
        std::uint64_t prefix = 1;
        for (int j = 1; j <= cells_per_axis; ++j) {
            c[j] = std::min(cap, c[j - 1] + prefix);
            prefix = std::min(cap, prefix + c[j]);
        }
        return c[cells_per_axis];
    }
    if (ipow(cells_per_axis, dim) > ExhaustivePackings::kMaxAllGridCells)
        throw std::length_error("all_grid packing count only available for small grids");
    GridFunction probe = GridFunction::constant(dim, cells_per_axis, 1.0, 0.0);
    ExhaustivePackings it(probe, CubeFamily::all_grid);
    return it.count();
}

ExhaustivePackings::ExhaustivePackings(const GridFunction& f, CubeFamily family)
    : dim_(f.dim()), cells_per_axis_(f.cells_per_axis()), family_(family) {
    if (family == CubeFamily::all_grid) {
        if (f.cell_count() > kMaxAllGridCells)
            throw std::length_error("exhaustive all_grid enumeration is limited to 12 cells");
        occupied_.assign(f.cell_count(), 0);
        if (dim_ == 1) {
            count_ = count_packings(1, cells_per_axis_, family);
        } else {
            ExhaustivePackings copy = *this;
            copy.count_ = 0;
            Packing scratch;
            std::uint64_t n = 0;
            while (copy.next(scratch)) ++n;
            count_ = n;
        }
        return;
    }
    if (f.cell_count() > 64) throw std::length_error("exhaustive dyadic enumeration is limited to 64 leaves");
    count_ = count_packings(dim_, cells_per_axis_, family);
    if (count_ > kMaxPackings) throw std::length_error("dyadic packing count exceeds the enumeration guard");
    // Preorder node list.
    std::vector<Cube> order;
    std::vector<std::size_t> end_of;
    auto visit = [&](auto&& self, const Cube& q) -> void {
        const std::size_t id = order.size();
        order.push_back(q);
        end_of.push_back(0);
        if (q.side_cells > 1) {
            const int half = q.side_cells / 2;
            const std::size_t kids = std::size_t{1} << dim_;
            for (std::size_t b = 0; b < kids; ++b) {
                Cube c = q;
                c.side_cells = half;
                for (int k = 0; k < dim_; ++k) c.offset[k] += ((b >> k) & 1U) ? half : 0;
                self(self, c);
            }
        }
        end_of[id] = order.size();
    };
    visit(visit, f.whole_cube());
    dyadic_nodes_ = std::move(order);
    subtree_end_ = std::move(end_of);
}

bool ExhaustivePackings::fits(std::size_t cell, int side) const {
    std::array<int, kMaxDim> c{0, 0, 0};
    std::size_t rest = cell;
    for (int k = 0; k < dim_; ++k) {
        c[k] = static_cast<int>(rest % cells_per_axis_);
        rest /= cells_per_axis_;
        if (c[k] + side > cells_per_axis_) return false;
    }
    const std::size_t count = ipow(side, dim_);
    std::array<int, kMaxDim> local{0, 0, 0};
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t idx = 0;
        for (int k = dim_ - 1; k >= 0; --k) idx = idx * cells_per_axis_ + (c[k] + local[k]);
        if (occupied_[idx]) return false;
        for (int k = 0; k < dim_; ++k) {
            if (++local[k] < side) break;
            local[k] = 0;
        }
    }
    return true;
}

void ExhaustivePackings::mark(std::size_t cell, int side, bool on) {
    std::array<int, kMaxDim> c{0, 0, 0};
    std::size_t rest = cell;
    for (int k = 0; k < dim_; ++k) {
        c[k] = static_cast<int>(rest % cells_per_axis_);
        rest /= cells_per_axis_;
    }
    const std::size_t count = ipow(side, dim_);
    std::array<int, kMaxDim> local{0, 0, 0};
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t idx = 0;
        for (int k = dim_ - 1; k >= 0; --k) idx = idx * cells_per_axis_ + (c[k] + local[k]);
        occupied_[idx] = on ? 1 : 0;
        for (int k = 0; k < dim_; ++k) {
            if (++local[k] < side) break;
            local[k] = 0;
        }
    }
}

void ExhaustivePackings::fill_all_grid(std::size_t from) {
    for (std::size_t x = from; x < occupied_.size(); ++x)
        if (!occupied_[x]) stack_.push_back({x, 0});
}

void ExhaustivePackings::fill_dyadic(std::size_t from) {
    for (std::size_t i = from; i < dyadic_nodes_.size(); ++i) stack_.push_back({i, 0});
}

bool ExhaustivePackings::advance_all_grid() {
    while (!stack_.empty()) {
        Decision d = stack_.back();
        stack_.pop_back();
        if (d.choice > 0) mark(d.cell, d.choice, false);
        for (int s = d.choice + 1; s <= cells_per_axis_; ++s) {
            if (!fits(d.cell, s)) continue;
            mark(d.cell, s, true);
            stack_.push_back({d.cell, s});
            fill_all_grid(d.cell + 1);
            return true;
        }
    }
    return false;
}

bool ExhaustivePackings::advance_dyadic() {
    while (!stack_.empty()) {
        Decision d = stack_.back();
        stack_.pop_back();
        if (d.choice == 0) {
            stack_.push_back({d.cell, 1});
            fill_dyadic(subtree_end_[d.cell]);
            return true;
        }
    }
    return false;
}

void ExhaustivePackings::emit(Packing& out) const {
    out.cubes.clear();
    for (const Decision& d : stack_) {
        if (d.choice == 0) continue;
        if (family_ == CubeFamily::dyadic) {
            out.cubes.push_back(dyadic_nodes_[d.cell]);
        } else {
            Cube q;
            q.side_cells = d.choice;
            std::size_t rest = d.cell;
            for (int k = 0; k < dim_; ++k) {
                q.offset[k] = static_cast<int>(rest % cells_per_axis_);
                rest /= cells_per_axis_;
            }
            out.cubes.push_back(q);
        }
    }
}

bool ExhaustivePackings::next(Packing& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        if (family_ == CubeFamily::dyadic)
            fill_dyadic(0);
        else
            fill_all_grid(0);
        emit(out);
        return true;
    }
    const bool more = family_ == CubeFamily::dyadic ? advance_dyadic() : advance_all_grid();
    if (!more) {
        done_ = true;
        return false;
    }
    emit(out);
    return true;
}

namespace {

std::uint64_t cube_key(const Cube& q) {
    std::uint64_t key = static_cast<std::uint64_t>(q.side_cells);
    for (int k = 0; k < kMaxDim; ++k) key = key * 4099 + static_cast<std::uint64_t>(q.offset[k]);
    return key;
}

}  // namespace

std::vector<NormResult> exhaustive_norms(const GridFunction& f, CubeFamily family,
                                         const std::vector<PackingObjective>& objectives) {
    std::unordered_map<std::uint64_t, OscillationReport> cache;
    auto report = [&](const Cube& q) -> const OscillationReport& {
        auto [it, inserted] = cache.try_emplace(cube_key(q));
        if (inserted) it->second = oscillation_report(f, q);
        return it->second;
    };
    std::vector<NormResult> best(objectives.size());
    std::vector<bool> seen(objectives.size(), false);
    for (std::size_t k = 0; k < objectives.size(); ++k) {
        best[k].objective = objectives[k];
        best[k].family = family == CubeFamily::dyadic ? NormFamily::dyadic : NormFamily::exhaustive;
    }
    ExhaustivePackings it(f, family);
    Packing pk;
    while (it.next(pk)) {
        double measure = 0.0, garo_sum = 0.0;
        for (const Cube& q : pk.cubes) {
            const double m = cube_measure(f, q);
            measure += m;
            garo_sum += report(q).double_osc / m;
        }
        for (std::size_t k = 0; k < objectives.size(); ++k) {
            const auto& obj = objectives[k];
            double score;
            if (obj.kind == PackingKind::garo) {
                if (pk.cubes.empty()) continue;
                score = garo_sum / std::pow(measure, obj.inverse_conjugate());
            } else {
                double s = 0.0;
                for (const Cube& q : pk.cubes) s += cube_measure(f, q) * std::pow(report(q).mean_osc, obj.p);
                score = s;
            }
            if (!seen[k] || score > best[k].value) {
                seen[k] = true;
                best[k].value = score;
                best[k].witness = pk;
            }
        }
    }
    for (auto& r : best)
        if (r.objective.kind == PackingKind::jn) r.value = std::pow(r.value, 1.0 / r.objective.p);
    return best;
}

// ---------------------------------------------------------------------------------------------
// Engine

PackingEngine::PackingEngine(const GridFunction& f, NormFamily family, Exec exec) : f_(f), family_(family) {
    switch (family) {
        case NormFamily::all_grid:
            if (f.dim() != 1)
                throw std::invalid_argument("all_grid packing norms are computed exactly only in 1D");
            stats_ = cube_stats(f, CubeFamily::all_grid, exec);
            build_interval_dp();
            break;
        case NormFamily::dyadic:
            stats_ = cube_stats(f, CubeFamily::dyadic, exec);
            build_dyadic();
            break;
        case NormFamily::exhaustive:
            build_exhaustive();
            break;
    }
}

const CubeStats& PackingEngine::stats() const {
    if (!stats_) throw std::logic_error("exhaustive engine keeps no cube table");
    return *stats_;
}

void PackingEngine::build_interval_dp() {
    const int n = f_.cells_per_axis();
    const auto& st = *stats_;
    // best[j][c]: largest oscillation sum over packings inside [0, j) using exactly c cells.
    std::vector<std::vector<double>> best(n + 1);
    choice_.assign(n + 1, {});
    best[0] = {0.0};
    choice_[0] = {-1};
    for (int j = 1; j <= n; ++j) {
        auto& row = best[j];
        auto& ch = choice_[j];
        row.assign(j + 1, kNegInf);
        ch.assign(j + 1, -1);
        std::copy(best[j - 1].begin(), best[j - 1].end(), row.begin());
        for (int i = 0; i < j; ++i) {
            const int len = j - i;
            const std::size_t idx = interval_index(n, i, len);
            const double w = st.double_osc[idx] / st.measure[idx];
            const auto& prev = best[i];
            for (int c = 0; c <= i; ++c) {
                const double cand = prev[c] + w;
                if (cand > row[c + len]) {
                    row[c + len] = cand;
                    ch[c + len] = i;
                }
            }
        }
    }
    best_by_cells_ = best[n];
}

void PackingEngine::build_dyadic() {
    const auto& st = *stats_;
    const int dim = f_.dim();
    const int n = f_.cells_per_axis();
    const std::size_t kids = std::size_t{1} << dim;
    nodes_.assign(st.size(), {});
    // Level starts in the dyadic ordering.
    std::vector<std::size_t> level_start{0};
    std::vector<int> level_per_axis{1};
    for (int side = n, per_axis = 1; side > 1; side /= 2, per_axis *= 2) {
        level_start.push_back(level_start.back() + ipow(per_axis, dim));
        level_per_axis.push_back(per_axis * 2);
    }
    const int levels = static_cast<int>(level_start.size());
    for (int lev = levels - 1; lev >= 0; --lev) {
        const int per_axis = level_per_axis[lev];
        const std::size_t count = ipow(per_axis, dim);
        for (std::size_t pos = 0; pos < count; ++pos) {
            const std::size_t id = level_start[lev] + pos;
            NodeTable& node = nodes_[id];
            const std::size_t cells = st.cells(id, dim);
            const double w = st.double_osc[id] / st.measure[id];
            if (lev == levels - 1) {
                node.best = {0.0, w};
                node.take = {0, 1};
                continue;
            }
            // Children at the next level, in row-major bit order.
            std::array<int, kMaxDim> p{0, 0, 0};
            std::size_t rest = pos;
            for (int k = 0; k < dim; ++k) {
                p[k] = static_cast<int>(rest % per_axis);
                rest /= per_axis;
            }
            std::vector<std::size_t> child(kids);
            for (std::size_t b = 0; b < kids; ++b) {
                std::size_t idx = 0;
                for (int k = dim - 1; k >= 0; --k) idx = idx * (2 * per_axis) + (2 * p[k] + ((b >> k) & 1U));
                child[b] = level_start[lev + 1] + idx;
            }
            std::vector<double> acc = nodes_[child[0]].best;
            node.split.assign(kids, {});
            for (std::size_t b = 1; b < kids; ++b) {
                const auto& cb = nodes_[child[b]].best;
                std::vector<double> next(acc.size() + cb.size() - 1, kNegInf);
                std::vector<std::int32_t> split(next.size(), 0);
                for (std::size_t a = 0; a < acc.size(); ++a) {
                    if (acc[a] == kNegInf) continue;
                    for (std::size_t c = 0; c < cb.size(); ++c) {
                        if (cb[c] == kNegInf) continue;
                        const double cand = acc[a] + cb[c];
                        if (cand > next[a + c]) {
                            next[a + c] = cand;
                            split[a + c] = static_cast<std::int32_t>(c);
                        }
                    }
                }
                acc = std::move(next);
                node.split[b] = std::move(split);
            }
            node.take.assign(cells + 1, 0);
            if (w > acc[cells]) {
                acc[cells] = w;
                node.take[cells] = 1;
            }
            node.best = std::move(acc);
        }
    }
    best_by_cells_ = nodes_[0].best;
}

void PackingEngine::collect_dyadic(std::size_t node_id, std::int64_t cells, Packing& out) const {
    if (cells == 0) return;
    const NodeTable& node = nodes_[node_id];
    const auto& st = *stats_;
    if (node.take[cells]) {
        out.cubes.push_back(st.cubes[node_id]);
        return;
    }
    // Recover children ids the same way build_dyadic laid them out.
    const int dim = f_.dim();
    const int n = f_.cells_per_axis();
    const Cube& q = st.cubes[node_id];
    const int half = q.side_cells / 2;
    const int per_axis_child = n / half;
    std::size_t level_start = 0;
    for (int side = n, per_axis = 1; side > half; side /= 2, per_axis *= 2) level_start += ipow(per_axis, dim);
    const std::size_t kids = std::size_t{1} << dim;
    std::vector<std::size_t> child(kids);
    for (std::size_t b = 0; b < kids; ++b) {
        std::size_t idx = 0;
        for (int k = dim - 1; k >= 0; --k) idx = idx * per_axis_child + (q.offset[k] / half + ((b >> k) & 1U));
        child[b] = level_start + idx;
    }
    std::int64_t rest = cells;
    for (std::size_t b = kids - 1; b >= 1; --b) {
        const std::int64_t c = node.split[b][rest];
        collect_dyadic(child[b], c, out);
        rest -= c;
    }
    collect_dyadic(child[0], rest, out);
}

void PackingEngine::build_exhaustive() {
    ExhaustivePackings it(f_, CubeFamily::all_grid);
    std::unordered_map<std::uint64_t, OscillationReport> cache;
    best_by_cells_.assign(f_.cell_count() + 1, kNegInf);
    exhaustive_witness_.assign(f_.cell_count() + 1, {});
    Packing pk;
    while (it.next(pk)) {
        std::size_t cells = 0;
        double v = 0.0;
        for (const Cube& q : pk.cubes) {
            auto [pos, inserted] = cache.try_emplace(cube_key(q));
            if (inserted) pos->second = oscillation_report(f_, q);
            cells += cube_cell_count(f_, q);
            v += pos->second.double_osc / cube_measure(f_, q);
        }
        if (v > best_by_cells_[cells]) {
            best_by_cells_[cells] = v;
            exhaustive_witness_[cells] = pk;
        }
    }
}

Packing PackingEngine::reconstruct_garo(std::int64_t cells) const {
    Packing out;
    switch (family_) {
        case NormFamily::exhaustive:
            return exhaustive_witness_[cells];
        case NormFamily::dyadic:
            collect_dyadic(0, cells, out);
            break;
        case NormFamily::all_grid: {
            int j = f_.cells_per_axis();
            std::int64_t c = cells;
            while (j > 0 && c > 0) {
                const int i = choice_[j][c];
                if (i < 0) {
                    --j;
                    continue;
                }
                Cube q;
                q.offset[0] = i;
                q.side_cells = j - i;
                out.cubes.push_back(q);
                c -= j - i;
                j = i;
            }
            std::reverse(out.cubes.begin(), out.cubes.end());
            break;
        }
    }
    return out;
}

NormResult PackingEngine::garo(double p) const {
    NormResult r;
    r.objective = PackingObjective::garo(p);
    r.family = family_;
    const auto opt = maximize_ratio(best_by_cells_, f_.cell_measure(), r.objective.inverse_conjugate());
    r.value = opt.value;
    r.witness = reconstruct_garo(opt.cells);
    return r;
}

NormResult PackingEngine::jn(double p) const {
    NormResult r;
    r.objective = PackingObjective::jn(p);
    r.family = family_;
    if (family_ == NormFamily::exhaustive) {
        auto res = exhaustive_norms(f_, CubeFamily::all_grid, {r.objective});
        return res.front();
    }
    const auto& st = *stats_;
    std::vector<double> w(st.size());
    for (std::size_t i = 0; i < st.size(); ++i) w[i] = st.measure[i] * std::pow(st.mean_osc[i], p);

    if (family_ == NormFamily::all_grid) {
        // Weighted interval scheduling over right endpoints.
        const int n = f_.cells_per_axis();
        std::vector<double> best(n + 1, 0.0);
        std::vector<int> from(n + 1, -1);
        for (int j = 1; j <= n; ++j) {
            best[j] = best[j - 1];
            from[j] = -1;
            for (int i = 0; i < j; ++i) {
                const double cand = best[i] + w[interval_index(n, i, j - i)];
                if (cand > best[j]) {
                    best[j] = cand;
                    from[j] = i;
                }
            }
        }
        for (int j = n; j > 0;) {
            if (from[j] < 0) {
                --j;
                continue;
            }
            Cube q;
            q.offset[0] = from[j];
            q.side_cells = j - from[j];
            r.witness.cubes.push_back(q);
            j = from[j];
        }
        std::reverse(r.witness.cubes.begin(), r.witness.cubes.end());
        r.value = std::pow(best[n], 1.0 / p);
        return r;
    }

    // Dyadic tree: best(Q) = max(w(Q), sum over children of best).
    const int dim = f_.dim();
    const std::size_t kids = std::size_t{1} << dim;
    const std::size_t m = st.size();
    std::vector<double> best(m, 0.0);
    std::vector<std::uint8_t> take(m, 0);
    // Children of node i in level order: compute from geometry via a map from cube to index.
    std::unordered_map<std::uint64_t, std::size_t> index;
    index.reserve(m);
    for (std::size_t i = 0; i < m; ++i) index.emplace(cube_key(st.cubes[i]), i);
    auto children = [&](std::size_t i) {
        std::vector<std::size_t> c;
        const Cube& q = st.cubes[i];
        if (q.side_cells == 1) return c;
        const int half = q.side_cells / 2;
        for (std::size_t b = 0; b < kids; ++b) {
            Cube cq = q;
            cq.side_cells = half;
            for (int k = 0; k < dim; ++k) cq.offset[k] += ((b >> k) & 1U) ? half : 0;
            c.push_back(index.at(cube_key(cq)));
        }
        return c;
    };
    for (std::size_t i = m; i-- > 0;) {
        double below = 0.0;
        for (std::size_t c : children(i)) below += best[c];
        if (w[i] > below) {
            best[i] = w[i];
            take[i] = 1;
        } else {
            best[i] = below;
        }
    }
    std::vector<std::size_t> work{0};
    while (!work.empty()) {
        const std::size_t i = work.back();
        work.pop_back();
        if (take[i]) {
            r.witness.cubes.push_back(st.cubes[i]);
            continue;
        }
        if (best[i] <= 0.0) continue;
        for (std::size_t c : children(i)) work.push_back(c);
    }
    r.value = std::pow(best[0], 1.0 / p);
    return r;
}

ParetoFrontier PackingEngine::frontier() const {
    ParetoFrontier fr;
    const double cm = f_.cell_measure();
    double top = kNegInf;
    for (std::size_t c = 0; c < best_by_cells_.size(); ++c) {
        const double v = best_by_cells_[c];
        if (v == kNegInf || v <= top) continue;
        top = v;
        fr.points.push_back({static_cast<std::int64_t>(c), static_cast<double>(c) * cm, v});
    }
    return fr;
}

NormResult jn_norm(const GridFunction& f, double p, NormFamily family) {
    PackingObjective::jn(p);
    return PackingEngine(f, family).jn(p);
}

NormResult garo_norm(const GridFunction& f, double p, NormFamily family) {
    PackingObjective::garo(p);
    return PackingEngine(f, family).garo(p);
}

ParetoFrontier pareto_frontier(const GridFunction& f) { return PackingEngine(f, NormFamily::dyadic).frontier(); }

}  // namespace garo
