#include "garo/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "garo/oscillation.hpp"
#include "garo/rearrange.hpp"

namespace garo {

std::uint64_t SplitMix64::next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

namespace {

constexpr std::array<std::pair<GeneratorKind, std::string_view>, 8> kKindNames{{
    {GeneratorKind::power, "power"},
    {GeneratorKind::log, "log"},
    {GeneratorKind::step, "step"},
    {GeneratorKind::linear, "linear"},
    {GeneratorKind::sawtooth, "sawtooth"},
    {GeneratorKind::random_pc, "random_pc"},
    {GeneratorKind::indicator, "indicator"},
    {GeneratorKind::bump, "bump"},
}};

const std::map<GeneratorKind, std::map<std::string, double>>& default_params() {
    static const std::map<GeneratorKind, std::map<std::string, double>> d{
        {GeneratorKind::power, {{"alpha", 0.5}, {"x0", 0.0}, {"y0", 0.0}}},
        {GeneratorKind::log, {{"x0", 0.0}, {"y0", 0.0}}},
        {GeneratorKind::step, {{"at", 0.3}, {"height", 1.0}}},
        {GeneratorKind::linear, {{"slope", 1.0}}},
        {GeneratorKind::sawtooth, {{"freq", 4.0}}},
        {GeneratorKind::random_pc, {{"block", 1.0}}},
        {GeneratorKind::indicator, {{"at", 0.5}}},
        {GeneratorKind::bump, {{"radius", 0.4}}},
    };
    return d;
}

bool is_random(GeneratorKind k) { return k == GeneratorKind::random_pc; }

}  // namespace

std::string_view to_string(GeneratorKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "?";
}

GeneratorKind parse_generator_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames)
        if (n == name) return k;
    throw std::invalid_argument("unknown generator kind: " + std::string(name));
}

double GeneratorSpec::param(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::string GeneratorSpec::label() const {
    std::string out(to_string(kind));
    const auto& defaults = default_params().at(kind);
    char sep = ':';
    for (const auto& [key, value] : params) {
        auto d = defaults.find(key);
        if (d != defaults.end() && d->second == value) continue;
        out += sep;
        out += key + "=" + format_number(value);
        sep = ';';
    }
    return out;
}

GeneratorSpec parse_generator_spec(std::string_view text, int dim, int cells_per_axis, double side,
                                   std::uint64_t seed) {
    GeneratorSpec spec;
    const auto colon = text.find(':');
    spec.kind = parse_generator_kind(text.substr(0, colon));
    spec.dim = dim;
    spec.cells_per_axis = cells_per_axis;
    spec.side = side;
    spec.seed = seed;
    const auto& defaults = default_params().at(spec.kind);
    if (colon != std::string_view::npos) {
        std::string rest(text.substr(colon + 1));
        const char sep = rest.find(';') != std::string::npos ? ';' : ',';
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, sep)) {
            if (item.empty()) continue;
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("generator parameter needs key=value: " + item);
            const std::string key = item.substr(0, eq);
            if (!defaults.count(key))
                throw std::invalid_argument("unknown parameter '" + key + "' for generator " +
                                            std::string(to_string(spec.kind)));
            std::size_t used = 0;
            const double value = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument("bad number in generator spec: " + item);
            spec.params[key] = value;
        }
    }
    return spec;
}

GridFunction discrete_gradient(const GridFunction& f) {
    const int n = f.dim();
    const int N = f.cells_per_axis();
    const double scale = N / f.side();
    const auto v = f.values();
    std::vector<double> g(f.cell_count(), 0.0);
    std::size_t stride = 1;
    for (int axis = 0; axis < n; ++axis) {
        for (std::size_t c = 0; c < g.size(); ++c) {
            const int i = static_cast<int>((c / stride) % N);
            double d = 0.0;
            if (N == 1)
                d = 0.0;
            else if (i == 0)
                d = v[c + stride] - v[c];
            else if (i == N - 1)
                d = v[c] - v[c - stride];
            else
                d = 0.5 * (v[c + stride] - v[c - stride]);
            d *= scale;
            g[c] += d * d;
        }
        stride *= static_cast<std::size_t>(N);
    }
    for (double& x : g) x = std::sqrt(x);
    return f.with_values(std::move(g));
}

Generated generate(const GeneratorSpec& spec) {
    const int n = spec.dim;
    const int N = spec.cells_per_axis;
    if (n < 1 || n > kMaxDim || N < 1 || !(spec.side > 0.0)) throw std::invalid_argument("invalid generator grid");
    const double L = spec.side;
    const double h = L / N;
    std::size_t count = 1;
    for (int k = 0; k < n; ++k) count *= static_cast<std::size_t>(N);
    std::vector<double> values(count);

    auto midpoint = [&](std::size_t c) {
        std::array<double, kMaxDim> x{};
        std::size_t rest = c;
        for (int k = 0; k < n; ++k) {
            x[k] = (static_cast<double>(rest % N) + 0.5) * h;
            rest /= N;
        }
        return x;
    };

    // Cell containing the point (x0, y0, 0), used by the singular kinds.
    auto singular_cell = [&](double x0, double y0) {
        std::size_t c = 0, stride = 1;
        const std::array<double, 3> pt{x0, y0, 0.0};
        for (int k = 0; k < n; ++k) {
            const int i = std::clamp(static_cast<int>(std::floor(pt[k] / h)), 0, N - 1);
            c += static_cast<std::size_t>(i) * stride;
            stride *= N;
        }
        return c;
    };

    auto radial = [&](double x0, double y0, auto&& fn) {
        const std::array<double, 3> pt{x0, y0, 0.0};
        for (std::size_t c = 0; c < count; ++c) {
            const auto x = midpoint(c);
            double r2 = 0.0;
            for (int k = 0; k < n; ++k) r2 += (x[k] - pt[k]) * (x[k] - pt[k]);
            values[c] = fn(std::sqrt(r2));
        }
        if (N > 1) {
            const std::size_t s = singular_cell(x0, y0);
            const bool last = static_cast<int>(s % N) == N - 1;
            values[s] = values[last ? s - 1 : s + 1];
        }
    };

    switch (spec.kind) {
        case GeneratorKind::power: {
            const double alpha = spec.param("alpha", 0.5);
            if (!(alpha > 0.0 && alpha < n)) throw std::invalid_argument("power generator needs 0 < alpha < n");
            radial(spec.param("x0", 0.0), spec.param("y0", 0.0), [&](double r) { return std::pow(r, -alpha); });
            break;
        }
        case GeneratorKind::log:
            radial(spec.param("x0", 0.0), spec.param("y0", 0.0), [](double r) { return -std::log(r); });
            break;
        case GeneratorKind::step: {
            const double at = spec.param("at", 0.3) * L;
            const double height = spec.param("height", 1.0);
            for (std::size_t c = 0; c < count; ++c) values[c] = midpoint(c)[0] >= at ? height : 0.0;
            break;
        }
        case GeneratorKind::linear: {
            const double slope = spec.param("slope", 1.0);
            for (std::size_t c = 0; c < count; ++c) {
                const auto x = midpoint(c);
                double s = 0.0;
                for (int k = 0; k < n; ++k) s += x[k];
                values[c] = slope * s;
            }
            break;
        }
        case GeneratorKind::sawtooth: {
            const double freq = spec.param("freq", 4.0);
            for (std::size_t c = 0; c < count; ++c) {
                const double y = freq * midpoint(c)[0] / L;
                values[c] = y - std::floor(y);
            }
            break;
        }
        case GeneratorKind::random_pc: {
            const double b = spec.param("block", 1.0);
            if (!(b >= 1.0) || b != std::floor(b)) throw std::invalid_argument("random_pc block must be a positive integer");
            const int block = static_cast<int>(b);
            const int blocks = (N + block - 1) / block;
            std::size_t nblocks = 1;
            for (int k = 0; k < n; ++k) nblocks *= static_cast<std::size_t>(blocks);
            SplitMix64 rng(spec.seed);
            std::vector<double> draw(nblocks);
            for (double& d : draw) d = 2.0 * rng.uniform() - 1.0;
            for (std::size_t c = 0; c < count; ++c) {
                std::size_t rest = c, bi = 0, stride = 1;
                for (int k = 0; k < n; ++k) {
                    bi += static_cast<std::size_t>(static_cast<int>(rest % N) / block) * stride;
                    rest /= N;
                    stride *= blocks;
                }
                values[c] = draw[bi];
            }
            break;
        }
        case GeneratorKind::indicator: {
            const double at = spec.param("at", 0.5) * L;
            for (std::size_t c = 0; c < count; ++c) values[c] = midpoint(c)[0] < at ? 1.0 : 0.0;
            break;
        }
        case GeneratorKind::bump: {
            const double radius = spec.param("radius", 0.4) * L;
            if (!(radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
            for (std::size_t c = 0; c < count; ++c) {
                const auto x = midpoint(c);
                double r2 = 0.0;
                for (int k = 0; k < n; ++k) r2 += (x[k] - 0.5 * L) * (x[k] - 0.5 * L);
                const double u = std::max(0.0, 1.0 - r2 / (radius * radius));
                values[c] = u * u;
            }
            break;
        }
    }
    GridFunction f(n, N, L, std::move(values));
    GridFunction g = discrete_gradient(f);
    return {std::move(f), std::move(g)};
}

// ---------------------------------------------------------------------------------------------
// Registry

const std::vector<CheckInfo>& check_registry() {
    static const std::vector<CheckInfo> reg{
        {"garo.le.2jn", "garo_p(f) <= 2 jn_p(f)", true},
        {"garo.le.weak", "garo_p(f) <= 2p/(p-1) sup_t t^{1/p} f*(t)", true},
        {"gap.le.garo", "sup_t t^{1/p} (f** - f*)(t) <= 2^{n/p'+1} garo_p(f) + (4/|Q0|)^{1/p'} ||f||_1", false},
        {"weak.from.garo", "||f - f_Q0||*_{L(p,inf)} <= p (2^{n/p'+1} + 4^{1/p'}) garo_p(f - f_Q0)", false},
        {"weak.from.garo.stable", "min slack of weak.from.garo varies < 20% across N (n = 1)", true},
        {"garo_inf.eq.bmo", "garo_inf(f) = sup_Q |Q|^{-2} int_Q int_Q |f(x) - f(y)| dx dy", true},
        {"avg.reconstruct", "g**(t) = int_t^inf (g** - g*)(s) ds/s for g = f - f_Q0", true},
        {"kfunc", "K(t, f; L1, Linf) = t f**(t)", true},
        {"fit.centering", "c(f - f_Q0) = c(f)", true},
        {"sharp.le.maximal", "f#_{1/n}(x) <= c(f) M g(x)", true},
        {"poincare.sub.raw", "garo_{p*}(f) <= 2 c(f) ||g||_p with 1/p* = 1/p - 1/n", true},
        {"poincare.sub", "garo_{p*}(f - f_Q0) <= 2 c(f) ||g||_p with 1/p* = 1/p - 1/n", true},
        {"poincare.sub.weak", "||f - f_Q0||*_{L(p*,inf)} <= c(n,p*) garo_{p*}(f - f_Q0)", false},
        {"poincare.crit", "garo_inf(f - f_Q0) <= 2 c(f) ||g||_n", true},
        {"poincare.crit.bmo", "garo_inf(f - f_Q0) = sup_Q |Q|^{-2} int_Q int_Q |f(x) - f(y)| dx dy", true},
        {"grad.rearr", "f**(t) - f*(t) <= c t^{1/n} g**(t) for 0 < t < |Q0|/2", false},
        {"grad.rearr.finite", "empirical c in f** - f* <= c t^{1/n} g** is finite", true},
        {"grad.rearr.stable", "empirical c in f** - f* <= c t^{1/n} g** varies < 20% across N", true},
        {"grad.rearr.spread", "spread of empirical c in f** - f* <= c t^{1/n} g** across N", false},
        {"weak.gn.l1", "||f - f_Q0||_1 <= c(f) |Q0|^{1/n} ||g||_1", true},
        {"weak.gn", "||f - f_Q0||*_{L(n',inf)} <= c(n) ||g||_1", false},
        {"weak.gn.stable", "c(n) at each refinement <= 1.2 c(n) at the previous one", true},
        {"qp.rearr", "t^{1/n} ((1/t) int_0^t (f** - f*)^q ds)^{1/q} <= C c(f) ((g^p)**(t))^{1/p}", false},
        {"qp.rearr.stable", "empirical C of the (q,p) rearrangement inequality varies < 20% across N", true},
        {"qp.rearr.spread", "spread of empirical C of the (q,p) rearrangement inequality across N", false},
        {"oracle.jn", "packing DP jn_p = exhaustive maximum", true},
        {"oracle.garo", "packing DP garo_p = exhaustive maximum", true},
        {"oracle.witness", "witness packing re-evaluates to the reported norm", true},
    };
    return reg;
}

const CheckInfo& check_info(const std::string& id) {
    const std::string base = id.substr(0, id.find('@'));
    for (const auto& c : check_registry())
        if (c.id == base) return c;
    throw std::out_of_range("unregistered check id: " + id);
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"embeddings", "poincare", "rearrangement", "oracle", "all"};
    return names;
}

// ---------------------------------------------------------------------------------------------
// Suites

namespace {

constexpr double kNoExponent = std::numeric_limits<double>::quiet_NaN();
constexpr double kIdentityTolerance = 1e-9;
constexpr double kOracleTolerance = 1e-10;
constexpr double kStabilityBand = 1.2;

struct Input {
    GeneratorSpec spec;
    std::string label;
};

std::string hex64(std::uint64_t x) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

CheckRecord make_record(const std::string& id, const Input& in, const GridFunction& f, double p) {
    CheckRecord r;
    r.check_id = id;
    r.anchor = check_info(id).anchor;
    r.digest = hex64(fnv1a(f));
    r.seed = in.spec.seed;
    r.kind = in.label;
    r.dim = in.spec.dim;
    r.cells_per_axis = in.spec.cells_per_axis;
    r.p = p;
    return r;
}

CheckRecord upper(CheckRecord r, double lhs, double rhs, double tol) {
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = slack_of(lhs, rhs);
    if (!check_info(r.check_id).exact)
        r.status = CheckStatus::reported;
    else
        r.status = lhs <= rhs * (1.0 + tol) ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

CheckRecord identity(CheckRecord r, double lhs, double rhs, double tol) {
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = slack_of(lhs, rhs);
    const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    r.status = std::fabs(lhs - rhs) <= tol * scale ? CheckStatus::pass : CheckStatus::fail;
    return r;
}

CheckRecord from_item(const std::string& id, const Input& in, const GridFunction& f, double p,
                      const InequalityRecord& item) {
    CheckRecord r = make_record(id, in, f, p);
    r.lhs = item.lhs;
    r.rhs = item.rhs;
    r.slack = item.slack;
    r.status = check_info(id).exact ? item.status : CheckStatus::reported;
    return r;
}

std::vector<std::string> default_generators(const std::string& suite, int dim) {
    if (suite == "embeddings") {
        if (dim == 1) return {"linear", "power", "log", "step", "sawtooth", "indicator", "random_pc"};
        return {"linear", "power", "step", "bump", "random_pc"};
    }
    if (suite == "poincare") return {"linear", "bump", "random_pc"};
    if (suite == "rearrangement") return {"linear", "power", "log", "step", "sawtooth", "random_pc:block=8"};
    return {"random_pc"};
}

std::vector<int> default_resolutions(const std::string& suite, int dim, const SuiteConfig& cfg) {
    if (suite == "oracle") {
        std::vector<int> r;
        for (int N = 4; N <= cfg.max_cells; ++N) r.push_back(N);
        return r;
    }
    if (suite == "poincare") return {16};
    return dim == 1 ? std::vector<int>{64, 256, 1024} : std::vector<int>{8, 16, 32};
}

int default_seeds(const std::string& suite) {
    if (suite == "poincare" || suite == "oracle") return 100;
    return 3;
}

std::vector<int> suite_dims(const std::string& suite, const SuiteConfig& cfg) {
    std::vector<int> dims;
    if (suite == "poincare")
        dims = {2};
    else if (suite == "rearrangement" || suite == "oracle")
        dims = {1};
    else
        dims = {1, 2};
    if (cfg.dim) {
        dims.erase(std::remove_if(dims.begin(), dims.end(), [&](int d) { return d != *cfg.dim; }), dims.end());
    }
    return dims;
}

std::vector<Input> suite_inputs(const std::string& suite, int dim, const SuiteConfig& cfg) {
    const auto gens = cfg.generators.empty() ? default_generators(suite, dim) : cfg.generators;
    const auto res = cfg.resolutions.empty() ? default_resolutions(suite, dim, cfg) : cfg.resolutions;
    const int seeds = cfg.seeds.value_or(default_seeds(suite));
    std::vector<Input> out;
    for (const auto& text : gens) {
        for (int N : res) {
            auto spec = parse_generator_spec(text, dim, N);
            if (is_random(spec.kind)) {
                for (int s = 0; s < seeds; ++s) {
                    spec.seed = cfg.seed0 + static_cast<std::uint64_t>(s);
                    out.push_back({spec, spec.label()});
                }
            } else if (seeds > 0) {
                out.push_back({spec, spec.label()});
            }
        }
    }
    return out;
}

std::vector<NormFamily> packing_families(int dim, int N) {
    std::vector<NormFamily> fams;
    if (dim == 1) fams.push_back(NormFamily::all_grid);
    if (is_power_of_two(N)) fams.push_back(NormFamily::dyadic);
    return fams;
}

std::string at_family(const std::string& id, NormFamily fam) { return id + "@" + std::string(to_string(fam)); }

CubeFamily cube_family_of(NormFamily fam) {
    return fam == NormFamily::dyadic ? CubeFamily::dyadic : CubeFamily::all_grid;
}

// Breakpoints plus seeded uniform points in (0, |Q0|].
std::vector<double> identity_points(const BreakpointProfile& b, std::uint64_t seed, double total, int count) {
    std::vector<double> t(b.breakpoints.begin() + 1, b.breakpoints.end());
    SplitMix64 rng(seed);
    for (int i = 0; i < count; ++i) t.push_back(total * (1.0 - rng.uniform()));
    return t;
}

std::vector<CheckRecord> embeddings_checks(const Input& in, const SuiteConfig& cfg) {
    std::vector<CheckRecord> out;
    const auto gen = generate(in.spec);
    const GridFunction& f = gen.f;
    const int n = f.dim();
    const double volume = f.total_measure();
    const auto centered = f.shifted(-mean(f));
    const auto r_abs = rearrangement(f);
    const auto r_cen = rearrangement(centered);
    const double f_l1 = l1_norm(r_abs);

    for (NormFamily fam : packing_families(n, f.cells_per_axis())) {
        PackingEngine eng(f, fam);
        PackingEngine eng_c(centered, fam);
        for (double p : cfg.p_values) {
            if (!(p > 1.0) || p > kMaxPackingExponent) continue;
            const double garo = eng.garo(p).value;
            const double jn = eng.jn(p).value;
            const double inv_conj = 1.0 - 1.0 / p;
            out.push_back(upper(make_record(at_family("garo.le.2jn", fam), in, f, p), garo, 2.0 * jn, kExactTolerance));
            out.push_back(upper(make_record(at_family("garo.le.weak", fam), in, f, p), garo,
                                2.0 * p / (p - 1.0) * weak_lorentz_norm(r_abs, p), kExactTolerance));
            out.push_back(upper(make_record(at_family("gap.le.garo", fam), in, f, p), weak_oscillation_norm(r_abs, p),
                                std::pow(2.0, n * inv_conj + 1.0) * garo + std::pow(4.0 / volume, inv_conj) * f_l1,
                                kExactTolerance));
            const double garo_c = eng_c.garo(p).value;
            out.push_back(upper(make_record(at_family("weak.from.garo", fam), in, f, p), weak_lorentz_norm(r_cen, p),
                                weak_vs_garo_constant(n, p) * garo_c, kExactTolerance));
        }
        out.push_back(identity(make_record(at_family("garo_inf.eq.bmo", fam), in, f, kInf), eng.garo(kInf).value,
                               bmo_norm_star(eng.stats()).value, kExactTolerance));
    }

    // Pointwise identities of the rearrangement calculus, at the worst evaluation point.
    const auto b = profile(r_cen);
    const auto pts = identity_points(b, fnv1a(f), volume, 100);
    double worst_err = -1.0, worst_lhs = 0.0, worst_rhs = 0.0;
    double kworst = -1.0, klhs = 0.0, krhs = 0.0;
    for (double t : pts) {
        const double a = reconstruct_avg(r_cen, std::min(t, r_cen.total_measure));
        const double e = eval_avg(r_cen, std::min(t, r_cen.total_measure));
        const double err = std::fabs(a - e) / std::max({std::fabs(a), std::fabs(e), 1e-300});
        if (err > worst_err) {
            worst_err = err;
            worst_lhs = a;
            worst_rhs = e;
        }
        const double k1 = k_functional(r_abs, t);
        const double k2 = k_functional_by_truncation(r_abs, t);
        const double kerr = std::fabs(k1 - k2) / std::max({std::fabs(k1), std::fabs(k2), 1e-300});
        if (kerr > kworst) {
            kworst = kerr;
            klhs = k1;
            krhs = k2;
        }
    }
    out.push_back(identity(make_record("avg.reconstruct", in, f, kNoExponent), worst_lhs, worst_rhs, kIdentityTolerance));
    out.push_back(identity(make_record("kfunc", in, f, kNoExponent), klhs, krhs, kIdentityTolerance));
    return out;
}

std::vector<CheckRecord> poincare_checks(const Input& in, const SuiteConfig& cfg) {
    std::vector<CheckRecord> out;
    const auto gen = generate(in.spec);
    const int n = gen.f.dim();
    const NormFamily fam = is_power_of_two(gen.f.cells_per_axis()) ? NormFamily::dyadic : NormFamily::all_grid;
    if (fam == NormFamily::all_grid && n != 1) return out;
    const CubeFamily cf = cube_family_of(fam);

    for (double p : cfg.p_values) {
        if (!(p > 1.0 && p < n)) continue;
        const auto pair = fit_upper_gradient_constant(gen.f, gen.g, p, cf);
        const auto rep = poincare_chain_subcritical(pair, fam);
        const double ps = rep.values.at("p_star");
        out.push_back(from_item(at_family("poincare.sub.raw", fam), in, gen.f, p, rep.item("garo")));
        out.push_back(from_item(at_family("poincare.sub", fam), in, gen.f, p, rep.item("garo_centered")));
        auto w = from_item(at_family("poincare.sub.weak", fam), in, gen.f, ps, rep.item("weak_from_garo"));
        out.push_back(w);
    }
    if (n >= 2) {
        const auto pair = fit_upper_gradient_constant(gen.f, gen.g, n, cf);
        const auto rep = poincare_chain_critical(pair, fam);
        out.push_back(from_item(at_family("poincare.crit", fam), in, gen.f, n, rep.item("garo_inf")));
        out.push_back(from_item(at_family("poincare.crit.bmo", fam), in, gen.f, n, rep.item("bmo_identity")));
        const auto moved = fit_upper_gradient_constant(gen.f.shifted(-mean(gen.f)), gen.g, n, cf);
        out.push_back(identity(make_record(at_family("fit.centering", fam), in, gen.f, n), moved.c_f, pair.c_f,
                               kExactTolerance));
    }
    return out;
}

std::vector<CheckRecord> rearrangement_checks(const Input& in, const SuiteConfig& cfg) {
    std::vector<CheckRecord> out;
    const auto gen = generate(in.spec);
    const GridFunction& f = gen.f;
    const int n = f.dim();
    const auto pair = fit_upper_gradient_constant(f, gen.g, 1.0, CubeFamily::all_grid);

    const auto gr = gradient_rearrangement_check(pair, cfg.log_samples);
    auto rec = from_item("grad.rearr", in, f, 1.0, gr.item("rearranged_gradient"));
    out.push_back(rec);
    auto fin = make_record("grad.rearr.finite", in, f, 1.0);
    fin.lhs = gr.values.at("c_hat");
    fin.rhs = kInf;
    fin.slack = slack_of(fin.lhs, fin.rhs);
    fin.status = std::isfinite(fin.lhs) ? CheckStatus::pass : CheckStatus::fail;
    out.push_back(fin);

    const auto wg = weak_gn_check(pair);
    out.push_back(from_item("weak.gn.l1", in, f, 1.0, wg.item("l1_absorption")));
    out.push_back(from_item("weak.gn", in, f, n == 1 ? kInf : n / (n - 1.0), wg.item("weak_gn")));

    const auto sharp = sharp_maximal(f, 1.0 / n, CubeFamily::all_grid);
    const auto mg = hl_maximal(gen.g, CubeFamily::all_grid);
    double worst = -1.0, sl = 0.0, sr = 0.0;
    for (std::size_t c = 0; c < f.cell_count(); ++c) {
        const double lhs = sharp[c];
        const double rhs = pair.c_f * mg[c];
        const double ratio = lhs == 0.0 ? 0.0 : (rhs > 0.0 ? lhs / rhs : kInf);
        if (ratio > worst) {
            worst = ratio;
            sl = lhs;
            sr = rhs;
        }
    }
    out.push_back(upper(make_record("sharp.le.maximal", in, f, 1.0), sl, sr, kExactTolerance));

    constexpr double kQ = 2.0, kP = 1.5;
    const auto qpair = fit_upper_gradient_constant(f, gen.g, kP, CubeFamily::all_grid, kQ);
    const auto qp = qp_rearrangement_check(qpair, cfg.log_samples);
    out.push_back(from_item("qp.rearr", in, f, kP, qp.item("qp_rearranged")));
    return out;
}

std::vector<CheckRecord> oracle_checks(const Input& in, const SuiteConfig& cfg) {
    std::vector<CheckRecord> out;
    const auto gen = generate(in.spec);
    const GridFunction& f = gen.f;
    std::vector<PackingObjective> objs;
    for (double p : cfg.p_values) {
        if (!(p > 1.0) || p > kMaxPackingExponent) continue;
        objs.push_back(PackingObjective::jn(p));
        objs.push_back(PackingObjective::garo(p));
    }
    objs.push_back(PackingObjective::garo(kInf));

    for (NormFamily fam : packing_families(1, f.cells_per_axis())) {
        const auto exact = exhaustive_norms(f, cube_family_of(fam), objs);
        PackingEngine eng(f, fam);
        for (std::size_t i = 0; i < objs.size(); ++i) {
            const auto& o = objs[i];
            const auto r = o.kind == PackingKind::jn ? eng.jn(o.p) : eng.garo(o.p);
            const std::string id = o.kind == PackingKind::jn ? "oracle.jn" : "oracle.garo";
            auto rec = identity(make_record(at_family(id, fam), in, f, o.p), r.value, exact[i].value, kOracleTolerance);
            // Both sides are exactly zero for constant inputs.
            if (r.value == 0.0 && exact[i].value == 0.0) rec.status = CheckStatus::pass;
            out.push_back(rec);
            auto wit = identity(make_record(at_family("oracle.witness", fam), in, f, o.p), evaluate_witness(f, r),
                                r.value, kOracleTolerance);
            if (wit.lhs == 0.0 && wit.rhs == 0.0) wit.status = CheckStatus::pass;
            out.push_back(wit);
        }
    }
    return out;
}

using SuiteFn = std::function<std::vector<CheckRecord>(const Input&, const SuiteConfig&)>;

std::vector<CheckRecord> run_tasks(const std::vector<Input>& inputs, const SuiteConfig& cfg, const SuiteFn& fn) {
    std::vector<std::vector<CheckRecord>> slots(inputs.size());
    std::vector<std::string> errors(inputs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(inputs.size()); ++i) {
        try {
            slots[i] = fn(inputs[i], cfg);
        } catch (const std::exception& e) {
            errors[i] = inputs[i].label + " N=" + std::to_string(inputs[i].spec.cells_per_axis) + ": " + e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error("suite input failed: " + e);
    std::vector<CheckRecord> out;
    for (auto& s : slots) out.insert(out.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
    return out;
}

// Ratio of largest to smallest value, infinite when any value is zero or not finite.
double spread(const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    if (!std::isfinite(*hi) || !(*lo > 0.0)) return kInf;
    return *hi / *lo;
}

CheckRecord band_record(const std::string& id, const CheckRecord& like, double p, double observed) {
    CheckRecord r;
    r.check_id = id;
    r.anchor = check_info(id).anchor;
    r.seed = like.seed;
    r.kind = like.kind;
    r.dim = like.dim;
    r.cells_per_axis = 0;
    r.p = p;
    return upper(r, observed, kStabilityBand, 0.0);
}

bool has_weak_limit(const std::string& kind, double p) {
    const auto spec = parse_generator_spec(kind, 1, 2);
    return spec.kind != GeneratorKind::power || spec.param("alpha", 0.5) * p <= 1.0;
}

struct SeriesKey {
    std::string id, kind, family;
    std::uint64_t seed;
    double p;
    bool operator<(const SeriesKey& o) const {
        return std::tie(id, kind, family, seed, p) < std::tie(o.id, o.kind, o.family, o.seed, o.p);
    }
};

// Refinement-stability records computed from one suite's per-resolution records.
std::vector<CheckRecord> stability_records(const std::vector<CheckRecord>& recs) {
    std::vector<CheckRecord> out;

    // Empirical constants per exemplar, ordered by resolution.
    std::map<SeriesKey, std::map<int, std::pair<double, CheckRecord>>> series;
    for (const auto& r : recs) {
        if (r.check_id != "grad.rearr" && r.check_id != "weak.gn" && r.check_id != "qp.rearr") continue;
        const double c = r.lhs == 0.0 ? 0.0 : (r.rhs > 0.0 ? r.lhs / r.rhs : kInf);
        series[{r.check_id, r.kind, "", r.seed, r.p}][r.cells_per_axis] = {c, r};
    }
    for (const auto& [key, byN] : series) {
        if (byN.size() < 2) continue;
        std::vector<double> cs;
        for (const auto& [N, v] : byN) cs.push_back(v.first);
        const CheckRecord& like = byN.begin()->second.second;
        const std::string base = like.kind.substr(0, like.kind.find(':'));
        // |x|^{-alpha} has gradient outside every L^p with p > 1, so its (q,p) constant has no limit.
        const bool exemplar = base == "linear" || (base == "power" && key.id == "grad.rearr");
        if (key.id == "weak.gn") {
            double worst = 0.0;
            for (std::size_t i = 1; i < cs.size(); ++i) {
                if (cs[i] == 0.0) continue;
                worst = std::max(worst, cs[i - 1] > 0.0 ? cs[i] / cs[i - 1] : kInf);
            }
            out.push_back(band_record("weak.gn.stable", like, like.p, worst));
        } else {
            const std::string id = key.id + (exemplar ? ".stable" : ".spread");
            const bool all_zero = std::all_of(cs.begin(), cs.end(), [](double c) { return c == 0.0; });
            out.push_back(band_record(id, like, like.p, all_zero ? 1.0 : spread(cs)));
        }
    }

    // Minimum slack of the assembled weak bound over the 1D inputs at each resolution. Inputs
    // outside L(p,inf) in the limit (power with alpha p > 1) have no limiting slack and are left out.
    std::map<std::pair<std::string, double>, std::map<int, double>> min_slack;
    for (const auto& r : recs) {
        if (r.check_id.rfind("weak.from.garo@", 0) != 0 || r.dim != 1 || r.lhs == 0.0) continue;
        if (!has_weak_limit(r.kind, r.p)) continue;
        auto& m = min_slack[{r.check_id.substr(r.check_id.find('@')), r.p}];
        auto it = m.find(r.cells_per_axis);
        if (it == m.end() || r.slack < it->second) m[r.cells_per_axis] = r.slack;
    }
    for (const auto& [key, byN] : min_slack) {
        if (byN.size() < 2) continue;
        std::vector<double> s;
        for (const auto& [N, v] : byN) s.push_back(v);
        CheckRecord like;
        like.kind = "all";
        like.dim = 1;
        out.push_back(band_record("weak.from.garo.stable" + key.first, like, key.second, spread(s)));
    }
    return out;
}

std::vector<CheckRecord> run_one(const std::string& suite, const SuiteConfig& cfg) {
    SuiteFn fn;
    if (suite == "embeddings")
        fn = embeddings_checks;
    else if (suite == "poincare")
        fn = poincare_checks;
    else if (suite == "rearrangement")
        fn = rearrangement_checks;
    else if (suite == "oracle")
        fn = oracle_checks;
    else
        throw std::invalid_argument("unknown suite: " + suite);

    std::vector<CheckRecord> out;
    for (int dim : suite_dims(suite, cfg)) {
        const auto inputs = suite_inputs(suite, dim, cfg);
        auto recs = run_tasks(inputs, cfg, fn);
        if (dim == 1) {
            auto extra = stability_records(recs);
            recs.insert(recs.end(), extra.begin(), extra.end());
        }
        out.insert(out.end(), recs.begin(), recs.end());
    }
    return out;
}

}  // namespace

std::vector<CheckRecord> run_suite(const std::string& suite, const SuiteConfig& config) {
    std::vector<CheckRecord> out;
    if (suite == "all") {
        for (const auto& s : suite_names()) {
            if (s == "all") continue;
            auto part = run_one(s, config);
            out.insert(out.end(), part.begin(), part.end());
        }
    } else {
        out = run_one(suite, config);
    }
    std::stable_sort(out.begin(), out.end(), [](const CheckRecord& a, const CheckRecord& b) {
        return std::tie(a.check_id, a.seed) < std::tie(b.check_id, b.seed);
    });
    return out;
}

// ---------------------------------------------------------------------------------------------
// Reports

ReportFormat parse_report_format(std::string_view name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "json") return ReportFormat::json;
    throw std::invalid_argument("unknown report format: " + std::string(name));
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::uint64_t fnv1a(const GridFunction& f) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](const void* data, std::size_t len) {
        const auto* b = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h ^= b[i];
            h *= 1099511628211ULL;
        }
    };
    const int dim = f.dim(), N = f.cells_per_axis();
    const double side = f.side();
    mix(&dim, sizeof dim);
    mix(&N, sizeof N);
    mix(&side, sizeof side);
    mix(f.values().data(), f.values().size() * sizeof(double));
    return h;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

nlohmann::ordered_json number_json(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return nullptr;
    return format_number(x);
}

nlohmann::ordered_json cube_json(const Cube& c, int dim) {
    nlohmann::ordered_json j;
    j["offset"] = std::vector<int>(c.offset.begin(), c.offset.begin() + dim);
    j["side_cells"] = c.side_cells;
    return j;
}

}  // namespace

bool any_failed(const std::vector<CheckRecord>& records) {
    return std::any_of(records.begin(), records.end(), [](const auto& r) { return r.status == CheckStatus::fail; });
}

std::string emit_report(const std::vector<CheckRecord>& records, ReportFormat format) {
    if (format == ReportFormat::csv) {
        std::string out = std::string(kCsvHeader) + "\n";
        for (const auto& r : records) {
            out += csv_field(r.check_id) + ',' + csv_field(r.anchor) + ',' + std::to_string(r.seed) + ',' +
                   csv_field(r.kind) + ',' + std::to_string(r.dim) + ',' + std::to_string(r.cells_per_axis) + ',' +
                   (std::isnan(r.p) ? std::string() : format_number(r.p)) + ',' + format_number(r.lhs) + ',' +
                   format_number(r.rhs) + ',' + format_number(r.slack) + ',' + std::string(to_string(r.status)) + '\n';
        }
        return out;
    }
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["check_id"] = r.check_id;
        j["anchor"] = r.anchor;
        j["digest"] = r.digest;
        j["seed"] = r.seed;
        j["kind"] = r.kind;
        j["n"] = r.dim;
        j["N"] = r.cells_per_axis;
        j["p"] = number_json(r.p);
        j["lhs"] = number_json(r.lhs);
        j["rhs"] = number_json(r.rhs);
        j["slack"] = number_json(r.slack);
        j["status"] = std::string(to_string(r.status));
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string norm_result_json(const NormResult& r, int dim) {
    nlohmann::ordered_json j;
    j["kind"] = r.objective.kind == PackingKind::jn ? "jn" : "garo";
    j["p"] = number_json(r.objective.p);
    j["family"] = std::string(to_string(r.family));
    j["value"] = number_json(r.value);
    j["lower_bound"] = r.lower_bound_flag;
    auto w = nlohmann::ordered_json::array();
    for (const auto& c : r.witness.cubes) w.push_back(cube_json(c, dim));
    j["witness"] = std::move(w);
    return j.dump(2) + "\n";
}

std::string chain_report_json(const ChainReport& r, int dim) {
    nlohmann::ordered_json j;
    auto items = nlohmann::ordered_json::array();
    for (const auto& it : r.items) {
        nlohmann::ordered_json e;
        e["name"] = it.name;
        e["lhs"] = number_json(it.lhs);
        e["rhs"] = number_json(it.rhs);
        e["slack"] = number_json(it.slack);
        e["status"] = std::string(to_string(it.status));
        if (it.witness) e["witness"] = cube_json(*it.witness, dim);
        items.push_back(std::move(e));
    }
    j["items"] = std::move(items);
    nlohmann::ordered_json values;
    for (const auto& [k, v] : r.values) values[k] = number_json(v);
    j["values"] = std::move(values);
    return j.dump(2) + "\n";
}

}  // namespace garo
