// Command-line front end: norms of a single function, verification suites, oracle
// cross-check, convergence scans and rearrangement profiles.
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "garo/grid.hpp"
#include "garo/harness.hpp"
#include "garo/oscillation.hpp"
#include "garo/packing.hpp"
#include "garo/rearrange.hpp"

namespace {

using namespace garo;

double parse_exponent(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo") return kInf;
    std::size_t used = 0;
    const double p = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad exponent: " + s);
    return p;
}

struct Source {
    std::string input;
    std::string gen;
    int dim = 1;
    int cells = 8;
    double side = 1.0;
    std::uint64_t seed = 1;

    void attach(CLI::App* app, bool gen_required = false) {
        auto* in = app->add_option("--input", input, "CSV grid file (header n,N,L then values)");
        auto* g = app->add_option("--gen", gen, "generator spec, e.g. power:alpha=0.5");
        if (gen_required)
            g->required();
        else
            in->excludes(g);
        app->add_option("--n", dim, "dimension for --gen")->check(CLI::Range(1, kMaxDim));
        app->add_option("--N", cells, "cells per axis for --gen")->check(CLI::PositiveNumber);
        app->add_option("--L", side, "side length for --gen")->check(CLI::PositiveNumber);
        app->add_option("--seed", seed, "seed for random generators");
    }

    GridFunction load(int N_override = 0) const {
        if (!input.empty()) return read_grid_csv_file(input);
        if (gen.empty()) throw std::invalid_argument("one of --input or --gen is required");
        return generate(parse_generator_spec(gen, dim, N_override > 0 ? N_override : cells, side, seed)).f;
    }
};

void write_out(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        v.push_back(std::stoi(item));
    }
    return v;
}

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        v.push_back(parse_exponent(item));
    }
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Packing norms, rearrangements and oscillation inequalities on grids"};
    app.set_config("--config", "", "TOML file mirroring the flags; flags win");
    app.require_subcommand(1);

    // norms
    auto* norms = app.add_subcommand("norms", "evaluate one norm of one function");
    Source norms_src;
    norms_src.attach(norms);
    std::string norms_p = "2", norms_kind = "garo", norms_family = "dyadic", norms_out = "json";
    norms->add_option("--p", norms_p, "exponent (inf allowed for garo)");
    norms->add_option("--kind", norms_kind, "jn | garo | bmo | weak")->check(CLI::IsMember({"jn", "garo", "bmo", "weak"}));
    norms->add_option("--family", norms_family, "dyadic | all_grid | exhaustive")
        ->check(CLI::IsMember({"dyadic", "all_grid", "exhaustive"}));
    norms->add_option("--out", norms_out, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite and emit check records");
    std::string suite = "all", resolutions, p_values, out_path, format = "csv";
    std::vector<std::string> generators;
    std::optional<int> vdim, seeds;
    std::uint64_t seed0 = 1;
    verify->add_option("--suite", suite, "embeddings | poincare | rearrangement | oracle | all")
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--n", vdim, "restrict to dimension 1 or 2")->check(CLI::Range(1, 2));
    verify->add_option("--resolutions", resolutions, "comma-separated cells per axis");
    verify->add_option("--seeds", seeds, "seeds per random generator")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed0", seed0, "first seed");
    verify->add_option("--p-values", p_values, "comma-separated exponents");
    verify->add_option("--gen", generators, "generator specs (repeatable)");
    verify->add_option("--out", out_path, "output file (stdout if omitted)");
    verify->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    // oracle
    auto* oracle = app.add_subcommand("oracle", "packing DP against exhaustive enumeration");
    int max_cells = 10;
    std::optional<int> oracle_seeds;
    std::string oracle_out;
    oracle->add_option("--max-cells", max_cells, "largest N (1D)")->check(CLI::Range(4, 12));
    oracle->add_option("--seeds", oracle_seeds, "random inputs per N")->check(CLI::NonNegativeNumber);
    oracle->add_option("--out", oracle_out, "output file (stdout if omitted)");

    // scan
    auto* scan = app.add_subcommand("scan", "rearrangement functionals under grid refinement");
    Source scan_src;
    scan_src.attach(scan, true);
    std::string scan_res = "64,256,1024,4096,16384", scan_p;
    scan->add_option("--resolutions", scan_res, "comma-separated cells per axis");
    scan->add_option("--p", scan_p, "exponent (default 1/alpha for power, else 2)");

    // profile
    auto* prof = app.add_subcommand("profile", "table of t, f*, f**, f** - f*");
    Source prof_src;
    prof_src.attach(prof);
    int samples = 100;
    prof->add_option("--samples", samples, "log-spaced points in addition to breakpoints")->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (norms->parsed()) {
            const auto f = norms_src.load();
            const double p = parse_exponent(norms_p);
            const auto fam = parse_norm_family(norms_family);
            std::ostringstream os;
            if (norms_kind == "jn" || norms_kind == "garo") {
                NormResult r = norms_kind == "jn" ? jn_norm(f, p, fam) : garo_norm(f, p, fam);
                if (norms_out == "json")
                    os << norm_result_json(r, f.dim());
                else
                    os << "kind,p,family,value,witness_cubes\n"
                       << norms_kind << ',' << format_number(p) << ',' << norms_family << ','
                       << format_number(r.value) << ',' << r.witness.cubes.size() << '\n';
            } else {
                double value = 0.0;
                if (norms_kind == "bmo") {
                    const auto cf = fam == NormFamily::dyadic ? CubeFamily::dyadic : CubeFamily::all_grid;
                    value = bmo_norm_star(f, cf).value;
                } else {
                    value = weak_lorentz_norm(rearrangement(f), p);
                }
                if (norms_out == "json")
                    os << "{\n  \"kind\": \"" << norms_kind << "\",\n  \"p\": \"" << format_number(p)
                       << "\",\n  \"family\": \"" << norms_family << "\",\n  \"value\": " << format_number(value)
                       << "\n}\n";
                else
                    os << "kind,p,family,value\n"
                       << norms_kind << ',' << format_number(p) << ',' << norms_family << ',' << format_number(value)
                       << '\n';
            }
            std::cout << os.str();
            return 0;
        }

        if (verify->parsed() || oracle->parsed()) {
            SuiteConfig cfg;
            std::string which = suite, path = out_path;
            ReportFormat fmt = parse_report_format(format);
            if (oracle->parsed()) {
                which = "oracle";
                cfg.max_cells = max_cells;
                cfg.seeds = oracle_seeds;
                path = oracle_out;
                fmt = ReportFormat::csv;
            } else {
                cfg.dim = vdim;
                cfg.seeds = seeds;
                cfg.seed0 = seed0;
                cfg.resolutions = parse_int_list(resolutions);
                if (!p_values.empty()) cfg.p_values = parse_double_list(p_values);
                cfg.generators = generators;
            }
            const auto records = run_suite(which, cfg);
            write_out(path, emit_report(records, fmt));
            std::size_t fails = 0;
            for (const auto& r : records) fails += r.status == CheckStatus::fail;
            std::cerr << records.size() << " records, " << fails << " failed\n";
            return fails == 0 ? 0 : 1;
        }

        if (scan->parsed()) {
            const auto base = parse_generator_spec(scan_src.gen, scan_src.dim, scan_src.cells, scan_src.side, scan_src.seed);
            double p = 2.0;
            if (!scan_p.empty())
                p = parse_exponent(scan_p);
            else if (base.kind == GeneratorKind::power)
                p = 1.0 / base.param("alpha", 0.5);
            std::cout << "N,p,weak_lorentz,weak_oscillation,weak_average,l1\n";
            for (int N : parse_int_list(scan_res)) {
                const auto f = scan_src.load(N);
                const auto r = rearrangement(f);
                std::cout << N << ',' << format_number(p) << ',' << format_number(weak_lorentz_norm(r, p)) << ','
                          << format_number(weak_oscillation_norm(r, p)) << ','
                          << format_number(weak_average_norm(r, p)) << ',' << format_number(l1_norm(r)) << '\n';
            }
            return 0;
        }

        if (prof->parsed()) {
            const auto f = prof_src.load();
            const auto r = rearrangement(f);
            const auto b = profile(r);
            auto pts = rearrangement_sample_points(b, f.cell_measure(), r.total_measure * (1.0 + 1e-15), samples);
            if (pts.empty() || pts.back() < r.total_measure) pts.push_back(r.total_measure);
            std::cout << "t,f_star,f_star_star,gap\n";
            for (double t : pts) {
                const double s = eval_star(r, t);
                const double a = eval_avg(b, t);
                std::cout << format_number(t) << ',' << format_number(s) << ',' << format_number(a) << ','
                          << format_number(a - s) << '\n';
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
