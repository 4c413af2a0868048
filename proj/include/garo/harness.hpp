#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "garo/grid.hpp"
#include "garo/packing.hpp"
#include "garo/sobolev.hpp"

namespace garo {

// splitmix64 with its reference constants.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
    std::uint64_t next() noexcept;
    // Uniform on [0, 1) from the top 53 bits.
    double uniform() noexcept;

private:
    std::uint64_t state_;
};

enum class GeneratorKind { power, log, step, linear, sawtooth, random_pc, indicator, bump };

std::string_view to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(std::string_view name);

// "kind" or "kind:key=value,key=value". Recognized keys per kind:
//   power      alpha (0.5), x0 (0), y0 (0)        |x - x0|^{-alpha}, singular cell clamped
//   log        x0 (0), y0 (0)                     log(1 / |x - x0|), singular cell clamped
//   step       at (0.3), height (1)               height on axis-0 coordinate >= at
//   linear     slope (1)                          slope * (x + y + ...)
//   sawtooth   freq (4)                           frac(freq * x) along axis 0
//   random_pc  block (1)                          uniform [-1, 1) on block x block cells
//   indicator  at (0.5)                           1 on axis-0 coordinate < at * L
//   bump       radius (0.4)                       (1 - r^2 / radius^2)_+^2 about the center
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::linear;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;
    int dim = 1;
    int cells_per_axis = 8;
    double side = 1.0;

    double param(const std::string& key, double fallback) const;
    std::string label() const;  // kind plus non-default params, stable
};

GeneratorSpec parse_generator_spec(std::string_view text, int dim, int cells_per_axis, double side = 1.0,
                                   std::uint64_t seed = 0);

struct Generated {
    GridFunction f;
    GridFunction g;  // central-difference gradient magnitude, one-sided at the boundary
};

Generated generate(const GeneratorSpec& spec);
GridFunction discrete_gradient(const GridFunction& f);

struct CheckRecord {
    std::string check_id;
    std::string anchor;
    std::string digest;  // FNV-1a of the input values
    std::uint64_t seed = 0;
    std::string kind;
    int dim = 0;
    int cells_per_axis = 0;
    double p = 0.0;  // NaN when the check has no exponent
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = kInf;
    CheckStatus status = CheckStatus::reported;
};

struct CheckInfo {
    std::string id;
    std::string anchor;
    bool exact;  // false: unpinned constant, status reported
};

// Every check id the suites can emit, with its anchor formula.
const std::vector<CheckInfo>& check_registry();
const CheckInfo& check_info(const std::string& id);

struct SuiteConfig {
    std::optional<int> dim;              // restrict to n = 1 or n = 2
    std::vector<int> resolutions;        // empty: per-suite defaults
    std::optional<int> seeds;            // empty: per-suite defaults
    std::uint64_t seed0 = 1;
    std::vector<double> p_values{1.25, 1.5, 2.0, 3.0, 8.0};
    std::vector<std::string> generators; // empty: per-suite defaults
    int max_cells = 10;                  // oracle suite
    int log_samples = 100;
};

const std::vector<std::string>& suite_names();
// Records sorted by check_id, then seed; ties keep generation order.
std::vector<CheckRecord> run_suite(const std::string& suite, const SuiteConfig& config);

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(std::string_view name);

inline constexpr const char* kCsvHeader = "check_id,anchor,seed,kind,n,N,p,lhs,rhs,slack,status";
std::string emit_report(const std::vector<CheckRecord>& records, ReportFormat format);
bool any_failed(const std::vector<CheckRecord>& records);

std::string format_number(double x);  // %.17g, with inf / -inf / nan spelled out
std::uint64_t fnv1a(const GridFunction& f);

std::string norm_result_json(const NormResult& r, int dim);
std::string chain_report_json(const ChainReport& r, int dim);

}  // namespace garo
