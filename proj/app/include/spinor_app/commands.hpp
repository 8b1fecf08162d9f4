#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spinor/diagnostics.hpp"
#include "spinor_app/config.hpp"

namespace spinor::app {

struct RunSummary {
    long long steps = 0;
    std::string csv_path;
    std::vector<std::string> snapshots;
    std::vector<DiagnosticsRecord> records;
};

/// Evolves the configured state, writing <output_dir>/diagnostics.csv and
/// <output_dir>/snapshot_<step>.sp2b every snapshot_every steps.
RunSummary cmd_run(const RunConfig& cfg, std::ostream& log);

/// Evolves the configured initial state to t_final and returns it.
SpinorField simulate(const RunConfig& cfg, const GridPtr& grid, double tau, const std::string& scheme);

struct ConvergeRow {
    double param = 0.0;                   // tau (temporal) or h (spatial)
    std::array<double, 5> error{};        // l = 2..-2
    double max_error = 0.0;
    std::array<double, 5> rate{};         // observed order vs the previous row
    double max_rate = 0.0;
    bool has_rate = false;
};

struct ConvergeReport {
    std::string mode;
    std::vector<ConvergeRow> rows;
};

/// Temporal: reference = ref_scheme at tau_ref on the configured grid; each
/// ladder entry is a tau run with `scheme`. Spatial: reference = `scheme` at
/// `tau` on the configured (finest) grid; each ladder entry is a mesh size h
/// whose grid must nest in the reference grid. A non-null `reference` is used
/// instead of computing one.
ConvergeReport cmd_converge(const RunConfig& cfg, const std::string& mode, const std::vector<double>& ladder,
                            std::ostream& log, const SpinorField* reference = nullptr);

std::string format_report(const ConvergeReport& r);

struct BenchOptions {
    int dim = 2;
    std::vector<int> sizes;
    std::string scheme = "ts2";
    int steps = 20;
    int repeats = 3;
    double L = 12.0;
    double tau = 1e-3;
    bool propagator_cache = true;
};

struct BenchRow {
    int N = 0;
    std::size_t n_tot = 0;
    double seconds = 0.0;  // best of `repeats` for `steps` steps
    std::uint64_t fft_pairs_per_linear_step = 0;
};

struct BenchReport {
    int dim = 2;
    std::string scheme;
    int steps = 0;
    std::vector<BenchRow> rows;
    double slope = 0.0;  // least-squares d log(time) / d log(N_tot)
};

BenchReport cmd_bench(const BenchOptions& opts, std::ostream& log);
std::string format_report(const BenchReport& r);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::vector<double> parse_number_list(const std::string& csv);

}  // namespace spinor::app
