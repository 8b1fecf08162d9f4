#pragma once

#include <map>
#include <string>

#include "spinor/spinor.hpp"

namespace spinor::app {

/// Flat key=value run description. '#' starts a comment; blank lines are
/// ignored; every key may appear at most once.
struct RunConfig {
    int dim = 2;
    double L = 8.0;
    int N = 128;
    double tau = 1e-3;
    double t_final = 0.0;
    std::string scheme = "ts2";
    ModelParams params{};
    InitialSpec init{};
    long long snapshot_every = 0;  // 0: no snapshots
    long long diag_every = 1;      // 0: only t = 0 and the final time
    bool propagator_cache = false;
    unsigned long long seed = 0;
    std::string output_dir = "out";
    // converge harness
    double tau_ref = 1e-4;
    std::string ref_scheme = "ts4";

    /// Line number of each key that was set, for diagnostics.
    std::map<std::string, int> lines;
    std::string source = "<config>";

    GridPtr grid() const;
};

/// Parses and validates; errors are ConfigError "source:line: message".
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);

/// Serializes with every key spelled out (round-trips through parse_config).
std::string to_text(const RunConfig& cfg);

}  // namespace spinor::app
