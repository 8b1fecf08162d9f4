#include "spinor_app/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spinor/errors.hpp"
#include "spinor/fft.hpp"
#include "spinor/integrator.hpp"
#include "spinor/snapshot.hpp"

namespace spinor::app {
namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

void check_finite(const DiagnosticsRecord& r) {
    const double v[] = {r.mass, r.energy, r.magnetization, r.lz, r.widths[0], r.widths[1], r.widths[2]};
    for (double x : v)
        if (!std::isfinite(x)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "non-finite diagnostics at t = %.17g", r.t);
            throw NumericalError(buf);
        }
}

double relative_l2(const ComplexField& ref, const ComplexField& f) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ref.size(); ++i) {
        num += std::norm(ref[i] - f[i]);
        den += std::norm(ref[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

void fill_rates(std::vector<ConvergeRow>& rows, bool spectral) {
    for (std::size_t k = 1; k < rows.size(); ++k) {
        auto& r = rows[k];
        const auto& p = rows[k - 1];
        const double dlog = spectral ? std::log(10.0) : std::log(p.param / r.param);
        for (int m = 0; m < 5; ++m) r.rate[m] = std::log(p.error[m] / r.error[m]) / dlog;
        r.max_rate = std::log(p.max_error / r.max_error) / dlog;
        r.has_rate = true;
    }
}

}  // namespace

SpinorField simulate(const RunConfig& cfg, const GridPtr& grid, double tau, const std::string& scheme) {
    const SpinorField psi0 = make_initial(cfg.init, grid);
    EvolveOptions opts;
    opts.stepper.cache_propagators = cfg.propagator_cache;
    return evolve(psi0, cfg.params, tau, cfg.t_final, make_scheme(scheme), {}, opts);
}

RunSummary cmd_run(const RunConfig& cfg, std::ostream& log) {
    const GridPtr grid = cfg.grid();
    const SplitScheme scheme = make_scheme(cfg.scheme);
    const long long M = step_count(cfg.t_final, cfg.tau);
    ensure_dir(cfg.output_dir);

    RunSummary summary;
    summary.steps = M;
    summary.csv_path = (std::filesystem::path(cfg.output_dir) / "diagnostics.csv").string();
    std::ofstream csv(summary.csv_path, std::ios::trunc);
    if (!csv) throw IoError("cannot open '" + summary.csv_path + "' for writing");
    csv << csv_header(grid->dim()) << "\n";

    const SpinorField psi0 = make_initial(cfg.init, grid);
    StepperOptions sopts;
    sopts.cache_propagators = cfg.propagator_cache;
    Stepper stepper(grid, cfg.params, scheme, sopts);
    ClockedState state{psi0, 0.0, 0};

    auto record = [&] {
        const DiagnosticsRecord r = diagnostics(state.psi, cfg.params, state.time(cfg.tau));
        check_finite(r);
        csv << csv_row(r) << "\n";
        if (!csv) throw IoError("write failed for '" + summary.csv_path + "'");
        summary.records.push_back(r);
    };

    record();
    while (state.n < M) {
        stepper.step(state, cfg.tau);
        const bool last = state.n == M;
        if ((cfg.diag_every > 0 && state.n % cfg.diag_every == 0) || last) record();
        if (cfg.snapshot_every > 0 && state.n % cfg.snapshot_every == 0) {
            char name[64];
            std::snprintf(name, sizeof name, "snapshot_%08lld.sp2b", state.n);
            const std::string path = (std::filesystem::path(cfg.output_dir) / name).string();
            write_snapshot(path, state.psi, state.time(cfg.tau), cfg.params.omega, cfg.params.gamma_soc);
            summary.snapshots.push_back(path);
        }
    }
    csv.close();
    log << "run: " << M << " steps, " << summary.records.size() << " diagnostics rows -> " << summary.csv_path
        << "\n";
    return summary;
}

ConvergeReport cmd_converge(const RunConfig& cfg, const std::string& mode, const std::vector<double>& ladder,
                            std::ostream& log, const SpinorField* reference) {
    if (mode != "temporal" && mode != "spatial") throw ConfigError("mode must be 'temporal' or 'spatial'");
    if (ladder.empty()) throw ConfigError("ladder must list at least one value");
    ConvergeReport report;
    report.mode = mode;
    const GridPtr ref_grid = cfg.grid();

    if (mode == "temporal") {
        for (double tau : ladder) step_count(cfg.t_final, tau);
        SpinorField computed;
        if (!reference) {
            log << "converge: reference " << cfg.ref_scheme << " at tau = " << cfg.tau_ref << "\n";
            computed = simulate(cfg, ref_grid, cfg.tau_ref, cfg.ref_scheme);
        }
        const SpinorField& ref = reference ? *reference : computed;
        if (ref.grid().N() != cfg.N || ref.grid().dim() != cfg.dim) throw ConfigError("reference grid mismatch");
        for (double tau : ladder) {
            const SpinorField psi = simulate(cfg, ref_grid, tau, cfg.scheme);
            ConvergeRow row;
            row.param = tau;
            for (int m = 0; m < 5; ++m) {
                row.error[m] = relative_l2(ref.component(m), psi.component(m));
                row.max_error = std::max(row.max_error, row.error[m]);
            }
            report.rows.push_back(row);
        }
        fill_rates(report.rows, false);
        return report;
    }

    // spatial
    std::vector<GridPtr> grids;
    for (double h : ladder) {
        if (!(h > 0.0)) throw ConfigError("mesh sizes must be positive");
        const double n = 2.0 * cfg.L / h;
        const int N = static_cast<int>(std::lround(n));
        if (std::abs(n - N) > 1e-9 * n || N < 4 || N % 2 != 0 || cfg.N % N != 0)
            throw ConfigError("mesh size h = " + std::to_string(h) + " does not give a grid nested in N = " +
                              std::to_string(cfg.N) + " on [-L, L)");
        grids.push_back(build_grid(cfg.dim, cfg.L, N));
    }
    const SpinorField psi0_ref = make_initial(cfg.init, ref_grid);
    EvolveOptions opts;
    opts.stepper.cache_propagators = cfg.propagator_cache;
    const SplitScheme scheme = make_scheme(cfg.scheme);
    SpinorField computed;
    if (!reference) {
        log << "converge: reference " << cfg.scheme << " at tau = " << cfg.tau << " on N = " << cfg.N << "\n";
        computed = evolve(psi0_ref, cfg.params, cfg.tau, cfg.t_final, scheme, {}, opts);
    }
    const SpinorField& ref = reference ? *reference : computed;
    if (ref.grid().N() != cfg.N || ref.grid().dim() != cfg.dim) throw ConfigError("reference grid mismatch");
    for (std::size_t k = 0; k < grids.size(); ++k) {
        SpinorField psi0(grids[k]);
        for (int m = 0; m < 5; ++m) psi0.component(m) = restrict_to(psi0_ref.component(m), grids[k]);
        const SpinorField psi = evolve(psi0, cfg.params, cfg.tau, cfg.t_final, scheme, {}, opts);
        ConvergeRow row;
        row.param = ladder[k];
        for (int m = 0; m < 5; ++m) {
            row.error[m] = relative_l2(restrict_to(ref.component(m), grids[k]), psi.component(m));
            row.max_error = std::max(row.max_error, row.error[m]);
        }
        report.rows.push_back(row);
    }
    fill_rates(report.rows, true);
    return report;
}

std::string format_report(const ConvergeReport& r) {
    std::ostringstream os;
    const char* p = r.mode == "temporal" ? "tau" : "h";
    const char* rate = r.mode == "temporal" ? "rate" : "orders";
    os << p << ",E_2,E_1,E_0,E_-1,E_-2,E_max," << rate << "_2," << rate << "_1," << rate << "_0," << rate << "_-1,"
       << rate << "_-2," << rate << "_max\n";
    char buf[64];
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%.10g", row.param);
        os << buf;
        for (double e : row.error) {
            std::snprintf(buf, sizeof buf, ",%.4e", e);
            os << buf;
        }
        std::snprintf(buf, sizeof buf, ",%.4e", row.max_error);
        os << buf;
        for (int m = 0; m < 6; ++m) {
            if (row.has_rate) {
                std::snprintf(buf, sizeof buf, ",%.4f", m < 5 ? row.rate[m] : row.max_rate);
                os << buf;
            } else {
                os << ",";
            }
        }
        os << "\n";
    }
    return os.str();
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BenchReport cmd_bench(const BenchOptions& o, std::ostream& log) {
    if (o.dim != 2 && o.dim != 3) throw ConfigError("bench dim must be 2 or 3");
    if (o.sizes.empty()) throw ConfigError("bench needs at least one size");
    if (o.steps < 1 || o.repeats < 1) throw ConfigError("bench steps and repeats must be positive");
    BenchReport rep;
    rep.dim = o.dim;
    rep.scheme = o.scheme;
    rep.steps = o.steps;
    const SplitScheme scheme = make_scheme(o.scheme);
    ModelParams p;
    p.c0 = 10.0;
    p.c1 = 1.0;
    p.c2 = 1.0;
    p.omega = 0.2;
    p.gamma_soc = 0.1;

    for (int N : o.sizes) {
        const GridPtr g = build_grid(o.dim, o.L, N);
        const SpinorField psi0 = make_initial(InitialSpec{}, g);
        StepperOptions sopts;
        sopts.cache_propagators = o.propagator_cache;
        Stepper stepper(g, p, scheme, sopts);

        BenchRow row;
        row.N = N;
        row.n_tot = g->size();

        SpinorField probe = psi0;
        reset_fft_counter();
        stepper.linear().step(probe, 0.0, o.tau);
        row.fft_pairs_per_linear_step = fft_counter().pairs();

        // warm-up: plans, propagator tables, caches
        SpinorField psi = psi0;
        stepper.step(psi, 0.0, o.tau);

        double best = 1e300;
        for (int r = 0; r < o.repeats; ++r) {
            psi = psi0;
            const auto t0 = std::chrono::steady_clock::now();
            for (int n = 0; n < o.steps; ++n) stepper.step(psi, n * o.tau, o.tau);
            const auto t1 = std::chrono::steady_clock::now();
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        row.seconds = best;
        rep.rows.push_back(row);
        log << "bench: dim " << o.dim << " N " << N << " " << o.scheme << " " << best << " s\n";
    }
    std::vector<double> x, y;
    for (const auto& r : rep.rows) {
        x.push_back(static_cast<double>(r.n_tot));
        y.push_back(r.seconds);
    }
    rep.slope = loglog_slope(x, y);
    return rep;
}

std::string format_report(const BenchReport& r) {
    std::ostringstream os;
    os << "N,N_tot,seconds,seconds_per_step,fft_pairs_per_linear_step\n";
    char buf[160];
    for (const auto& row : r.rows) {
        std::snprintf(buf, sizeof buf, "%d,%zu,%.6f,%.6e,%llu\n", row.N, row.n_tot, row.seconds, row.seconds / r.steps,
                      static_cast<unsigned long long>(row.fft_pairs_per_linear_step));
        os << buf;
    }
    std::snprintf(buf, sizeof buf, "# dim=%d scheme=%s steps=%d slope=%.4f\n", r.dim, r.scheme.c_str(), r.steps, r.slope);
    os << buf;
    return os.str();
}

std::vector<double> parse_number_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw ConfigError("empty entry in list '" + csv + "'");
        item = item.substr(b, e - b + 1);
        // accept fractions such as 1/80
        double v;
        if (const auto slash = item.find('/'); slash != std::string::npos) {
            try {
                std::size_t p1 = 0, p2 = 0;
                const double num = std::stod(item.substr(0, slash), &p1);
                const double den = std::stod(item.substr(slash + 1), &p2);
                if (p1 != slash || p2 != item.size() - slash - 1 || den == 0.0) throw std::invalid_argument("");
                v = num / den;
            } catch (const std::exception&) {
                throw ConfigError("cannot parse '" + item + "' in list '" + csv + "'");
            }
        } else {
            try {
                std::size_t pos = 0;
                v = std::stod(item, &pos);
                if (pos != item.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ConfigError("cannot parse '" + item + "' in list '" + csv + "'");
            }
        }
        if (!std::isfinite(v)) throw ConfigError("non-finite entry '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

}  // namespace spinor::app
