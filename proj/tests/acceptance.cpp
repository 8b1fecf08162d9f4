#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "spinor/diagnostics.hpp"
#include "spinor/fft.hpp"
#include "spinor/integrator.hpp"
#include "spinor/rotation.hpp"
#include "spinor/snapshot.hpp"
#include "spinor_app/commands.hpp"
#include "spinor_app/config.hpp"
#include "spinor_app/conformance.hpp"

using namespace spinor;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Sum of three random Gaussian packets per component, unit total mass.
SpinorField random_smooth(const GridPtr& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre(-1.5, 1.5), width(0.9, 1.4), wave(-1.0, 1.0);
    std::normal_distribution<double> amp;
    SpinorField psi(g);
    for (int m = 0; m < 5; ++m) {
        ComplexField f(g);
        for (int k = 0; k < 3; ++k) {
            const double x0 = centre(rng), y0 = centre(rng), s = width(rng);
            const double kx = wave(rng), ky = wave(rng);
            const cplx a(amp(rng), amp(rng));
            const ComplexField packet = sample(g, [=](double x, double y, double) {
                const double r2 = (x - x0) * (x - x0) + (y - y0) * (y - y0);
                return a * std::exp(-r2 / (2.0 * s * s)) * std::polar(1.0, kx * x + ky * y);
            });
            for (std::size_t i = 0; i < f.size(); ++i) f[i] += packet[i];
        }
        psi.component(m) = std::move(f);
    }
    const double s = 1.0 / std::sqrt(mass(psi));
    for (int m = 0; m < 5; ++m) psi.component(m) *= s;
    return psi;
}

app::RunConfig accuracy_config() {
    return app::parse_config(
        "dim = 2\nL = 8\nN = 128\nt_final = 0.5\nc0 = 100\nc1 = -1\nc2 = 1\nomega = 0.2\ngamma_soc = 0.3\n"
        "init = gaussian_ini1\ntau_ref = 1e-4\nref_scheme = ts4\npropagator_cache = true\n",
        "accuracy");
}

// 1. Temporal order of TS2 and TS4 against a TS4 reference at tau = 1e-4.
Verdict temporal_order() {
    const auto t0 = std::chrono::steady_clock::now();
    app::RunConfig cfg = accuracy_config();
    const GridPtr g = cfg.grid();
    const SpinorField ref = app::simulate(cfg, g, cfg.tau_ref, cfg.ref_scheme);
    const std::vector<double> ladder = {1.0 / 80, 1.0 / 160, 1.0 / 320, 1.0 / 640};
    std::ostringstream quiet, detail;
    bool pass = true;
    for (const auto& [scheme, order, tol] : {std::tuple{"ts2", 2.0, 0.1}, std::tuple{"ts4", 4.0, 0.15}}) {
        cfg.scheme = scheme;
        const app::ConvergeReport rep = app::cmd_converge(cfg, "temporal", ladder, quiet, &ref);
        double lo = 1e300, hi = -1e300;
        for (const auto& row : rep.rows) {
            if (!row.has_rate) continue;
            for (double r : row.rate) {
                lo = std::min(lo, r);
                hi = std::max(hi, r);
                if (!(std::abs(r - order) <= tol)) pass = false;
            }
        }
        detail << scheme << " rates [" << fmt("%.4f", lo) << ", " << fmt("%.4f", hi) << "] (want " << order
               << " +- " << tol << "), E_max(1/640) " << fmt("%.3e", rep.rows.back().max_error) << "; ";
    }
    const double elapsed = seconds_since(t0);
    if (elapsed > 600.0) pass = false;
    detail << "runtime " << fmt("%.1f", elapsed) << " s (limit 600)";
    return {pass, detail.str()};
}

// 2. Spatial spectral accuracy on the h ladder 1/2, 1/4, 1/8 against h = 1/16.
Verdict spatial_accuracy() {
    app::RunConfig cfg = accuracy_config();
    cfg.L = 12.0;
    cfg.N = 384;
    cfg.tau = 1e-3;
    cfg.scheme = "ts2";
    std::ostringstream quiet, detail;
    const app::ConvergeReport rep = app::cmd_converge(cfg, "spatial", {0.5, 0.25, 0.125}, quiet);
    bool pass = true;
    detail << "E_max";
    for (const auto& row : rep.rows) detail << " " << fmt("%.3e", row.max_error);
    detail << "; orders per halving";
    constexpr double floor = 1e-9;
    for (std::size_t k = 1; k < rep.rows.size(); ++k) {
        const auto& prev = rep.rows[k - 1];
        const auto& row = rep.rows[k];
        bool ok = true;
        for (int m = 0; m < 5; ++m) {
            const bool at_floor = prev.error[m] <= floor || row.error[m] <= floor;
            if (!at_floor && !(row.rate[m] >= 2.0)) ok = false;
        }
        double worst = 1e300;
        for (double r : row.rate) worst = std::min(worst, r);
        detail << " " << fmt("%.2f", worst);
        pass = pass && ok;
    }
    const double last = rep.rows.back().max_error;
    if (!(last <= floor)) pass = false;
    detail << " (want >= 2 until a floor <= 1e-9; finest " << fmt("%.2e", last) << ")";
    return {pass, detail.str()};
}

struct Track {
    double max_dev = 0.0;
    double first = 0.0;
    bool have = false;
    void add(double v) {
        if (!have) {
            first = v;
            have = true;
        }
        max_dev = std::max(max_dev, std::abs(v - first));
    }
};

// 3. Mass conservation from random smooth data for several (Omega, gamma).
Verdict mass_conservation() {
    const GridPtr g = build_grid(2, 8.0, 64);
    ModelParams p;
    p.c0 = 100.0;
    p.c1 = -1.0;
    p.c2 = 1.0;
    const double cases[][2] = {{0.0, 0.0}, {0.2, 0.3}, {0.5, 0.9}, {0.8, 2.0}};
    double worst = 0.0;
    unsigned seed = 7;
    for (const auto& c : cases) {
        p.omega = c[0];
        p.gamma_soc = c[1];
        for (const char* scheme : {"ts2", "ts4"}) {
            Track t;
            EvolveOptions opts;
            opts.observe_every = 100;
            opts.stepper.cache_propagators = true;
            evolve(random_smooth(g, seed++), p, 1e-3, 1.0, make_scheme(scheme),
                   [&](long long, double, const SpinorField& psi) { t.add(mass(psi)); }, opts);
            worst = std::max(worst, t.max_dev);
        }
    }
    return {worst <= 1e-12, "max |N(t) - N(0)| over 8 runs of 1000 steps " + fmt("%.3e", worst) + " (tol 1e-12)"};
}

app::RunConfig wide_config(double gamma) {
    app::RunConfig cfg = app::parse_config(
        "dim = 2\nL = 12\nN = 128\ntau = 1e-3\nc0 = 120\nc1 = 1\nc2 = 1\nomega = 0.2\ninit = gaussian_wide\n"
        "propagator_cache = true\n",
        "wide");
    cfg.params.gamma_soc = gamma;
    return cfg;
}

// 4. Magnetization: conserved at gamma = 0, drifting at gamma = 0.9.
Verdict magnetization_law() {
    double drift[2];
    const double gammas[2] = {0.0, 0.9};
    for (int k = 0; k < 2; ++k) {
        const app::RunConfig cfg = wide_config(gammas[k]);
        const GridPtr g = cfg.grid();
        Track t;
        EvolveOptions opts;
        opts.observe_every = 50;
        opts.stepper.cache_propagators = true;
        evolve(make_initial(cfg.init, g), cfg.params, cfg.tau, 1.0, make_scheme("ts2"),
               [&](long long, double, const SpinorField& psi) { t.add(magnetization(psi)); }, opts);
        drift[k] = t.max_dev;
    }
    const bool pass = drift[0] <= 1e-12 && drift[1] >= 1e-6;
    return {pass, "drift at gamma = 0: " + fmt("%.3e", drift[0]) + " (tol 1e-12); at gamma = 0.9: " +
                      fmt("%.3e", drift[1]) + " (need >= 1e-6)"};
}

// 5. Condensate width law for gamma = 0 in a radially symmetric trap.
Verdict width_law() {
    const app::RunConfig cfg = wide_config(0.0);
    const GridPtr g = cfg.grid();
    const SpinorField psi0 = make_initial(cfg.init, g);
    const double e0 = energy(psi0, cfg.params);
    const double lz0 = angular_momentum(psi0);
    const auto w0 = condensate_widths(psi0);
    const double rate0 = radial_width_rate(psi0);
    const long long steps = static_cast<long long>(std::ceil(std::acos(-1.0) / cfg.tau));
    double rel = 0.0, split = 0.0;
    EvolveOptions opts;
    opts.observe_every = 10;
    opts.stepper.cache_propagators = true;
    evolve(psi0, cfg.params, cfg.tau, steps * cfg.tau, make_scheme("ts2"),
           [&](long long, double t, const SpinorField& psi) {
               const auto w = condensate_widths(psi);
               const double ref = width_law_reference(t, 1.0, e0, cfg.params.omega, lz0, w0[0] + w0[1], rate0);
               rel = std::max(rel, std::abs(w[0] + w[1] - ref) / std::abs(ref));
               split = std::max(split, std::abs(w[0] - w[1]));
           },
           opts);
    const bool pass = rel <= 1e-4 && split <= 1e-10;
    return {pass, "max relative error of delta_r " + fmt("%.3e", rel) + " (tol 1e-4); max |delta_x - delta_y| " +
                      fmt("%.3e", split) + " (tol 1e-10)"};
}

// 6. <L_z> conservation for vortex data, gamma = 0, isotropic trap.
Verdict lz_conservation() {
    app::RunConfig cfg = app::parse_config(
        "dim = 2\nL = 16\nN = 256\ntau = 1e-3\nc0 = 120\nc1 = 1\nc2 = 1\nomega = 0.2\ngamma_soc = 0\n"
        "init = gaussian_vortex\nnormalize = true\npropagator_cache = true\n",
        "vortex");
    const GridPtr g = cfg.grid();
    Track t;
    EvolveOptions opts;
    opts.observe_every = 100;
    opts.stepper.cache_propagators = true;
    evolve(make_initial(cfg.init, g), cfg.params, cfg.tau, 2.0, make_scheme("ts2"),
           [&](long long, double, const SpinorField& psi) { t.add(angular_momentum(psi)); }, opts);
    return {t.max_dev <= 1e-8,
            "<L_z>(0) = " + fmt("%.12f", t.first) + ", max drift over [0, 2] " + fmt("%.3e", t.max_dev) + " (tol 1e-8)"};
}

// 7. Oracle conformance suite.
Verdict oracle_equivalence() {
    bool pass = true;
    std::ostringstream detail;
    for (const auto& r : app::run_conformance()) {
        pass = pass && r.pass;
        detail << "\n    " << app::format_check(r);
    }
    return {pass, detail.str()};
}

// 8. Line-transform pairs per linear step.
Verdict fft_audit() {
    bool pass = true;
    std::ostringstream detail;
    const struct {
        int dim, N;
    } cases[] = {{2, 32}, {2, 64}, {2, 128}, {3, 16}, {3, 24}};
    for (const auto& c : cases) {
        const GridPtr g = build_grid(c.dim, 8.0, c.N);
        SpinorField psi(g);
        if (c.dim == 2)
            psi = random_smooth(g, 3);
        else
            for (int m = 0; m < 5; ++m)
                psi.component(m) = sample(g, [](double x, double y, double z) {
                    return cplx(std::exp(-(x * x + y * y + z * z) / 2.0), 0.1 * x);
                });
        LinearFlow flow(g, 0.2, 0.3);
        reset_fft_counter();
        flow.step(psi, 0.7, 1e-3);
        const FftCounter cnt = fft_counter();
        const std::uint64_t n = c.N;
        const std::uint64_t expect = c.dim == 2 ? 30 * n : 35 * n * n;
        const bool ok = cnt.forward == expect && cnt.inverse == expect;
        pass = pass && ok;
        detail << c.dim << "D N=" << c.N << ": " << cnt.forward << "/" << cnt.inverse << " (want " << expect << ") ";
    }
    return {pass, detail.str()};
}

// 9. Scaling exponent and TS4/TS2 cost ratio.
Verdict scaling() {
    app::BenchOptions o;
    o.dim = 2;
    o.sizes = {64, 128, 192, 256};
    o.steps = 20;
    o.repeats = 3;
    std::ostringstream quiet, detail;
    o.scheme = "ts2";
    const app::BenchReport ts2 = app::cmd_bench(o, quiet);
    o.scheme = "ts4";
    const app::BenchReport ts4 = app::cmd_bench(o, quiet);
    bool pass = true;
    for (const auto* r : {&ts2, &ts4}) {
        if (!(r->slope >= 1.0 && r->slope <= 1.3)) pass = false;
        detail << r->scheme << " slope " << fmt("%.3f", r->slope) << "; ";
    }
    detail << "TS4/TS2 ratio";
    for (std::size_t k = 0; k < ts2.rows.size(); ++k) {
        const double ratio = ts4.rows[k].seconds / ts2.rows[k].seconds;
        if (!(ratio >= 2.0 && ratio <= 2.6)) pass = false;
        detail << " N=" << ts2.rows[k].N << ":" << fmt("%.2f", ratio);
    }
    detail << " (want slope in [1.0, 1.3], ratio in [2.0, 2.6])";
    return {pass, detail.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// 10. Rotation round trip, snapshot bit-exactness, deterministic reruns.
Verdict round_trips() {
    std::ostringstream detail;
    const GridPtr g = build_grid(2, 8.0, 64);
    const SpinorField psi = random_smooth(g, 21);

    double rot = 0.0;
    for (double t : {0.3, 2.5, 6.0, 9.1}) {
        const SpinorField back = rotate_backward(rotate_forward(psi, 0.8, t), 0.8, t);
        for (int m = 0; m < 5; ++m)
            for (std::size_t i = 0; i < g->size(); ++i)
                rot = std::max(rot, std::abs(back.component(m)[i] - psi.component(m)[i]));
    }
    detail << "rotation forward/backward " << fmt("%.3e", rot) << " (tol 1e-12); ";

    const fs::path dir = fs::temp_directory_path() / ("spinor_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string snap = (dir / "state.sp2b").string();
    write_snapshot(snap, psi, 1.25, 0.8, 0.3);
    const Snapshot s = read_snapshot(snap);
    bool bits = s.t == 1.25 && s.omega == 0.8 && s.gamma_soc == 0.3;
    for (int m = 0; m < 5; ++m)
        bits = bits && std::memcmp(s.state.component(m).data(), psi.component(m).data(),
                                   g->size() * sizeof(cplx)) == 0;
    detail << "snapshot round trip " << (bits ? "bit-exact" : "MISMATCH") << "; ";

    bool same = true;
    std::size_t files = 0;
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
        app::RunConfig cfg = app::parse_config(
            "dim = 2\nL = 8\nN = 64\ntau = 1e-3\nt_final = 0.05\nscheme = ts4\nc0 = 100\nc1 = -1\nc2 = 1\n"
            "omega = 0.2\ngamma_soc = 0.3\ninit = gaussian_ini1\nsnapshot_every = 25\ndiag_every = 5\n",
            "determinism");
        cfg.output_dir = (dir / ("run" + std::to_string(run))).string();
        std::ostringstream quiet;
        app::cmd_run(cfg, quiet);
    }
    for (const auto& entry : fs::directory_iterator(dir / "run0")) {
        const fs::path other = dir / "run1" / entry.path().filename();
        same = same && fs::exists(other) && slurp(entry.path()) == slurp(other);
        ++files;
    }
    detail << "rerun outputs " << (same ? "byte-identical" : "DIFFER") << " (" << files << " files)";
    fs::remove_all(dir);
    return {rot <= 1e-12 && bits && same && files > 1, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
        {"temporal order of TS2 and TS4", temporal_order},
        {"spatial spectral accuracy", spatial_accuracy},
        {"mass conservation", mass_conservation},
        {"magnetization law", magnetization_law},
        {"condensate width law", width_law},
        {"<L_z> conservation", lz_conservation},
        {"oracle equivalence", oracle_equivalence},
        {"FFT audit", fft_audit},
        {"scaling and TS4/TS2 ratio", scaling},
        {"round trips and determinism", round_trips},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k) + 1;
        if (!only.empty() && !only.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[k].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) ++failed;
        std::printf("[%s] %2d %s (%.1f s): %s\n", v.pass ? "PASS" : "FAIL", id, criteria[k].first.c_str(),
                    seconds_since(t0), v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
