#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "spinor/errors.hpp"
#include "spinor/parallel.hpp"
#include "spinor_app/commands.hpp"
#include "spinor_app/conformance.hpp"

using namespace spinor;

namespace {

int to_code(ExitCode c) { return static_cast<int>(c); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << text;
    if (!os) throw IoError("write failed for '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Rotating spin-orbit-coupled spin-2 condensate dynamics"};
    cli.require_subcommand(1);

    std::string config_path;
    auto* run = cli.add_subcommand("run", "evolve a configuration and write diagnostics and snapshots");
    run->add_option("--config", config_path, "config file")->required();

    std::string mode, ladder;
    auto* conv = cli.add_subcommand("converge", "temporal or spatial convergence table");
    conv->add_option("--config", config_path, "config file")->required();
    conv->add_option("--mode", mode, "temporal|spatial")->required()->check(CLI::IsMember({"temporal", "spatial"}));
    conv->add_option("--ladder", ladder, "comma-separated tau or h values (fractions like 1/80 allowed)")->required();

    app::BenchOptions bench_opts;
    std::string sizes;
    bool no_cache = false;
    auto* bench = cli.add_subcommand("bench", "timing ladder and fitted scaling exponent");
    bench->add_option("--dim", bench_opts.dim, "2 or 3")->check(CLI::IsMember({2, 3}));
    bench->add_option("--sizes", sizes, "comma-separated N values");
    bench->add_option("--scheme", bench_opts.scheme, "ts2|ts4")->check(CLI::IsMember({"ts2", "ts4", "ts2_aba"}));
    bench->add_option("--steps", bench_opts.steps, "steps per timing");
    bench->add_option("--repeats", bench_opts.repeats, "timings per size (best is reported)");
    bench->add_flag("--no-cache", no_cache, "recompute mode propagators every step");

    auto* verify = cli.add_subcommand("verify", "oracle conformance suite");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return to_code(ExitCode::Config);
    }

    try {
        if (run->parsed()) {
            const auto cfg = app::load_config(config_path);
            app::cmd_run(cfg, std::cerr);
        } else if (conv->parsed()) {
            const auto cfg = app::load_config(config_path);
            const auto report = app::cmd_converge(cfg, mode, app::parse_number_list(ladder), std::cerr);
            const std::string text = app::format_report(report);
            std::cout << text;
            std::filesystem::create_directories(cfg.output_dir);
            write_text((std::filesystem::path(cfg.output_dir) / ("converge_" + mode + ".csv")).string(), text);
        } else if (bench->parsed()) {
            if (sizes.empty())
                sizes = bench_opts.dim == 2 ? "64,128,192,256" : "32,48,64,96";
            for (double n : app::parse_number_list(sizes)) {
                if (n != static_cast<int>(n)) throw ConfigError("bench sizes must be integers");
                bench_opts.sizes.push_back(static_cast<int>(n));
            }
            bench_opts.propagator_cache = !no_cache;
            std::cout << app::format_report(app::cmd_bench(bench_opts, std::cerr));
        } else if (verify->parsed()) {
            bool ok = true;
            for (const auto& r : app::run_conformance()) {
                std::cout << app::format_check(r) << "\n";
                ok = ok && r.pass;
            }
            return ok ? 0 : to_code(ExitCode::Numerical);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return to_code(ExitCode::Config);
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return to_code(ExitCode::Numerical);
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return to_code(ExitCode::Io);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return to_code(ExitCode::Io);
    }
    return 0;
}
