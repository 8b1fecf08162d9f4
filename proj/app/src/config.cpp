#include "spinor_app/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "spinor/errors.hpp"
#include "spinor/integrator.hpp"

namespace spinor::app {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& msg) {
    throw ConfigError(source + ":" + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, const std::string& key, const std::string& src, int line) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, out);
    if (r.ec != std::errc() || r.ptr != end || !std::isfinite(out))
        fail(src, line, "value '" + v + "' for '" + key + "' is not a finite number");
    return out;
}

long long to_int(const std::string& v, const std::string& key, const std::string& src, int line) {
    long long out = 0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, out);
    if (r.ec != std::errc() || r.ptr != end) fail(src, line, "value '" + v + "' for '" + key + "' is not an integer");
    return out;
}

bool to_bool(const std::string& v, const std::string& key, const std::string& src, int line) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail(src, line, "value '" + v + "' for '" + key + "' is not a boolean");
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> s = [] {
        std::map<std::string, Setter> m;
        auto par = [](double ModelParams::*field, const char* key) {
            return [=](RunConfig& c, const std::string& v, int l) { c.params.*field = to_double(v, key, c.source, l); };
        };
        m["dim"] = [](RunConfig& c, const std::string& v, int l) { c.dim = static_cast<int>(to_int(v, "dim", c.source, l)); };
        m["N"] = [](RunConfig& c, const std::string& v, int l) { c.N = static_cast<int>(to_int(v, "N", c.source, l)); };
        m["L"] = [](RunConfig& c, const std::string& v, int l) { c.L = to_double(v, "L", c.source, l); };
        m["tau"] = [](RunConfig& c, const std::string& v, int l) { c.tau = to_double(v, "tau", c.source, l); };
        m["t_final"] = [](RunConfig& c, const std::string& v, int l) { c.t_final = to_double(v, "t_final", c.source, l); };
        m["tau_ref"] = [](RunConfig& c, const std::string& v, int l) { c.tau_ref = to_double(v, "tau_ref", c.source, l); };
        m["scheme"] = [](RunConfig& c, const std::string& v, int) { c.scheme = v; };
        m["ref_scheme"] = [](RunConfig& c, const std::string& v, int) { c.ref_scheme = v; };
        m["c0"] = par(&ModelParams::c0, "c0");
        m["c1"] = par(&ModelParams::c1, "c1");
        m["c2"] = par(&ModelParams::c2, "c2");
        m["omega"] = par(&ModelParams::omega, "omega");
        m["gamma_soc"] = par(&ModelParams::gamma_soc, "gamma_soc");
        m["gamma_x"] = par(&ModelParams::gamma_x, "gamma_x");
        m["gamma_y"] = par(&ModelParams::gamma_y, "gamma_y");
        m["gamma_z"] = par(&ModelParams::gamma_z, "gamma_z");
        m["init"] = [](RunConfig& c, const std::string& v, int l) {
            try {
                c.init.kind = parse_initial_kind(v);
            } catch (const ConfigError& e) {
                fail(c.source, l, e.what());
            }
        };
        m["init_path"] = [](RunConfig& c, const std::string& v, int) { c.init.path = v; };
        m["normalize"] = [](RunConfig& c, const std::string& v, int l) { c.init.normalize = to_bool(v, "normalize", c.source, l); };
        m["snapshot_every"] = [](RunConfig& c, const std::string& v, int l) { c.snapshot_every = to_int(v, "snapshot_every", c.source, l); };
        m["diag_every"] = [](RunConfig& c, const std::string& v, int l) { c.diag_every = to_int(v, "diag_every", c.source, l); };
        m["propagator_cache"] = [](RunConfig& c, const std::string& v, int l) {
            c.propagator_cache = to_bool(v, "propagator_cache", c.source, l);
        };
        m["seed"] = [](RunConfig& c, const std::string& v, int l) {
            const long long s = to_int(v, "seed", c.source, l);
            if (s < 0) fail(c.source, l, "seed must be non-negative");
            c.seed = static_cast<unsigned long long>(s);
        };
        m["output_dir"] = [](RunConfig& c, const std::string& v, int) { c.output_dir = v; };
        return m;
    }();
    return s;
}

void validate(const RunConfig& c) {
    auto line_of = [&](const char* key) {
        const auto it = c.lines.find(key);
        return it == c.lines.end() ? 0 : it->second;
    };
    auto check = [&](bool ok, const char* key, const std::string& msg) {
        if (!ok) fail(c.source, line_of(key), msg);
    };
    check(c.dim == 2 || c.dim == 3, "dim", "dim must be 2 or 3");
    check(c.N >= 4 && c.N % 2 == 0, "N", "N must be even and at least 4");
    check(c.L > 0.0, "L", "L must be positive");
    check(c.tau > 0.0, "tau", "tau must be positive");
    check(c.t_final >= 0.0, "t_final", "t_final must be non-negative");
    check(c.tau_ref > 0.0, "tau_ref", "tau_ref must be positive");
    check(c.snapshot_every >= 0, "snapshot_every", "snapshot_every must be non-negative");
    check(c.diag_every >= 0, "diag_every", "diag_every must be non-negative");
    check(!c.output_dir.empty(), "output_dir", "output_dir must not be empty");
    try {
        step_count(c.t_final, c.tau);
    } catch (const ConfigError& e) {
        fail(c.source, line_of("t_final") ? line_of("t_final") : line_of("tau"), e.what());
    }
    for (const char* key : {"scheme", "ref_scheme"}) {
        try {
            make_scheme(std::string(key) == "scheme" ? c.scheme : c.ref_scheme);
        } catch (const ConfigError& e) {
            fail(c.source, line_of(key), e.what());
        }
    }
    if (c.init.kind == InitialKind::FromFile)
        check(!c.init.path.empty(), "init", "init = from_file requires init_path");
    if (c.init.kind == InitialKind::GaussianWide || c.init.kind == InitialKind::GaussianVortex)
        check(c.dim == 2, "init", "initial data '" + to_string(c.init.kind) + "' is defined for dim = 2 only");
}

}  // namespace

GridPtr RunConfig::grid() const { return build_grid(dim, L, N); }

RunConfig parse_config(const std::string& text, const std::string& source) {
    RunConfig cfg;
    cfg.source = source;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) fail(source, line, "expected 'key = value', got '" + body + "'");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) fail(source, line, "missing key before '='");
        if (value.empty()) fail(source, line, "missing value for '" + key + "'");
        const auto it = setters().find(key);
        if (it == setters().end()) fail(source, line, "unknown key '" + key + "'");
        if (const auto prev = cfg.lines.find(key); prev != cfg.lines.end())
            fail(source, line, "duplicate key '" + key + "' (first set on line " + std::to_string(prev->second) + ")");
        cfg.lines[key] = line;
        it->second(cfg, value, line);
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config '" + path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), path);
}

std::string to_text(const RunConfig& c) {
    std::ostringstream os;
    os.precision(17);
    os << "dim = " << c.dim << "\nL = " << c.L << "\nN = " << c.N << "\ntau = " << c.tau
       << "\nt_final = " << c.t_final << "\nscheme = " << c.scheme << "\nc0 = " << c.params.c0
       << "\nc1 = " << c.params.c1 << "\nc2 = " << c.params.c2 << "\nomega = " << c.params.omega
       << "\ngamma_soc = " << c.params.gamma_soc << "\ngamma_x = " << c.params.gamma_x
       << "\ngamma_y = " << c.params.gamma_y << "\ngamma_z = " << c.params.gamma_z
       << "\ninit = " << to_string(c.init.kind) << "\n";
    if (!c.init.path.empty()) os << "init_path = " << c.init.path << "\n";
    os << "normalize = " << (c.init.normalize ? "true" : "false") << "\nsnapshot_every = " << c.snapshot_every
       << "\ndiag_every = " << c.diag_every << "\npropagator_cache = " << (c.propagator_cache ? "true" : "false")
       << "\nseed = " << c.seed << "\noutput_dir = " << c.output_dir << "\ntau_ref = " << c.tau_ref
       << "\nref_scheme = " << c.ref_scheme << "\n";
    return os.str();
}

}  // namespace spinor::app
