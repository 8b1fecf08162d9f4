#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinor/diagnostics.hpp"
#include "spinor/snapshot.hpp"
#include "spinor_app/commands.hpp"

using namespace spinor;
using namespace spinor::app;

namespace {

std::string temp_dir(const char* name) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(p);
    return p.string();
}

std::string slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

RunConfig small_config(const std::string& out, const std::string& extra = "") {
    return parse_config("L = 6\nN = 16\ntau = 0.01\nc0 = 10\nc1 = 1\nc2 = 1\nomega = 0.3\ngamma_soc = 0.2\n"
                        "output_dir = " + out + "\n" + extra);
}

}  // namespace

TEST_CASE("t_final = 0 writes the header and one row and no snapshots") {
    const std::string dir = temp_dir("spinor_cmd_t0");
    std::ostringstream log;
    const RunSummary s = cmd_run(small_config(dir, "snapshot_every = 1\n"), log);
    CHECK(s.steps == 0);
    CHECK(s.snapshots.empty());
    const std::string csv = slurp(s.csv_path);
    CHECK(csv.rfind("t,mass,energy,magnetization,lz,delta_x,delta_y\n", 0) == 0);
    CHECK(count_lines(csv) == 2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run cadence of diagnostics and snapshots") {
    const std::string dir = temp_dir("spinor_cmd_cadence");
    std::ostringstream log;
    const RunSummary s = cmd_run(small_config(dir, "t_final = 0.1\ndiag_every = 4\nsnapshot_every = 5\n"), log);
    CHECK(s.steps == 10);
    // rows at n = 0, 4, 8 and the final step
    REQUIRE(s.records.size() == 4);
    CHECK(s.records.back().t == doctest::Approx(0.1));
    REQUIRE(s.snapshots.size() == 2);
    const Snapshot snap = read_snapshot(s.snapshots.back());
    CHECK(snap.t == doctest::Approx(0.1));
    CHECK(mass(snap.state) == doctest::Approx(s.records.back().mass).epsilon(1e-14));
    std::filesystem::remove_all(dir);
}

TEST_CASE("runs are byte-identical") {
    const std::string a = temp_dir("spinor_cmd_det_a");
    const std::string b = temp_dir("spinor_cmd_det_b");
    std::ostringstream log;
    const std::string extra = "t_final = 0.05\nscheme = ts4\nsnapshot_every = 5\npropagator_cache = true\n";
    const RunSummary ra = cmd_run(small_config(a, extra), log);
    const RunSummary rb = cmd_run(small_config(b, extra), log);
    CHECK(slurp(ra.csv_path) == slurp(rb.csv_path));
    REQUIRE(ra.snapshots.size() == 1);
    CHECK(slurp(ra.snapshots[0]) == slurp(rb.snapshots[0]));
    std::filesystem::remove_all(a);
    std::filesystem::remove_all(b);
}

TEST_CASE("3D runs add the delta_z column") {
    const std::string dir = temp_dir("spinor_cmd_3d");
    std::ostringstream log;
    const RunSummary s =
        cmd_run(parse_config("dim = 3\nL = 5\nN = 8\ntau = 0.01\nt_final = 0.02\noutput_dir = " + dir + "\n"), log);
    const std::string csv = slurp(s.csv_path);
    CHECK(csv.rfind("t,mass,energy,magnetization,lz,delta_x,delta_y,delta_z\n", 0) == 0);
    CHECK(count_lines(csv) == 4);
    std::filesystem::remove_all(dir);
}

TEST_CASE("temporal converge shows second order for ts2") {
    const RunConfig cfg = parse_config(
        "L = 6\nN = 32\nt_final = 0.2\nc0 = 20\nc1 = -1\nc2 = 1\nomega = 0.2\ngamma_soc = 0.3\ntau_ref = 0.0005\n");
    std::ostringstream log;
    const ConvergeReport r = cmd_converge(cfg, "temporal", {0.02, 0.01, 0.005}, log);
    REQUIRE(r.rows.size() == 3);
    CHECK(!r.rows[0].has_rate);
    for (std::size_t k = 1; k < r.rows.size(); ++k) CHECK(r.rows[k].max_rate == doctest::Approx(2.0).epsilon(0.05));
}
