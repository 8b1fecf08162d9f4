#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "spinor/errors.hpp"
#include "spinor/snapshot.hpp"

using namespace spinor;

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

SpinorField random_state(const GridPtr& g, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    SpinorField psi(g);
    for (int m = 0; m < 5; ++m)
        for (auto& v : psi.component(m).values()) v = cplx(n(rng), n(rng));
    return psi;
}

std::vector<char> slurp(const std::string& p) {
    std::ifstream is(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

void dump(const std::string& p, const std::vector<char>& b) {
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    os.write(b.data(), static_cast<std::streamsize>(b.size()));
}

}  // namespace

TEST_CASE("snapshot round trip is bit exact") {
    const auto g = build_grid(2, 5.5, 16);
    const SpinorField psi = random_state(g, 1);
    const std::string p = temp_path("spinor_rt.sp2b");
    write_snapshot(p, psi, 0.125, 0.2, 0.3);
    CHECK(std::filesystem::file_size(p) == kSnapshotHeaderBytes + 5 * 256 * 16);
    const Snapshot s = read_snapshot(p);
    CHECK(s.t == 0.125);
    CHECK(s.omega == 0.2);
    CHECK(s.gamma_soc == 0.3);
    CHECK(s.state.grid() == *g);
    for (int m = 0; m < 5; ++m)
        CHECK(std::memcmp(s.state.component(m).data(), psi.component(m).data(), psi.grid().size() * sizeof(cplx)) == 0);
    std::remove(p.c_str());
}

TEST_CASE("snapshot header layout") {
    const auto g = build_grid(3, 2.0, 4);
    const std::string p = temp_path("spinor_hdr.sp2b");
    write_snapshot(p, random_state(g, 2), 1.0, 0.0, 0.0);
    const auto b = slurp(p);
    CHECK(std::memcmp(b.data(), "SP2B", 4) == 0);
    std::uint32_t v[3];
    std::memcpy(v, b.data() + 4, 12);
    CHECK(v[0] == 1);
    CHECK(v[1] == 3);
    CHECK(v[2] == 4);
    double L;
    std::memcpy(&L, b.data() + 16, 8);
    CHECK(L == 2.0);
    std::remove(p.c_str());
}

TEST_CASE("snapshot format errors") {
    const auto g = build_grid(2, 3.0, 8);
    const std::string p = temp_path("spinor_bad.sp2b");
    write_snapshot(p, random_state(g, 3), 0.0, 0.0, 0.0);
    const auto good = slurp(p);

    auto bad = good;
    bad[0] = 'X';
    dump(p, bad);
    CHECK_THROWS_WITH_AS(read_snapshot(p), doctest::Contains("magic"), IoError);

    bad = good;
    bad[4] = 2;
    dump(p, bad);
    CHECK_THROWS_WITH_AS(read_snapshot(p), doctest::Contains("version 2"), IoError);
    CHECK_THROWS_WITH_AS(read_snapshot(p), doctest::Contains("version 1"), IoError);

    bad.assign(good.begin(), good.end() - 16);
    dump(p, bad);
    CHECK_THROWS_WITH_AS(read_snapshot(p), doctest::Contains("truncated"), IoError);

    bad.assign(good.begin(), good.begin() + 20);
    dump(p, bad);
    CHECK_THROWS_WITH_AS(read_snapshot(p), doctest::Contains("truncated"), IoError);

    CHECK_THROWS_AS(read_snapshot(temp_path("does_not_exist.sp2b")), IoError);
    std::remove(p.c_str());
}
