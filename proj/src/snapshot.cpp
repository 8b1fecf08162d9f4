#include "spinor/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "spinor/errors.hpp"

namespace spinor {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
void put(std::vector<char>& out, T value) {
    char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    out.insert(out.end(), bytes, bytes + sizeof(T));
}

template <typename T>
T get(const char* p) {
    char bytes[sizeof(T)];
    std::memcpy(bytes, p, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    T v;
    std::memcpy(&v, bytes, sizeof(T));
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const SpinorField& state, double t, double omega, double gamma_soc) {
    const auto& g = state.grid();
    std::vector<char> buf;
    buf.reserve(kSnapshotHeaderBytes + 5 * g.size() * 16);
    buf.insert(buf.end(), {'S', 'P', '2', 'B'});
    put<std::uint32_t>(buf, kSnapshotVersion);
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.dim()));
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.N()));
    put<double>(buf, g.L());
    put<double>(buf, t);
    put<double>(buf, omega);
    put<double>(buf, gamma_soc);
    for (int m = 0; m < 5; ++m)
        for (const cplx& v : state.component(m).values()) {
            put<double>(buf, v.real());
            put<double>(buf, v.imag());
        }

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!os) throw IoError("write failed for '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open snapshot '" + path + "'");
    std::vector<char> buf((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());

    if (buf.size() < kSnapshotHeaderBytes) throw IoError("snapshot '" + path + "' is truncated (header)");
    if (std::memcmp(buf.data(), "SP2B", 4) != 0) throw IoError("snapshot '" + path + "' has bad magic (expected SP2B)");
    const char* p = buf.data() + 4;
    const auto version = get<std::uint32_t>(p);
    if (version != kSnapshotVersion)
        throw IoError("snapshot '" + path + "' has unsupported version " + std::to_string(version) +
                      " (this build reads version " + std::to_string(kSnapshotVersion) + ")");
    const auto dim = get<std::uint32_t>(p + 4);
    const auto N = get<std::uint32_t>(p + 8);
    const double L = get<double>(p + 12);

    GridPtr grid;
    try {
        grid = build_grid(static_cast<int>(dim), L, static_cast<int>(N));
    } catch (const ConfigError& e) {
        throw IoError("snapshot '" + path + "' has an invalid grid header: " + e.what());
    }

    Snapshot snap;
    snap.t = get<double>(p + 20);
    snap.omega = get<double>(p + 28);
    snap.gamma_soc = get<double>(p + 36);

    const std::size_t expected = kSnapshotHeaderBytes + 5 * grid->size() * 16;
    if (buf.size() < expected) throw IoError("snapshot '" + path + "' is truncated (payload)");
    if (buf.size() > expected) throw IoError("snapshot '" + path + "' has trailing bytes");

    snap.state = SpinorField(grid);
    const char* q = buf.data() + kSnapshotHeaderBytes;
    for (int m = 0; m < 5; ++m)
        for (cplx& v : snap.state.component(m).values()) {
            v = cplx(get<double>(q), get<double>(q + 8));
            q += 16;
        }
    return snap;
}

}  // namespace spinor
