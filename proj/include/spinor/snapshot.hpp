#pragma once

#include <cstdint>
#include <string>

#include "spinor/spinor.hpp"

namespace spinor {

// Binary snapshot layout (all little-endian):
//   bytes 0..3   magic "SP2B"
//   u32          version (= 1)
//   u32          dim
//   u32          N
//   f64          L
//   f64          t
//   f64          omega
//   f64          gamma_soc
//   payload      components l = 2, 1, 0, -1, -2; per component N^dim nodes in
//                storage order (x fastest); per node f64 re, f64 im.
inline constexpr std::uint32_t kSnapshotVersion = 1;
inline constexpr std::size_t kSnapshotHeaderBytes = 4 + 3 * 4 + 4 * 8;

struct Snapshot {
    SpinorField state;
    double t = 0.0;
    double omega = 0.0;
    double gamma_soc = 0.0;
};

void write_snapshot(const std::string& path, const SpinorField& state, double t, double omega, double gamma_soc);
Snapshot read_snapshot(const std::string& path);

}  // namespace spinor
