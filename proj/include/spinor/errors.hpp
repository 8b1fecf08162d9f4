#pragma once

#include <stdexcept>
#include <string>

namespace spinor {

// Exit codes used by the command-line front end.
enum class ExitCode : int {
    Ok = 0,
    Config = 2,
    Numerical = 3,
    Io = 4,
};

/// Invalid user-facing configuration (grid sizes, unknown names, bad keys).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed quantity violated a consistency gate (e.g. a real observable
/// with a non-negligible imaginary part).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File access and snapshot format failures.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace spinor
