#pragma once

#include <string>
#include <vector>

namespace spinor::app {

struct CheckResult {
    std::string name;
    double value = 0.0;      // measured worst-case deviation
    double tolerance = 0.0;
    bool pass = false;
};

CheckResult check_mode_propagator(int samples, unsigned seed);
CheckResult check_spin_rotation(int samples, unsigned seed);
CheckResult check_nonlinear_ode(int samples, unsigned seed);
CheckResult check_a00_ode(int samples, unsigned seed);
CheckResult check_linear_mol();
CheckResult check_shear_analytic();

/// Full oracle conformance suite (the `verify` command).
std::vector<CheckResult> run_conformance();

std::string format_check(const CheckResult& r);

}  // namespace spinor::app
