// verify.hpp: self-verification suites behind `nmsq verify`.

#pragma once

#include "nmsq/kernels.hpp"
#include "nmsq/properties.hpp"
#include "nmsq/volterra.hpp"

#include <ostream>
#include <string_view>
#include <vector>

namespace nmsq {

enum class VerifyLevel { Quick, Full };

VerifyLevel parse_verify_level(std::string_view name);

struct VerifyResult {
    Check check;
    double seconds;
};

struct VerifySummary {
    std::vector<VerifyResult> results;
    double seconds = 0.0;

    bool passed() const;
};

// Solver oracle used by tests and verification: gamma = 1, lambda = 0.5, omega_0 = 1.
MemoryKernel default_lorentzian_kernel();
// t_end = 20, dt = 0.005.
EvolutionGrid default_lorentzian_grid();

// quick: closed-form and limiting cases. full: adds the three regime suites and
// the moment-ODE cross-checks. Each check is printed to `progress` as it finishes.
VerifySummary verify(VerifyLevel level, std::ostream* progress = nullptr);

}  // namespace nmsq
