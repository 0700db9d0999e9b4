#pragma once

#include <stdexcept>
#include <string>

namespace kgscat {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// |1 + R-(0)| too small, non-finite Jost values, or generic data where phi is needed
struct DegenerateScattering : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegratorGuard : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace kgscat
