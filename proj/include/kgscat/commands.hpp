#pragma once

#include <ostream>
#include <string>

namespace kgscat {

struct CommandOptions {
    std::string config_path;
    std::string out_dir = ".";
    bool svg = false;
    std::string cache_basis;
};

// Each returns the process exit code: 0 success, 2 config error,
// 3 degenerate spectral data, 4 integrator guard, 1 anything else.
int run_command(const std::string& name, const CommandOptions& opt, std::ostream& log);

int cmd_scatter(const CommandOptions& opt, std::ostream& log);
int cmd_linear_decay(const CommandOptions& opt, std::ostream& log);
int cmd_nlkg(const CommandOptions& opt, std::ostream& log);
int cmd_selftest(const CommandOptions& opt, std::ostream& log);

}  // namespace kgscat
