#pragma once

#include <stdexcept>
#include <string>

namespace podsim {

// Exit codes used by the CLI: 0 ok, 1 config, 2 sweep infeasible, 3 I/O,
// 4 internal invariant breach.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// A broken simulator invariant. Always a bug, never a user error.
struct SimInvariantError : std::logic_error {
    explicit SimInvariantError(const std::string& msg) : std::logic_error(msg) {}
};

inline void sim_check(bool cond, const std::string& msg) {
    if (!cond) throw SimInvariantError(msg);
}

}  // namespace podsim
