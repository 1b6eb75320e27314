#pragma once

// Command-line driver: verify / solve / trace / audit.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "halfwave/config.hpp"
#include "halfwave/flux.hpp"
#include "halfwave/grid.hpp"

namespace halfwave {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitPass = 0, kExitNumerical = 1, kExitUsage = 2 };

/// Everything a run depends on, resolved from the config file and flags.
struct RunConfig {
    std::string command;
    Config config;
    std::string out_dir = "halfwave_out";
    std::uint64_t seed = 1;
    int refine = 3;
    std::string suite = "all";

    double x_min = 0.0, x_max = 1.0, t_max = 1.0;
    std::size_t m = 33, n = 129;

    std::string flux_name = "p_laplacian";
    double p = 2.0;
    double eps = 0.0;

    /// zero, heat, separable, manufactured, constant, lateral or csv:PATH.
    std::string profile = "zero";
    double constant = 1.0;

    double tol = 1e-8;
    int max_iter = 200;
    std::size_t audit_samples = 100000;

    SpaceTimeGrid grid() const;
    StructuralFlux flux() const;

    /// Reads the sections [grid], [flux], [problem], [solver], [audit].
    /// Throws ConfigError for malformed or out-of-range values and for
    /// referenced files that do not exist.
    static RunConfig resolve(std::string command, Config cfg);
};

/// Entry point used by the executable; returns the process exit code.
int run_cli(int argc, char** argv);
/// Same with explicit arguments (without the program name) and streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace halfwave
