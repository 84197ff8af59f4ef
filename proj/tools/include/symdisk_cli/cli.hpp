#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "symdisk/config.hpp"
#include "symdisk/pick.hpp"

namespace symdisk::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kNumericalError = 3, kNoCertificate = 4 };

struct JobConfig {
    std::string command;
    std::string input;
    std::string kernel = "szego";
    std::string out;
    double grid_radius = 0.9;
    std::size_t grid_n = 12;
    std::size_t boundary_n = 64;
    std::uint64_t seed = 1;
    std::size_t count = 0;  // 0 selects each sweep's default size
    Tolerances tol;
};

/// "szego" | "model:<matrix file>" | "table:<gram file>", evaluated on `nodes`.
KernelMatrix load_kernel(const std::string& spec, const std::vector<GammaPoint>& nodes, const Tolerances& tol);

int cmd_classify(const JobConfig& cfg, std::ostream& out);
int cmd_pick(const JobConfig& cfg, std::ostream& out);
int cmd_trace(const JobConfig& cfg, std::ostream& out, std::ostream& diag);
int cmd_realize(const JobConfig& cfg, std::ostream& out);
int cmd_verify(const JobConfig& cfg, std::ostream& out);

/// Parses arguments, dispatches, and maps errors to exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace symdisk::cli
