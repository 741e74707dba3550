#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace chern {

/// Parsed command-line request; `run` is the whole front end so tests can
/// drive it in-process.
struct RunConfig {
    std::string command;               // analyze | certify | vanishing | extremal |
                                       // verify-identities | gen
    std::string model;                 // model spec, e.g. "fs:n=2,c=2"
    std::string input;                 // tensor file path (alternative to model)
    std::vector<std::string> points;   // extra tensor files for multi-point minima
    std::string model_f;               // auxiliary bundle model
    std::string input_f;               // auxiliary bundle file
    int k = 1;
    int l = 1;
    std::string kind = "uniform-rc";
    long samples = 100000;
    int restarts = 16;
    std::uint64_t seed = 0;
    double tol = 1e-10;
    int trials = 1000;
    std::string mode = "min";
    std::string output;                // report file; stdout when empty
};

/// Exit status: 0 success, 1 hypothesis violated, 2 input/shape error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace chern
