#pragma once

#include <string>
#include <vector>

#include "fockslit/config.hpp"

namespace fockslit {

// Experiment orchestration: executes the configured experiment and writes
// CSV tables plus a manifest sufficient to reproduce the run bit-for-bit.
// Partial outputs are removed on failure.

struct ResultBundle {
    std::vector<std::string> files;  // paths written, manifest last
};

class RunnerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ResultBundle run_experiment(const RunConfig& config, const std::string& out_dir,
                            bool quiet = false);

std::string manifest_text(const RunConfig& config, const std::vector<std::string>& outputs);

}  // namespace fockslit
