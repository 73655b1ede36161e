#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fockslit/experiment.hpp"

namespace fockslit {

// JSON run configuration: strict schema, unknown keys rejected, every module
// invariant checked at load with path-anchored diagnostics.

enum class ExperimentKind { Reconstruct, Scan, Fringes, Incoherent, OverlapSweep, Validate };

struct ScreenConfig {
    double distance = 0.0;
    double x_min = 0.0;
    double x_max = 0.0;
    double y = 0.0;
    int samples = 0;
    double time = 0.0;
    ObservableId observable = ObservableId::Current;

    ScreenGeometry geometry() const { return {distance, x_min, x_max, y, samples}; }
};

struct OverlapConfig {
    double d_min = 0.0;
    double d_max = 0.0;
    int count = 0;
};

struct ReconstructConfig {
    std::vector<int> cutoffs{4, 6, 8, 12};
};

struct RunConfig {
    LatticeSpec lattice{};
    SlitSpec slit{};
    ExperimentKind experiment = ExperimentKind::Scan;
    ScreenConfig screen{};
    StateKind state_kind = StateKind::OneParticle;
    std::string output;
    unsigned long seed = 0;
    int phase_grid = 4;
    PhaseSampling phase_sampling = PhaseSampling::Grid;
    OverlapConfig overlap{};
    ReconstructConfig reconstruct{};
};

struct Diagnostic {
    std::string path;     // e.g. "slit.separation"
    int line = 0;         // best-effort line anchor in the source text, 0 = unknown
    std::string message;
};

std::string to_string(const Diagnostic& d);

class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, std::vector<Diagnostic> diags);
    const std::vector<Diagnostic>& diagnostics() const { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

// full check without throwing; empty result means the config is valid
std::vector<Diagnostic> validate_config_text(const std::string& text, const std::string& name);
std::vector<Diagnostic> validate_config_file(const std::string& path);

// throws ConfigError (collecting all diagnostics) on any problem
RunConfig parse_config(const std::string& text, const std::string& name);
RunConfig load_config(const std::string& path);

// accepts either a config or a previously emitted run manifest
RunConfig load_config_or_manifest(const std::string& path);

const char* to_string(ExperimentKind k);
const char* to_string(ObservableId o);
const char* to_string(StateKind k);
const char* to_string(PhaseSampling p);
const char* to_string(Dispersion d);

}  // namespace fockslit
