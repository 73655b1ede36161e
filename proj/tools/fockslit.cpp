// fockslit: double-slit interference observables from Fock-space states on a
// discretized scalar-field mode lattice.

#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "fockslit/config.hpp"
#include "fockslit/parallel.hpp"
#include "fockslit/runner.hpp"
#include "fockslit/version.hpp"

namespace {

int resolve_threads(int cli_threads) {
    if (cli_threads > 0) return cli_threads;
    if (const char* env = std::getenv("FOCKSLIT_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fockslit: scalar-field double-slit interference on a periodic mode lattice"};
    app.set_version_flag("--version", std::string("fockslit ") + fockslit::version);
    app.require_subcommand(1);

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "check a config file and report diagnostics");
    validate->add_option("config", validate_path, "path to a JSON config")->required();

    std::string run_path, out_dir;
    int threads = 0;
    bool quiet = false;
    CLI::App* run = app.add_subcommand("run", "execute the configured experiment");
    run->add_option("config", run_path, "path to a JSON config (or an emitted manifest)")
        ->required();
    run->add_option("--out", out_dir, "output directory (default: config 'output' field or '.')");
    run->add_option("--threads", threads,
                    "worker threads (affects speed, never results; env FOCKSLIT_THREADS)");
    run->add_flag("--quiet", quiet, "suppress progress output");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) {
        const auto diags = fockslit::validate_config_file(validate_path);
        for (const auto& d : diags)
            std::fprintf(stderr, "%s: %s\n", validate_path.c_str(), fockslit::to_string(d).c_str());
        if (diags.empty()) {
            std::fprintf(stdout, "%s: ok\n", validate_path.c_str());
            return 0;
        }
        return 1;
    }

    fockslit::set_thread_count(resolve_threads(threads));
    fockslit::RunConfig config;
    try {
        config = fockslit::load_config_or_manifest(run_path);
    } catch (const fockslit::ConfigError& e) {
        for (const auto& d : e.diagnostics())
            std::fprintf(stderr, "%s: %s\n", run_path.c_str(), fockslit::to_string(d).c_str());
        return 1;
    }

    const std::string dir = !out_dir.empty() ? out_dir : (!config.output.empty() ? config.output : ".");
    try {
        const auto bundle = fockslit::run_experiment(config, dir, quiet);
        if (!quiet)
            std::fprintf(stdout, "wrote %zu file(s) to %s\n", bundle.files.size(), dir.c_str());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
