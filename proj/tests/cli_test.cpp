// End-to-end checks of the fockslit binary: exit codes, determinism across
// --threads, env fallback. The binary path arrives as argv[1] from CTest.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
    if (ok) {
        std::printf("ok: %s\n", what.c_str());
    } else {
        std::printf("FAIL: %s\n", what.c_str());
        ++failures;
    }
}

int run(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kConfig = R"({
  "lattice": {"box_length": 10.0, "cutoff": 4, "mass": 6.283185307179586, "epsilon": 0.6283185307179586},
  "slit": {"separation": 1.2, "wavenumber": 3.141592653589793,
           "magnitude_a": 1.0, "phase_a": 0.0, "magnitude_b": 1.0, "phase_b": 0.0,
           "source_radius": 0.6},
  "experiment": "scan",
  "screen": {"distance": 2.5, "x_min": -1.5, "x_max": 1.5, "y": 0.0, "samples": 41,
             "time": 0.0, "observable": "current"}
})";

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-fockslit-binary>\n", argv[0]);
        return 2;
    }
    const std::string bin = argv[1];
    const fs::path work = fs::temp_directory_path() / "fockslit_cli_test";
    fs::remove_all(work);
    fs::create_directories(work);

    const fs::path cfg = work / "config.json";
    std::ofstream(cfg) << kConfig;

    expect(run(bin + " --version > /dev/null") == 0, "--version exits 0");

    expect(run(bin + " validate " + cfg.string() + " > /dev/null") == 0,
           "validate accepts a good config (exit 0)");

    const fs::path bad = work / "bad.json";
    std::ofstream(bad) << R"({"lattice": {"box_length": -1}})";
    expect(run(bin + " validate " + bad.string() + " 2> /dev/null") == 1,
           "validate rejects a bad config (exit 1)");
    expect(run(bin + " run " + bad.string() + " --quiet 2> /dev/null") == 1,
           "run refuses a bad config (exit 1)");

    const fs::path out1 = work / "out1", out2 = work / "out2", out3 = work / "out3";
    expect(run(bin + " run " + cfg.string() + " --out " + out1.string() +
               " --threads 1 --quiet") == 0,
           "run succeeds (exit 0)");
    expect(run(bin + " run " + cfg.string() + " --out " + out2.string() +
               " --threads 4 --quiet") == 0,
           "run succeeds with more threads");
    expect(run("FOCKSLIT_THREADS=2 " + bin + " run " + cfg.string() + " --out " + out3.string() +
               " --quiet") == 0,
           "run succeeds with FOCKSLIT_THREADS");

    expect(slurp(out1 / "scan.csv") == slurp(out2 / "scan.csv"),
           "scan.csv byte-identical across --threads");
    expect(slurp(out1 / "scan.csv") == slurp(out3 / "scan.csv"),
           "scan.csv byte-identical with env thread override");
    expect(slurp(out1 / "manifest.json") == slurp(out2 / "manifest.json"),
           "manifest byte-identical across --threads");

    expect(run(bin + " run " + cfg.string() + " --out /proc/fockslit_forbidden --quiet 2> /dev/null") == 2,
           "unwritable output directory is a runtime error (exit 2)");

    // manifest round-trip through the CLI
    const fs::path out4 = work / "out4";
    expect(run(bin + " run " + (out1 / "manifest.json").string() + " --out " + out4.string() +
               " --quiet") == 0,
           "run accepts an emitted manifest");
    expect(slurp(out1 / "scan.csv") == slurp(out4 / "scan.csv"),
           "manifest re-run reproduces scan.csv byte-for-byte");

    // without --out the config's own "output" directory is used
    {
        const fs::path outdir = work / "from_config";
        std::string with_output(kConfig);
        with_output.insert(with_output.rfind('}'), ",\n  \"output\": \"" + outdir.string() + "\"\n");
        const fs::path cfg2 = work / "config_with_output.json";
        std::ofstream(cfg2) << with_output;
        expect(run(bin + " run " + cfg2.string() + " --quiet") == 0 &&
                   fs::exists(outdir / "scan.csv"),
               "run honors the config output directory");
    }

    // every shipped example config validates
    if (argc > 2) {
        for (const char* name : {"scan", "fringes", "incoherent", "overlap", "reconstruct",
                                 "validate"}) {
            const fs::path c = fs::path(argv[2]) / (std::string(name) + ".json");
            expect(run(bin + " validate " + c.string() + " > /dev/null") == 0,
                   std::string("configs/") + name + ".json validates");
        }
    }

    fs::remove_all(work);
    if (failures) {
        std::printf("%d failure(s)\n", failures);
        return 1;
    }
    std::printf("all cli checks passed\n");
    return 0;
}
