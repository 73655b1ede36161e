#include "fockslit/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "fockslit/csv.hpp"
#include "fockslit/version.hpp"

namespace fockslit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json config_json(const RunConfig& c) {
    json j;
    j["lattice"] = {{"box_length", c.lattice.box_length},
                    {"cutoff", c.lattice.cutoff},
                    {"mass", c.lattice.mass},
                    {"epsilon", c.lattice.epsilon}};
    j["slit"] = {{"separation", c.slit.separation},
                 {"wavenumber", c.slit.wavenumber},
                 {"magnitude_a", c.slit.magnitude_a},
                 {"phase_a", c.slit.phase_a},
                 {"magnitude_b", c.slit.magnitude_b},
                 {"phase_b", c.slit.phase_b},
                 {"source_radius", c.slit.source_radius},
                 {"exclusion_radius", c.slit.exclusion_radius},
                 {"dispersion", to_string(c.slit.dispersion)}};
    j["experiment"] = to_string(c.experiment);
    const bool needs_screen = c.experiment == ExperimentKind::Scan ||
                              c.experiment == ExperimentKind::Fringes ||
                              c.experiment == ExperimentKind::Incoherent ||
                              c.experiment == ExperimentKind::Reconstruct;
    if (needs_screen)
        j["screen"] = {{"distance", c.screen.distance}, {"x_min", c.screen.x_min},
                       {"x_max", c.screen.x_max},       {"y", c.screen.y},
                       {"samples", c.screen.samples},   {"time", c.screen.time},
                       {"observable", to_string(c.screen.observable)}};
    j["state_kind"] = to_string(c.state_kind);
    j["seed"] = c.seed;
    j["phase_grid"] = c.phase_grid;
    j["phase_sampling"] = to_string(c.phase_sampling);
    if (c.experiment == ExperimentKind::OverlapSweep)
        j["overlap"] = {{"d_min", c.overlap.d_min},
                        {"d_max", c.overlap.d_max},
                        {"count", c.overlap.count}};
    if (c.experiment == ExperimentKind::Reconstruct)
        j["reconstruct"] = {{"cutoffs", c.reconstruct.cutoffs}};
    return j;
}

void write_scan_csv(const std::string& path, const ScreenScan& scan) {
    CsvWriter csv(path);
    csv.row({"x", "y", "z", "t", "value", "observable_id"});
    const ScreenGeometry& g = scan.geometry;
    for (int i = 0; i < g.samples; ++i) {
        const Vec3 p = g.point(i);
        csv.row({format_double(p.x), format_double(p.y), format_double(p.z),
                 format_double(scan.time), format_double(scan.values[i]),
                 to_string(scan.observable)});
    }
}

double window_visibility(const ScreenScan& scan, double window) {
    const ScreenGeometry& g = scan.geometry;
    double vmax = -1e300, vmin = 1e300;
    for (int i = 0; i < g.samples; ++i) {
        const double x = g.x_min + g.step() * i;
        if (std::abs(x) <= window) {
            vmax = std::max(vmax, scan.values[i]);
            vmin = std::min(vmin, scan.values[i]);
        }
    }
    if (!(vmax > -1e300)) return 0.0;
    const double denom = vmax + vmin;
    return denom != 0.0 ? (vmax - vmin) / denom : 0.0;
}

struct OutputTracker {
    std::vector<std::string> files;

    std::string add(const fs::path& dir, const std::string& name) {
        std::string p = (dir / name).string();
        files.push_back(p);
        return p;
    }
    void discard_all() {
        for (const std::string& f : files) {
            std::error_code ec;
            fs::remove(f, ec);
        }
        files.clear();
    }
};

}  // namespace

std::string manifest_text(const RunConfig& config, const std::vector<std::string>& outputs) {
    json j;
    j["fockslit_manifest"] = {{"version", version}};
    j["config"] = config_json(config);
    ModeLattice lattice(config.lattice);
    double wmin = 1e300, wmax = 0.0;
    for (const Mode& m : lattice.modes()) {
        wmin = std::min(wmin, m.omega);
        wmax = std::max(wmax, m.omega);
    }
    j["lattice_diagnostics"] = {{"mode_count", lattice.size()},
                                {"dk", lattice.spec().dk()},
                                {"omega_min", wmin},
                                {"omega_max", wmax},
                                {"omega_source", config.slit.omega_k()}};
    json names = json::array();
    for (const std::string& f : outputs) names.push_back(fs::path(f).filename().string());
    j["outputs"] = names;
    j["format"] = {{"csv_significant_digits", 17}, {"units", "natural (c=hbar=1)"}};
    return j.dump(2) + "\n";
}

ResultBundle run_experiment(const RunConfig& config, const std::string& out_dir, bool quiet) {
    const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw RunnerError("cannot create output directory " + dir.string() + ": " + ec.message());

    OutputTracker out;
    auto note = [&](const std::string& msg) {
        if (!quiet) std::fprintf(stdout, "%s\n", msg.c_str());
    };

    try {
        switch (config.experiment) {
            case ExperimentKind::Scan: {
                const ModeLattice lattice(config.lattice);
                validate_geometry(config.screen.geometry(), config.lattice, config.slit);
                const QuantumState state = config.state_kind == StateKind::Coherent
                                               ? build_coherent_state(lattice, config.slit)
                                               : build_double_slit_state(lattice, config.slit);
                const ScreenScan scan = scan_screen(state, config.screen.geometry(),
                                                    config.screen.observable, config.screen.time);
                write_scan_csv(out.add(dir, "scan.csv"), scan);
                note("scan: " + std::to_string(scan.values.size()) + " samples");
                break;
            }
            case ExperimentKind::Fringes: {
                const ModeLattice lattice(config.lattice);
                validate_geometry(config.screen.geometry(), config.lattice, config.slit);
                const QuantumState state = config.state_kind == StateKind::Coherent
                                               ? build_coherent_state(lattice, config.slit)
                                               : build_double_slit_state(lattice, config.slit);
                const ScreenScan scan = scan_screen(state, config.screen.geometry(),
                                                    config.screen.observable, config.screen.time);
                const FringeReport rep = fringe_analysis(scan, config.slit);
                write_scan_csv(out.add(dir, "scan.csv"), scan);
                CsvWriter csv(out.add(dir, "fringes.csv"));
                csv.row({"fringe_spacing", "visibility", "predicted_spacing", "spacing_error",
                         "n_extrema"});
                csv.row({format_double(rep.fringe_spacing), format_double(rep.visibility),
                         format_double(rep.predicted_spacing), format_double(rep.spacing_error),
                         std::to_string(rep.n_extrema)});
                note("fringes: spacing " + format_double(rep.fringe_spacing) + " predicted " +
                     format_double(rep.predicted_spacing));
                break;
            }
            case ExperimentKind::Incoherent: {
                const ModeLattice lattice(config.lattice);
                validate_geometry(config.screen.geometry(), config.lattice, config.slit);
                const ScreenGeometry geom = config.screen.geometry();
                const ScreenScan avg = incoherent_average(
                    lattice, config.slit, config.screen.observable, geom, config.screen.time,
                    config.phase_grid, config.phase_sampling, config.seed, config.state_kind);
                const QuantumState sa = build_source_state(lattice, config.slit, SourceId::A);
                const QuantumState sb = build_source_state(lattice, config.slit, SourceId::B);
                const ScreenScan scan_a =
                    scan_screen(sa, geom, config.screen.observable, config.screen.time);
                const ScreenScan scan_b =
                    scan_screen(sb, geom, config.screen.observable, config.screen.time);
                write_scan_csv(out.add(dir, "scan_averaged.csv"), avg);
                write_scan_csv(out.add(dir, "scan_single_a.csv"), scan_a);
                write_scan_csv(out.add(dir, "scan_single_b.csv"), scan_b);

                // washout metrics: residual against the single-source sum and the
                // visibility of the envelope-normalized averaged scan
                double resid = 0.0, scale = 0.0;
                ScreenScan normalized = avg;
                for (int i = 0; i < geom.samples; ++i) {
                    const double envelope = scan_a.values[i] + scan_b.values[i];
                    resid = std::max(resid, std::abs(avg.values[i] - envelope));
                    scale = std::max(scale, std::abs(envelope));
                    normalized.values[i] = envelope != 0.0 ? avg.values[i] / envelope : 0.0;
                }
                const double window =
                    3.0 * 2.0 * pi * geom.distance / (config.slit.wavenumber * config.slit.separation);
                CsvWriter csv(out.add(dir, "summary.csv"));
                csv.row({"max_abs_residual", "residual_scale", "visibility_normalized",
                         "visibility_raw"});
                csv.row({format_double(resid), format_double(scale),
                         format_double(window_visibility(normalized, window)),
                         format_double(window_visibility(avg, window))});
                note("incoherent: max |avg - (A+B)| = " + format_double(resid));
                break;
            }
            case ExperimentKind::OverlapSweep: {
                const ModeLattice lattice(config.lattice);
                std::vector<double> ds(config.overlap.count);
                for (int i = 0; i < config.overlap.count; ++i)
                    ds[i] = config.overlap.d_min +
                            (config.overlap.d_max - config.overlap.d_min) * i /
                                (config.overlap.count - 1);
                const auto curve = overlap_curve(lattice, config.slit, ds);
                CsvWriter csv(out.add(dir, "overlap.csv"));
                csv.row({"d", "kd", "re_ratio", "im_ratio", "sinc"});
                int invalid = 0;
                for (const OverlapPoint& p : curve) {
                    if (!p.valid) ++invalid;
                    csv.row({format_double(p.d), format_double(p.kd),
                             format_double(p.valid ? p.ratio.real() : std::nan("")),
                             format_double(p.valid ? p.ratio.imag() : std::nan("")),
                             format_double(p.sinc)});
                }
                note("overlap-sweep: " + std::to_string(curve.size()) + " points, " +
                     std::to_string(invalid) + " invalid");
                break;
            }
            case ExperimentKind::Reconstruct: {
                validate_geometry(config.screen.geometry(), config.lattice, config.slit);
                const ScreenGeometry geom = config.screen.geometry();
                CsvWriter csv(out.add(dir, "reconstruct.csv"));
                csv.row({"region", "l2_error", "N"});
                const std::string region = "z=" + format_double(geom.distance) + ";x=[" +
                                           format_double(geom.x_min) + "," +
                                           format_double(geom.x_max) + "];y=" +
                                           format_double(geom.y);
                const double wk = config.slit.omega_k();
                for (int n : config.reconstruct.cutoffs) {
                    LatticeSpec ls = config.lattice;
                    ls.cutoff = n;
                    const ModeLattice lattice(ls);
                    const QuantumState state = build_double_slit_state(lattice, config.slit);
                    double num = 0.0, den = 0.0;
                    for (int i = 0; i < geom.samples; ++i) {
                        const Vec3 p = geom.point(i);
                        const cxd rec = field_expectation(state, p, config.screen.time);
                        const cxd ref = double_slit_field(config.slit, p, config.screen.time,
                                                          ls.epsilon) /
                                        std::sqrt(2.0 * wk);
                        num += std::norm(rec - ref);
                        den += std::norm(ref);
                    }
                    const double err = den > 0.0 ? std::sqrt(num / den) : 0.0;
                    csv.row({region, format_double(err), std::to_string(n)});
                    note("reconstruct: N=" + std::to_string(n) + " l2=" + format_double(err));
                }
                break;
            }
            case ExperimentKind::Validate: {
                const ModeLattice lattice(config.lattice);
                CsvWriter csv(out.add(dir, "diagnostics.csv"));
                csv.row({"check", "value", "threshold", "status"});
                auto check = [&](const std::string& name, double value, double threshold) {
                    csv.row({name, format_double(value), format_double(threshold),
                             value <= threshold ? "ok" : "fail"});
                };
                // deterministic mode-pair sample: diagonal, neighbours, k/-k pairs
                std::vector<ModePair> pairs;
                const std::size_t n = lattice.size();
                const std::size_t stride = std::max<std::size_t>(1, n / 12);
                for (std::size_t i = 0; i < n; i += stride) {
                    pairs.emplace_back(i, i);
                    pairs.emplace_back(i, n - 1 - i);  // index of -n is the mirrored position
                    pairs.emplace_back(i, (i + stride) % n);
                }
                const OrthonormalityReport rep = verify_orthonormality(lattice, pairs);
                check("orthonormality_max_dev", rep.max_deviation(), 1e-10);

                // Parseval: sum |f|^2 vs relativistic norm of the synthesized field
                const QuantumState state = build_double_slit_state(lattice, config.slit);
                const SpatialGrid grid{config.lattice.box_length, 2 * config.lattice.cutoff + 1};
                const SampledField synth = synthesize(lattice, state.coeffs(), grid, 0.0);
                const double parseval = std::abs(inner_product(synth, synth).real() -
                                                 state.norm_squared()) /
                                        state.norm_squared();
                check("parseval_rel_residual", parseval, 1e-8);
                check("mode_count_minus_expected",
                      std::abs(static_cast<double>(lattice.size()) -
                               static_cast<double>(config.lattice.mode_count())),
                      0.0);
                note("validate: orthonormality dev " + format_double(rep.max_deviation()));
                break;
            }
        }
        const std::string manifest = manifest_text(config, out.files);
        const std::string mpath = out.add(dir, "manifest.json");
        std::ofstream mf(mpath, std::ios::binary);
        if (!mf.is_open()) throw RunnerError("cannot write " + mpath);
        mf << manifest;
        mf.close();
    } catch (const std::exception&) {
        out.discard_all();
        throw;
    }
    return ResultBundle{out.files};
}

}  // namespace fockslit
