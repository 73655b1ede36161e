#include "fockslit/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fockslit {

using nlohmann::json;

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Reconstruct: return "reconstruct";
        case ExperimentKind::Scan: return "scan";
        case ExperimentKind::Fringes: return "fringes";
        case ExperimentKind::Incoherent: return "incoherent";
        case ExperimentKind::OverlapSweep: return "overlap-sweep";
        case ExperimentKind::Validate: return "validate";
    }
    return "?";
}

const char* to_string(ObservableId o) {
    switch (o) {
        case ObservableId::Field: return "field";
        case ObservableId::Current: return "current";
        case ObservableId::Energy: return "energy";
        case ObservableId::EnergyTimeAveraged: return "energy_time_averaged";
    }
    return "?";
}

const char* to_string(StateKind k) {
    return k == StateKind::Coherent ? "coherent" : "one_particle";
}

const char* to_string(PhaseSampling p) {
    return p == PhaseSampling::MonteCarlo ? "monte_carlo" : "grid";
}

const char* to_string(Dispersion d) {
    return d == Dispersion::NonRelativistic ? "nonrelativistic" : "relativistic";
}

std::string to_string(const Diagnostic& d) {
    std::ostringstream os;
    if (d.line > 0) os << "line " << d.line << ": ";
    if (!d.path.empty()) os << d.path << ": ";
    os << d.message;
    return os.str();
}

ConfigError::ConfigError(const std::string& what, std::vector<Diagnostic> diags)
    : std::runtime_error(what), diags_(std::move(diags)) {}

namespace {

int line_of_key(const std::string& text, const std::string& key) {
    const std::string needle = "\"" + key + "\"";
    const auto pos = text.find(needle);
    if (pos == std::string::npos) return 0;
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
}

int line_of_offset(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

struct Parser {
    const std::string& text;
    std::vector<Diagnostic>& diags;

    void fail(const std::string& path, const std::string& key, const std::string& msg) {
        diags.push_back({path, line_of_key(text, key), msg});
    }

    void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
        for (const auto& item : obj.items()) {
            if (!allowed.count(item.key()))
                fail(path.empty() ? item.key() : path + "." + item.key(), item.key(),
                     "unknown key (strict parsing rejects it)");
        }
    }

    bool has(const json& obj, const std::string& key) { return obj.contains(key); }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

    double num(const json& obj, const std::string& path, const std::string& key, bool required,
               double fallback) {
        if (!obj.contains(key)) {
            if (required) fail(join(path, key), key, "missing required number");
            return fallback;
        }
        const json& v = obj.at(key);
        if (!v.is_number()) {
            fail(join(path, key), key, "expected a number");
            return fallback;
        }
        return v.get<double>();
    }

    long long integer(const json& obj, const std::string& path, const std::string& key,
                      bool required, long long fallback) {
        if (!obj.contains(key)) {
            if (required) fail(join(path, key), key, "missing required integer");
            return fallback;
        }
        const json& v = obj.at(key);
        if (!v.is_number_integer()) {
            fail(join(path, key), key, "expected an integer");
            return fallback;
        }
        return v.get<long long>();
    }

    std::string str(const json& obj, const std::string& path, const std::string& key,
                    bool required, const std::string& fallback) {
        if (!obj.contains(key)) {
            if (required) fail(join(path, key), key, "missing required string");
            return fallback;
        }
        const json& v = obj.at(key);
        if (!v.is_string()) {
            fail(join(path, key), key, "expected a string");
            return fallback;
        }
        return v.get<std::string>();
    }
};

bool parse_observable(const std::string& s, ObservableId& out) {
    if (s == "field") out = ObservableId::Field;
    else if (s == "current") out = ObservableId::Current;
    else if (s == "energy") out = ObservableId::Energy;
    else if (s == "energy_time_averaged") out = ObservableId::EnergyTimeAveraged;
    else return false;
    return true;
}

bool parse_experiment(const std::string& s, ExperimentKind& out) {
    if (s == "reconstruct") out = ExperimentKind::Reconstruct;
    else if (s == "scan") out = ExperimentKind::Scan;
    else if (s == "fringes") out = ExperimentKind::Fringes;
    else if (s == "incoherent") out = ExperimentKind::Incoherent;
    else if (s == "overlap-sweep") out = ExperimentKind::OverlapSweep;
    else if (s == "validate") out = ExperimentKind::Validate;
    else return false;
    return true;
}

RunConfig parse_impl(const std::string& text, const std::string& name,
                     std::vector<Diagnostic>& diags) {
    RunConfig cfg;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        diags.push_back({name, line_of_offset(text, e.byte), std::string("JSON parse error: ") + e.what()});
        return cfg;
    }
    if (!root.is_object()) {
        diags.push_back({name, 1, "config must be a JSON object"});
        return cfg;
    }

    Parser p{text, diags};
    p.check_keys(root, "", {"lattice", "slit", "experiment", "screen", "state_kind", "output",
                            "seed", "phase_grid", "phase_sampling", "overlap", "reconstruct"});

    // lattice
    if (!root.contains("lattice") || !root.at("lattice").is_object()) {
        diags.push_back({"lattice", line_of_key(text, "lattice"), "missing required object"});
    } else {
        const json& lat = root.at("lattice");
        p.check_keys(lat, "lattice", {"box_length", "cutoff", "mass", "epsilon"});
        cfg.lattice.box_length = p.num(lat, "lattice", "box_length", true, 0.0);
        cfg.lattice.cutoff = static_cast<int>(p.integer(lat, "lattice", "cutoff", true, 0));
        cfg.lattice.mass = p.num(lat, "lattice", "mass", true, 0.0);
        // default regularization: two momentum-lattice spacings
        cfg.lattice.epsilon =
            p.num(lat, "lattice", "epsilon", false, 2.0 * 2.0 * pi / cfg.lattice.box_length);
    }

    // slit
    if (!root.contains("slit") || !root.at("slit").is_object()) {
        diags.push_back({"slit", line_of_key(text, "slit"), "missing required object"});
    } else {
        const json& sl = root.at("slit");
        p.check_keys(sl, "slit",
                     {"separation", "wavenumber", "magnitude_a", "phase_a", "magnitude_b",
                      "phase_b", "source_radius", "exclusion_radius", "dispersion"});
        cfg.slit.separation = p.num(sl, "slit", "separation", true, 0.0);
        cfg.slit.wavenumber = p.num(sl, "slit", "wavenumber", true, 0.0);
        cfg.slit.magnitude_a = p.num(sl, "slit", "magnitude_a", true, 0.0);
        cfg.slit.phase_a = p.num(sl, "slit", "phase_a", true, 0.0);
        cfg.slit.magnitude_b = p.num(sl, "slit", "magnitude_b", true, 0.0);
        cfg.slit.phase_b = p.num(sl, "slit", "phase_b", true, 0.0);
        cfg.slit.source_radius = p.num(sl, "slit", "source_radius", false, 0.0);
        cfg.slit.exclusion_radius =
            p.num(sl, "slit", "exclusion_radius", false, cfg.lattice.box_length / 100.0);
        const std::string disp = p.str(sl, "slit", "dispersion", false, "relativistic");
        if (disp == "relativistic") cfg.slit.dispersion = Dispersion::Relativistic;
        else if (disp == "nonrelativistic") cfg.slit.dispersion = Dispersion::NonRelativistic;
        else p.fail("slit.dispersion", "dispersion", "expected \"relativistic\" or \"nonrelativistic\"");
        cfg.slit.mass = cfg.lattice.mass;  // omega_k consistent with the lattice mass
    }

    // experiment
    {
        const std::string s = p.str(root, "", "experiment", true, "scan");
        if (!parse_experiment(s, cfg.experiment))
            p.fail("experiment", "experiment",
                   "expected one of reconstruct|scan|fringes|incoherent|overlap-sweep|validate");
    }

    // screen
    const bool needs_screen = cfg.experiment == ExperimentKind::Scan ||
                              cfg.experiment == ExperimentKind::Fringes ||
                              cfg.experiment == ExperimentKind::Incoherent ||
                              cfg.experiment == ExperimentKind::Reconstruct;
    if (root.contains("screen")) {
        if (!root.at("screen").is_object()) {
            diags.push_back({"screen", line_of_key(text, "screen"), "expected an object"});
        } else {
            const json& sc = root.at("screen");
            p.check_keys(sc, "screen",
                         {"distance", "x_min", "x_max", "y", "samples", "time", "observable"});
            cfg.screen.distance = p.num(sc, "screen", "distance", true, 0.0);
            cfg.screen.x_min = p.num(sc, "screen", "x_min", true, 0.0);
            cfg.screen.x_max = p.num(sc, "screen", "x_max", true, 0.0);
            cfg.screen.y = p.num(sc, "screen", "y", false, 0.0);
            cfg.screen.samples = static_cast<int>(p.integer(sc, "screen", "samples", true, 0));
            cfg.screen.time = p.num(sc, "screen", "time", false, 0.0);
            const std::string obs = p.str(sc, "screen", "observable", false, "current");
            if (!parse_observable(obs, cfg.screen.observable))
                p.fail("screen.observable", "observable",
                       "expected one of field|current|energy|energy_time_averaged");
        }
    } else if (needs_screen) {
        diags.push_back({"screen", 0, "missing required object for this experiment"});
    }

    // optional scalars
    if (root.contains("state_kind")) {
        const std::string s = p.str(root, "", "state_kind", false, "one_particle");
        if (s == "one_particle") cfg.state_kind = StateKind::OneParticle;
        else if (s == "coherent") cfg.state_kind = StateKind::Coherent;
        else p.fail("state_kind", "state_kind", "expected \"one_particle\" or \"coherent\"");
    }
    cfg.output = p.str(root, "", "output", false, "");
    const long long seed = p.integer(root, "", "seed", false, 0);
    if (seed < 0) p.fail("seed", "seed", "must be a non-negative integer");
    cfg.seed = static_cast<unsigned long>(seed < 0 ? 0 : seed);
    cfg.phase_grid = static_cast<int>(p.integer(root, "", "phase_grid", false, 4));
    if (root.contains("phase_sampling")) {
        const std::string s = p.str(root, "", "phase_sampling", false, "grid");
        if (s == "grid") cfg.phase_sampling = PhaseSampling::Grid;
        else if (s == "monte_carlo") cfg.phase_sampling = PhaseSampling::MonteCarlo;
        else p.fail("phase_sampling", "phase_sampling", "expected \"grid\" or \"monte_carlo\"");
    }

    // overlap sweep parameters
    if (root.contains("overlap")) {
        if (!root.at("overlap").is_object()) {
            diags.push_back({"overlap", line_of_key(text, "overlap"), "expected an object"});
        } else {
            const json& ov = root.at("overlap");
            p.check_keys(ov, "overlap", {"d_min", "d_max", "count"});
            cfg.overlap.d_min = p.num(ov, "overlap", "d_min", true, 0.0);
            cfg.overlap.d_max = p.num(ov, "overlap", "d_max", true, 0.0);
            cfg.overlap.count = static_cast<int>(p.integer(ov, "overlap", "count", true, 0));
        }
    } else if (cfg.experiment == ExperimentKind::OverlapSweep) {
        diags.push_back({"overlap", 0, "missing required object for experiment=overlap-sweep"});
    }

    if (root.contains("reconstruct")) {
        if (!root.at("reconstruct").is_object()) {
            diags.push_back({"reconstruct", line_of_key(text, "reconstruct"), "expected an object"});
        } else {
            const json& rc = root.at("reconstruct");
            p.check_keys(rc, "reconstruct", {"cutoffs"});
            if (rc.contains("cutoffs")) {
                if (!rc.at("cutoffs").is_array()) {
                    p.fail("reconstruct.cutoffs", "cutoffs", "expected an array of integers");
                } else {
                    cfg.reconstruct.cutoffs.clear();
                    for (const json& v : rc.at("cutoffs")) {
                        if (!v.is_number_integer()) {
                            p.fail("reconstruct.cutoffs", "cutoffs", "expected an array of integers");
                            break;
                        }
                        cfg.reconstruct.cutoffs.push_back(v.get<int>());
                    }
                }
            }
        }
    }

    if (!diags.empty()) return cfg;

    // module invariants, path-anchored
    try {
        cfg.lattice.validate();
    } catch (const std::exception& e) {
        diags.push_back({"lattice", line_of_key(text, "lattice"), e.what()});
    }
    try {
        cfg.slit.validate();
    } catch (const std::exception& e) {
        diags.push_back({"slit", line_of_key(text, "slit"), e.what()});
    }
    if (cfg.slit.separation > cfg.lattice.box_length / 2.0)
        diags.push_back({"slit.separation", line_of_key(text, "separation"),
                         "sources (+-d/2,0,0) must sit in the central half of the box "
                         "(constraint: separation <= box_length/2)"});
    if (cfg.slit.source_radius > 0.0 &&
        cfg.experiment != ExperimentKind::OverlapSweep &&
        2.0 * cfg.slit.source_radius + cfg.slit.separation / 2.0 > cfg.lattice.box_length / 2.0)
        diags.push_back({"slit.source_radius", line_of_key(text, "source_radius"),
                         "smeared sources must fit inside the box"});

    if (needs_screen) {
        try {
            validate_geometry(cfg.screen.geometry(), cfg.lattice, cfg.slit);
        } catch (const std::exception& e) {
            diags.push_back({"screen", line_of_key(text, "screen"), e.what()});
        }
    }
    if (cfg.experiment == ExperimentKind::Fringes || cfg.experiment == ExperimentKind::Incoherent) {
        if (cfg.screen.samples % 2 == 0)
            diags.push_back({"screen.samples", line_of_key(text, "samples"),
                             "fringe-bearing scans must use odd sample counts (x = 0 sampled)"});
    }
    if (cfg.experiment == ExperimentKind::Incoherent && cfg.phase_grid < 2)
        diags.push_back({"phase_grid", line_of_key(text, "phase_grid"),
                         "must be >= 2 per phase axis"});
    if (cfg.experiment == ExperimentKind::OverlapSweep) {
        if (!(cfg.overlap.d_min > 0.0) || !(cfg.overlap.d_max >= cfg.overlap.d_min))
            diags.push_back({"overlap", line_of_key(text, "overlap"),
                             "need 0 < d_min <= d_max"});
        if (cfg.overlap.count < 2)
            diags.push_back({"overlap.count", line_of_key(text, "count"), "need count >= 2"});
    }
    if (cfg.experiment == ExperimentKind::Reconstruct) {
        if (cfg.reconstruct.cutoffs.empty())
            diags.push_back({"reconstruct.cutoffs", line_of_key(text, "cutoffs"),
                             "need at least one cutoff"});
        for (int n : cfg.reconstruct.cutoffs)
            if (n < 1)
                diags.push_back({"reconstruct.cutoffs", line_of_key(text, "cutoffs"),
                                 "cutoffs must be >= 1"});
    }
    return cfg;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw ConfigError("cannot open config file: " + path,
                                         {{path, 0, "file does not exist or is unreadable"}});
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::vector<Diagnostic> validate_config_text(const std::string& text, const std::string& name) {
    std::vector<Diagnostic> diags;
    parse_impl(text, name, diags);
    return diags;
}

std::vector<Diagnostic> validate_config_file(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const ConfigError& e) {
        return e.diagnostics();
    }
    return validate_config_text(text, path);
}

RunConfig parse_config(const std::string& text, const std::string& name) {
    std::vector<Diagnostic> diags;
    RunConfig cfg = parse_impl(text, name, diags);
    if (!diags.empty())
        throw ConfigError("invalid config " + name + " (" + std::to_string(diags.size()) +
                              " diagnostic(s))",
                          std::move(diags));
    return cfg;
}

RunConfig load_config(const std::string& path) { return parse_config(read_file(path), path); }

RunConfig load_config_or_manifest(const std::string& path) {
    const std::string text = read_file(path);
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error&) {
        return parse_config(text, path);  // surface the parse diagnostics
    }
    if (root.is_object() && root.contains("fockslit_manifest") && root.contains("config"))
        return parse_config(root.at("config").dump(2), path + " (embedded config)");
    return parse_config(text, path);
}

}  // namespace fockslit
