#include <doctest.h>

#include <string>

#include "fockslit/config.hpp"

using namespace fockslit;

namespace {

const char* kValid = R"({
  "lattice": {"box_length": 10.0, "cutoff": 4, "mass": 6.283185307179586, "epsilon": 0.6283185307179586},
  "slit": {"separation": 1.2, "wavenumber": 3.141592653589793,
           "magnitude_a": 1.0, "phase_a": 0.0, "magnitude_b": 1.0, "phase_b": 0.0,
           "source_radius": 0.6},
  "experiment": "scan",
  "screen": {"distance": 2.5, "x_min": -1.5, "x_max": 1.5, "y": 0.0, "samples": 41,
             "time": 0.0, "observable": "current"}
})";

std::string patched(const std::string& from, const std::string& to) {
    std::string text = kValid;
    const auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
    return text;
}

}  // namespace

TEST_CASE("valid config produces no diagnostics") {
    CHECK(validate_config_text(kValid, "test").empty());
    const RunConfig cfg = parse_config(kValid, "test");
    CHECK(cfg.lattice.cutoff == 4);
    CHECK(cfg.experiment == ExperimentKind::Scan);
    CHECK(cfg.screen.observable == ObservableId::Current);
    CHECK(cfg.slit.mass == cfg.lattice.mass);
    // exclusion radius defaults to a hundredth of the box
    CHECK(cfg.slit.exclusion_radius == doctest::Approx(0.1));
}

TEST_CASE("epsilon defaults to two momentum-lattice spacings") {
    const std::string text = patched(", \"epsilon\": 0.6283185307179586", "");
    CHECK(validate_config_text(text, "test").empty());
    const RunConfig cfg = parse_config(text, "test");
    CHECK(cfg.lattice.epsilon == doctest::Approx(2.0 * 2.0 * pi / 10.0));
}

TEST_CASE("unknown keys are rejected with their path") {
    const std::string text = patched("\"experiment\": \"scan\"",
                                     "\"experiment\": \"scan\", \"extra_knob\": 1");
    const auto diags = validate_config_text(text, "test");
    REQUIRE(diags.size() == 1);
    CHECK(diags[0].path == "extra_knob");
    CHECK(to_string(diags[0]).find("unknown key") != std::string::npos);
}

TEST_CASE("separation beyond half the box names the constraint") {
    const auto diags = validate_config_text(patched("\"separation\": 1.2", "\"separation\": 5.5"),
                                            "test");
    REQUIRE(!diags.empty());
    CHECK(diags[0].path == "slit.separation");
    CHECK(diags[0].message.find("separation <= box_length/2") != std::string::npos);
    CHECK(diags[0].line > 0);
}

TEST_CASE("zero epsilon violates the lattice invariant") {
    const auto diags = validate_config_text(
        patched("\"epsilon\": 0.6283185307179586", "\"epsilon\": 0.0"), "test");
    REQUIRE(!diags.empty());
    CHECK(diags[0].path == "lattice");
    CHECK(diags[0].message.find("epsilon") != std::string::npos);
}

TEST_CASE("geometry outside the box is a config error") {
    const auto diags = validate_config_text(patched("\"distance\": 2.5", "\"distance\": 7.5"),
                                            "test");
    REQUIRE(!diags.empty());
    CHECK(diags[0].path == "screen");
}

TEST_CASE("missing required sections and wrong types are reported") {
    CHECK(!validate_config_text(R"({"experiment":"scan"})", "test").empty());
    CHECK(!validate_config_text(patched("\"cutoff\": 4", "\"cutoff\": 4.5"), "test").empty());
    CHECK(!validate_config_text(patched("\"experiment\": \"scan\"",
                                        "\"experiment\": \"warp\""), "test").empty());
    CHECK(!validate_config_text(patched("\"observable\": \"current\"",
                                        "\"observable\": \"charge\""), "test").empty());
    CHECK(!validate_config_text("{ not json", "test").size() == 0);
}

TEST_CASE("top-level diagnostics use bare key paths") {
    const std::string text = patched("\"experiment\": \"scan\"", "\"experiment\": \"warp\"");
    const auto diags = validate_config_text(text, "test");
    REQUIRE(!diags.empty());
    CHECK(diags[0].path == "experiment");

    const auto seed_diags = validate_config_text(
        patched("\"experiment\": \"scan\"", "\"experiment\": \"scan\", \"seed\": -4"), "test");
    REQUIRE(!seed_diags.empty());
    CHECK(seed_diags[0].path == "seed");
}

TEST_CASE("parse errors carry line anchors") {
    const auto diags = validate_config_text("{\n  \"lattice\": [1,\n", "test");
    REQUIRE(!diags.empty());
    CHECK(diags[0].line >= 1);
}

TEST_CASE("experiment-specific requirements") {
    // overlap sweep needs its parameter block
    {
        const std::string text = patched("\"experiment\": \"scan\"",
                                         "\"experiment\": \"overlap-sweep\"");
        const auto diags = validate_config_text(text, "test");
        REQUIRE(!diags.empty());
        CHECK(diags[0].path == "overlap");
    }
    // fringe scans must sample x = 0
    {
        const std::string text = patched("\"samples\": 41", "\"samples\": 40");
        const std::string fr = [&] {
            std::string t = text;
            const auto pos = t.find("\"experiment\": \"scan\"");
            t.replace(pos, std::string("\"experiment\": \"scan\"").size(),
                      "\"experiment\": \"fringes\"");
            return t;
        }();
        const auto diags = validate_config_text(fr, "test");
        REQUIRE(!diags.empty());
        CHECK(diags[0].path == "screen.samples");
    }
    // validate experiment does not require a screen
    {
        const std::string text = R"({
          "lattice": {"box_length": 10.0, "cutoff": 2, "mass": 6.283185307179586, "epsilon": 0.6283185307179586},
          "slit": {"separation": 1.2, "wavenumber": 3.141592653589793,
                   "magnitude_a": 1.0, "phase_a": 0.0, "magnitude_b": 1.0, "phase_b": 0.0},
          "experiment": "validate"
        })";
        CHECK(validate_config_text(text, "test").empty());
    }
}

TEST_CASE("parse_config throws a ConfigError collecting the diagnostics") {
    const std::string text = patched("\"epsilon\": 0.6283185307179586", "\"epsilon\": -1.0");
    CHECK_THROWS_AS((void)parse_config(text, "test"), ConfigError);
    try {
        (void)parse_config(text, "test");
    } catch (const ConfigError& e) {
        CHECK(!e.diagnostics().empty());
    }
}
