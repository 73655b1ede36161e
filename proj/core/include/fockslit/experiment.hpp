#pragma once

#include <span>
#include <string>
#include <vector>

#include "fockslit/states.hpp"

namespace fockslit {

// Screen scans, fringe extraction, incoherent phase averaging and
// slit-separation sweeps.

struct ScreenGeometry {
    double distance = 0.0;  // screen plane z = distance
    double x_min = 0.0;
    double x_max = 0.0;
    double y = 0.0;
    int samples = 0;

    Vec3 point(int i) const;
    double step() const { return (x_max - x_min) / (samples - 1); }
    void validate() const;  // throws std::invalid_argument
};

// every scan point inside the box and outside the source exclusion radii
void validate_geometry(const ScreenGeometry& geom, const LatticeSpec& lattice,
                       const SlitSpec& slit);

struct ScreenScan {
    ScreenGeometry geometry{};
    ObservableId observable = ObservableId::Current;
    double time = 0.0;
    std::vector<double> values;
    std::string label;
};

// Field scans store |F| (scan values are real); Current / Energy /
// EnergyTimeAveraged store the corresponding densities.
ScreenScan scan_screen(const QuantumState& state, const ScreenGeometry& geom,
                       ObservableId observable, double t);

// classical reference: intensity(spec).total sampled over the screen
ScreenScan analytic_intensity_scan(const SlitSpec& spec, const ScreenGeometry& geom, double t,
                                   double damping = 0.0);

struct FringeReport {
    double fringe_spacing = 0.0;     // mean adjacent-maxima distance
    double visibility = 0.0;         // (Imax-Imin)/(Imax+Imin), central window
    double predicted_spacing = 0.0;  // 2 pi r / (k d)
    double spacing_error = 0.0;      // relative
    int n_extrema = 0;
};

// Extrema by three-point comparison, ties resolved toward smaller x; scan
// must use an odd sample count and span >= 3 predicted periods. Throws
// std::runtime_error when fewer than 2 maxima are found.
FringeReport fringe_analysis(const ScreenScan& scan, const SlitSpec& spec);

enum class PhaseSampling { Grid, MonteCarlo };

// Average the observable scan over source phases. The uniform grid
// theta in {2 pi j / n_phase} integrates the single-harmonic cross term
// exactly for n_phase >= 2; MonteCarlo draws seeded uniform phases.
ScreenScan incoherent_average(const ModeLattice& lattice, const SlitSpec& spec,
                              ObservableId observable, const ScreenGeometry& geom, double t,
                              int n_phase, PhaseSampling sampling = PhaseSampling::Grid,
                              unsigned long seed = 0, StateKind kind = StateKind::OneParticle);

struct OverlapPoint {
    double d = 0.0;
    double kd = 0.0;
    cxd ratio{};     // <B;k|A;k> / <A;k|A;k>
    double sinc = 0.0;
    bool valid = false;
    std::string error;
};

std::vector<OverlapPoint> overlap_curve(const ModeLattice& lattice, const SlitSpec& spec_template,
                                        std::span<const double> d_values);

}  // namespace fockslit
