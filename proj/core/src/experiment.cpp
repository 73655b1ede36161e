#include "fockslit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "fockslit/parallel.hpp"

namespace fockslit {

Vec3 ScreenGeometry::point(int i) const {
    return {x_min + step() * i, y, distance};
}

void ScreenGeometry::validate() const {
    if (!(distance > 0.0)) throw std::invalid_argument("screen: distance must be > 0");
    if (samples < 16) throw std::invalid_argument("screen: samples must be >= 16");
    if (!(x_max > x_min)) throw std::invalid_argument("screen: x_max must exceed x_min");
}

void validate_geometry(const ScreenGeometry& geom, const LatticeSpec& lattice,
                       const SlitSpec& slit) {
    geom.validate();
    const double half = lattice.box_length / 2.0;
    auto inside = [&](double v) { return v > -half && v < half; };
    if (!inside(geom.distance) || !inside(geom.y) || !inside(geom.x_min) || !inside(geom.x_max))
        throw std::invalid_argument("screen: scan points must lie inside the periodic box (|coord| < L/2 = " +
                                    std::to_string(half) + ")");
    const double guard = std::max(slit.exclusion_radius, 2.0 * slit.source_radius);
    for (int i = 0; i < geom.samples; ++i) {
        const Vec3 p = geom.point(i);
        for (SourceId id : {SourceId::A, SourceId::B}) {
            if (norm(p - slit.source(id).position) <= guard)
                throw std::invalid_argument(
                    "screen: scan point inside the source exclusion radius");
        }
    }
}

ScreenScan scan_screen(const QuantumState& state, const ScreenGeometry& geom,
                       ObservableId observable, double t) {
    geom.validate();
    ScreenScan scan{geom, observable, t, std::vector<double>(geom.samples), state.label()};
    parallel_for(static_cast<std::size_t>(geom.samples), [&](std::size_t i) {
        const Vec3 p = geom.point(static_cast<int>(i));
        double v = 0.0;
        switch (observable) {
            case ObservableId::Field: v = std::abs(field_expectation(state, p, t)); break;
            case ObservableId::Current: v = current_density(state, p, t); break;
            case ObservableId::Energy: v = energy_density(state, p, t, EnergyMode::Instant); break;
            case ObservableId::EnergyTimeAveraged:
                v = energy_density(state, p, t, EnergyMode::PeriodAveraged);
                break;
        }
        scan.values[i] = v;
    });
    return scan;
}

ScreenScan analytic_intensity_scan(const SlitSpec& spec, const ScreenGeometry& geom, double t,
                                   double damping) {
    geom.validate();
    ScreenScan scan{geom, ObservableId::Current, t, std::vector<double>(geom.samples),
                    "analytic"};
    for (int i = 0; i < geom.samples; ++i)
        scan.values[i] = intensity(spec, geom.point(i), t, damping).total;
    return scan;
}

FringeReport fringe_analysis(const ScreenScan& scan, const SlitSpec& spec) {
    const ScreenGeometry& g = scan.geometry;
    if (g.samples % 2 == 0)
        throw std::invalid_argument("fringe_analysis: scans must use odd sample counts");
    if (static_cast<int>(scan.values.size()) != g.samples)
        throw std::invalid_argument("fringe_analysis: scan values incomplete");

    FringeReport rep;
    rep.predicted_spacing = 2.0 * pi * g.distance / (spec.wavenumber * spec.separation);
    if (g.x_max - g.x_min < 3.0 * rep.predicted_spacing)
        throw std::invalid_argument("fringe_analysis: scan must span >= 3 predicted fringe periods");

    // local maxima by three-point comparison, ties toward smaller x
    std::vector<double> maxima;
    int extrema = 0;
    for (int i = 1; i + 1 < g.samples; ++i) {
        const double v = scan.values[i];
        if (v > scan.values[i - 1] && v >= scan.values[i + 1]) {
            maxima.push_back(g.x_min + g.step() * i);
            ++extrema;
        } else if (v < scan.values[i - 1] && v <= scan.values[i + 1]) {
            ++extrema;
        }
    }
    rep.n_extrema = extrema;
    if (maxima.size() < 2)
        throw std::runtime_error("fringe_analysis: fewer than 2 maxima found (scan window too narrow)");

    double spacing = 0.0;
    for (std::size_t i = 1; i < maxima.size(); ++i) spacing += maxima[i] - maxima[i - 1];
    spacing /= static_cast<double>(maxima.size() - 1);
    rep.fringe_spacing = spacing;
    rep.spacing_error = std::abs(spacing - rep.predicted_spacing) / rep.predicted_spacing;

    // visibility over the central window, clipped to the scan
    const double window = 3.0 * rep.predicted_spacing;
    double imax = -1e300, imin = 1e300;
    for (int i = 0; i < g.samples; ++i) {
        const double x = g.x_min + g.step() * i;
        if (std::abs(x) <= window) {
            imax = std::max(imax, scan.values[i]);
            imin = std::min(imin, scan.values[i]);
        }
    }
    rep.visibility = (imax + imin) != 0.0 ? (imax - imin) / (imax + imin) : 0.0;
    return rep;
}

ScreenScan incoherent_average(const ModeLattice& lattice, const SlitSpec& spec,
                              ObservableId observable, const ScreenGeometry& geom, double t,
                              int n_phase, PhaseSampling sampling, unsigned long seed,
                              StateKind kind) {
    if (n_phase < 2)
        throw std::invalid_argument("incoherent_average: n_phase must be >= 2 per phase axis");
    geom.validate();

    std::vector<std::pair<double, double>> phases;
    if (sampling == PhaseSampling::Grid) {
        for (int ja = 0; ja < n_phase; ++ja)
            for (int jb = 0; jb < n_phase; ++jb)
                phases.emplace_back(2.0 * pi * ja / n_phase, 2.0 * pi * jb / n_phase);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(0.0, 2.0 * pi);
        for (int j = 0; j < n_phase * n_phase; ++j) {
            const double a = uni(rng);
            const double b = uni(rng);
            phases.emplace_back(a, b);
        }
    }

    ScreenScan avg{geom, observable, t, std::vector<double>(geom.samples, 0.0), "incoherent"};
    for (const auto& [ta, tb] : phases) {
        SlitSpec s = spec;
        s.phase_a = ta;
        s.phase_b = tb;
        const QuantumState state = kind == StateKind::Coherent
                                       ? build_coherent_state(lattice, s)
                                       : build_double_slit_state(lattice, s);
        const ScreenScan scan = scan_screen(state, geom, observable, t);
        for (int i = 0; i < geom.samples; ++i) avg.values[i] += scan.values[i];
    }
    const double inv = 1.0 / static_cast<double>(phases.size());
    for (double& v : avg.values) v *= inv;
    return avg;
}

std::vector<OverlapPoint> overlap_curve(const ModeLattice& lattice, const SlitSpec& spec_template,
                                        std::span<const double> d_values) {
    std::vector<OverlapPoint> out;
    out.reserve(d_values.size());
    const double margin = lattice.spec().box_length / 10.0;
    for (double d : d_values) {
        OverlapPoint p;
        p.d = d;
        p.kd = spec_template.wavenumber * d;
        p.sinc = p.kd != 0.0 ? std::sin(p.kd) / p.kd : 1.0;
        if (!(d > 0.0) || d / 2.0 > lattice.spec().box_length / 2.0 - margin) {
            p.valid = false;
            p.error = "separation too large for the box";
            out.push_back(p);
            continue;
        }
        SlitSpec s = spec_template;
        s.separation = d;
        const QuantumState a = build_source_state(lattice, s, SourceId::A);
        const QuantumState b = build_source_state(lattice, s, SourceId::B);
        const cxd num = state_overlap(a, b);   // <B|A>
        const cxd den = state_overlap(a, a);   // <A|A>
        p.ratio = num / den;
        p.valid = true;
        out.push_back(p);
    }
    return out;
}

}  // namespace fockslit
