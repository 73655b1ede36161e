#include "fockslit/sources.hpp"

#include <cmath>
#include <stdexcept>

#include "fockslit/parallel.hpp"

namespace fockslit {

namespace {

double wrap_phase(double phase) {
    double p = std::fmod(phase, 2.0 * pi);
    if (p < 0.0) p += 2.0 * pi;
    return p;
}

}  // namespace

cxd SourceSpec::amplitude() const { return std::polar(magnitude, phase); }

double SlitSpec::omega_k() const {
    if (dispersion == Dispersion::NonRelativistic) return wavenumber * wavenumber / (2.0 * mass);
    return std::sqrt(wavenumber * wavenumber + mass * mass);
}

SourceSpec SlitSpec::source(SourceId which) const {
    if (which == SourceId::A) return {{separation / 2.0, 0.0, 0.0}, magnitude_a, wrap_phase(phase_a)};
    if (which == SourceId::B) return {{-separation / 2.0, 0.0, 0.0}, magnitude_b, wrap_phase(phase_b)};
    throw std::invalid_argument("SlitSpec::source: expected A or B");
}

void SlitSpec::validate() const {
    if (!(separation > 0.0)) throw std::invalid_argument("slit: separation must be > 0");
    if (!(wavenumber > 0.0)) throw std::invalid_argument("slit: wavenumber must be > 0");
    if (!(mass >= 0.0)) throw std::invalid_argument("slit: mass must be >= 0");
    if (!(magnitude_a >= 0.0) || !(magnitude_b >= 0.0))
        throw std::invalid_argument("slit: amplitudes must be >= 0");
    if (!(source_radius >= 0.0)) throw std::invalid_argument("slit: source_radius must be >= 0");
    if (!(exclusion_radius >= 0.0)) throw std::invalid_argument("slit: exclusion_radius must be >= 0");
    if (dispersion == Dispersion::NonRelativistic && !(mass > 0.0))
        throw std::invalid_argument("slit: non-relativistic dispersion requires mass > 0");
}

double ball_factor(double x) {
    const double ax = std::abs(x);
    if (ax < 1e-4) return 1.0 - x * x / 10.0;
    return 3.0 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

cxd ball_factor(cxd x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 10.0;
    return 3.0 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

double source_form_factor(double k_abs, double radius) {
    if (radius <= 0.0) return 1.0;
    const double c = ball_factor(k_abs * radius);
    return c * c;
}

cxd source_field_factor(cxd kappa, double radius) {
    if (radius <= 0.0) return 1.0;
    const cxd c = ball_factor(kappa * radius);
    return c * c;
}

cxd spherical_wave(const SourceSpec& src, double k, double omega, const Vec3& r, double t,
                   double damping, double source_radius, double exclusion) {
    const double rho = norm(r - src.position);
    const double guard = std::max({exclusion, 2.0 * source_radius, 1e-12});
    if (rho <= guard)
        throw std::domain_error("spherical_wave: observation point inside the exclusion radius");
    const cxd kappa(k, damping);
    const cxd factor = source_field_factor(kappa, source_radius);
    return src.amplitude() * factor * std::exp(cxd(0.0, -omega * t) + cxd(0.0, 1.0) * kappa * rho) /
           rho;
}

cxd double_slit_field(const SlitSpec& spec, const Vec3& r, double t, double damping) {
    const double w = spec.omega_k();
    cxd field(0.0, 0.0);
    for (SourceId id : {SourceId::A, SourceId::B}) {
        const SourceSpec s = spec.source(id);
        if (s.magnitude == 0.0) continue;
        field += spherical_wave(s, spec.wavenumber, w, r, t, damping, spec.source_radius,
                                spec.exclusion_radius);
    }
    return field;
}

InterferenceDecomposition intensity(const SlitSpec& spec, const Vec3& r, double t, double damping) {
    const double w = spec.omega_k();
    auto field = [&](SourceId id) -> cxd {
        const SourceSpec s = spec.source(id);
        if (s.magnitude == 0.0) return {0.0, 0.0};
        return spherical_wave(s, spec.wavenumber, w, r, t, damping, spec.source_radius,
                              spec.exclusion_radius);
    };
    const cxd fa = field(SourceId::A);
    const cxd fb = field(SourceId::B);
    InterferenceDecomposition out;
    out.term_a = std::norm(fa);
    out.term_b = std::norm(fb);
    out.cross = 2.0 * std::real(std::conj(fa) * fb);
    out.total = out.term_a + out.term_b + out.cross;
    return out;
}

cxd closed_form_coefficient(const Mode& m, const SlitSpec& spec, SourceId which, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("closed_form_coefficient: epsilon must be > 0");
    if (which == SourceId::DS)
        return closed_form_coefficient(m, spec, SourceId::A, epsilon) +
               closed_form_coefficient(m, spec, SourceId::B, epsilon);

    // massless zero mode is non-radiative
    if (m.omega == 0.0) return {0.0, 0.0};

    const double wk = spec.omega_k();
    const cxd kc(spec.wavenumber, epsilon);
    const cxd denom = m.k2() - kc * kc;
    const double radial = 4.0 * pi * m.norm * (m.omega + wk) / std::sqrt(2.0 * wk);
    const double ff = source_form_factor(std::sqrt(m.k2()), spec.source_radius);
    const SourceSpec s = spec.source(which);
    // exp(-i l . r_src): r_src = (+-d/2, 0, 0)
    const cxd phase = std::exp(cxd(0.0, -m.k_vec.x * s.position.x));
    return radial / denom * ff * s.amplitude() * phase;
}

namespace {

int max_abs_index(const Mode& m) {
    int v = 0;
    for (int c : m.index) v = std::max(v, std::abs(c));
    return v;
}

void check_oracle_preconditions(const SlitSpec& spec, const SpatialGrid& grid, int needed_index) {
    if (spec.source_radius != 0.0)
        throw std::invalid_argument("oracle_coefficient: defined for point sources only");
    const int required = 2 * (2 * needed_index + 1);
    if (grid.points_per_axis < required)
        throw std::invalid_argument("oracle_coefficient: grid too coarse for the mode cutoff (need >= " +
                                    std::to_string(required) + " points per axis)");
    if (spec.separation / 2.0 >= grid.box_length / 2.0)
        throw std::invalid_argument("oracle_coefficient: sources outside the box");
}

// damped source field at t=0 on a grid node
cxd source_field_node(const SlitSpec& spec, SourceId which, double epsilon, const Vec3& r) {
    const SourceSpec s = spec.source(which);
    const double rho = norm(r - s.position);
    const cxd kappa(spec.wavenumber, epsilon);
    return s.amplitude() * std::exp(cxd(0.0, 1.0) * kappa * rho) / rho;
}

}  // namespace

cxd oracle_coefficient(const Mode& m, const SlitSpec& spec, SourceId which,
                       const SpatialGrid& grid, double epsilon) {
    if (which == SourceId::DS)
        return oracle_coefficient(m, spec, SourceId::A, grid, epsilon) +
               oracle_coefficient(m, spec, SourceId::B, grid, epsilon);
    check_oracle_preconditions(spec, grid, max_abs_index(m));
    if (m.omega == 0.0) return {0.0, 0.0};

    const int M = grid.points_per_axis;
    std::vector<cxd> px(M), py(M), pz(M);
    for (int i = 0; i < M; ++i) {
        const double v = grid.node(i);
        px[i] = std::exp(cxd(0.0, -m.k_vec.x * v));
        py[i] = std::exp(cxd(0.0, -m.k_vec.y * v));
        pz[i] = std::exp(cxd(0.0, -m.k_vec.z * v));
    }
    // (u_l, F/sqrt(2 w_k))|_{t=0} = (w_l + w_k)/sqrt(2 w_k) n_l Int e^{-i l.x} F(x,0)
    cxd sum = parallel_reduce(grid.size(), [&](std::size_t idx) {
        const std::size_t Ms = static_cast<std::size_t>(M);
        const int ix = static_cast<int>(idx / (Ms * Ms));
        const int iy = static_cast<int>((idx / Ms) % Ms);
        const int iz = static_cast<int>(idx % Ms);
        const Vec3 r{grid.node(ix), grid.node(iy), grid.node(iz)};
        return px[ix] * py[iy] * pz[iz] * source_field_node(spec, which, epsilon, r);
    });
    const double h = grid.spacing();
    const double wk = spec.omega_k();
    return m.norm * (m.omega + wk) / std::sqrt(2.0 * wk) * sum * h * h * h;
}

std::vector<cxd> oracle_coefficients(const ModeLattice& lattice, const SlitSpec& spec,
                                     SourceId which, const SpatialGrid& grid) {
    if (which == SourceId::DS) {
        std::vector<cxd> a = oracle_coefficients(lattice, spec, SourceId::A, grid);
        std::vector<cxd> b = oracle_coefficients(lattice, spec, SourceId::B, grid);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    }
    check_oracle_preconditions(spec, grid, lattice.spec().cutoff);
    const double epsilon = lattice.spec().epsilon;
    const int M = grid.points_per_axis;
    const int N = lattice.spec().cutoff;
    const int K = 2 * N + 1;
    const std::size_t Ms = static_cast<std::size_t>(M);
    const std::size_t Ks = static_cast<std::size_t>(K);
    const double dk = lattice.spec().dk();

    // phase table ph[n+N][i] = exp(-i (n dk) x_i)
    std::vector<cxd> ph(Ks * Ms);
    for (int n = -N; n <= N; ++n)
        for (int i = 0; i < M; ++i)
            ph[static_cast<std::size_t>(n + N) * Ms + i] =
                std::exp(cxd(0.0, -(n * dk) * grid.node(i)));

    // sample the damped source field
    std::vector<cxd> fg(grid.size());
    parallel_for(grid.size(), [&](std::size_t idx) {
        const int ix = static_cast<int>(idx / (Ms * Ms));
        const int iy = static_cast<int>((idx / Ms) % Ms);
        const int iz = static_cast<int>(idx % Ms);
        const Vec3 r{grid.node(ix), grid.node(iy), grid.node(iz)};
        fg[idx] = source_field_node(spec, which, epsilon, r);
    });

    // separable partial sums: z, then y, then x
    std::vector<cxd> g1(Ms * Ms * Ks);
    parallel_for(Ms * Ms, [&](std::size_t xy) {
        const cxd* row = &fg[xy * Ms];
        for (std::size_t n = 0; n < Ks; ++n) {
            const cxd* p = &ph[n * Ms];
            cxd acc(0.0, 0.0);
            for (int iz = 0; iz < M; ++iz) acc += p[iz] * row[iz];
            g1[xy * Ks + n] = acc;
        }
    });
    std::vector<cxd> g2(Ms * Ks * Ks);
    parallel_for(Ms, [&](std::size_t ix) {
        for (std::size_t ny = 0; ny < Ks; ++ny) {
            const cxd* p = &ph[ny * Ms];
            for (std::size_t nz = 0; nz < Ks; ++nz) {
                cxd acc(0.0, 0.0);
                for (std::size_t iy = 0; iy < Ms; ++iy)
                    acc += p[iy] * g1[(ix * Ms + iy) * Ks + nz];
                g2[(ix * Ks + ny) * Ks + nz] = acc;
            }
        }
    });
    std::vector<cxd> g3(Ks * Ks * Ks);
    parallel_for(Ks, [&](std::size_t nx) {
        const cxd* p = &ph[nx * Ms];
        for (std::size_t ny = 0; ny < Ks; ++ny)
            for (std::size_t nz = 0; nz < Ks; ++nz) {
                cxd acc(0.0, 0.0);
                for (std::size_t ix = 0; ix < Ms; ++ix)
                    acc += p[ix] * g2[(ix * Ks + ny) * Ks + nz];
                g3[(nx * Ks + ny) * Ks + nz] = acc;
            }
    });

    const double h = grid.spacing();
    const double cell = h * h * h;
    const double wk = spec.omega_k();
    std::vector<cxd> out(lattice.size());
    for (std::size_t l = 0; l < lattice.size(); ++l) {
        const Mode& m = lattice.mode(l);
        if (m.omega == 0.0) {
            out[l] = {0.0, 0.0};
            continue;
        }
        const Index3& n = m.index;
        const cxd acc = g3[(static_cast<std::size_t>(n[0] + N) * Ks + (n[1] + N)) * Ks + (n[2] + N)];
        out[l] = m.norm * (m.omega + wk) / std::sqrt(2.0 * wk) * acc * cell;
    }
    return out;
}

}  // namespace fockslit
