#include "fockslit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fockslit/parallel.hpp"

namespace fockslit {

std::size_t LatticeSpec::mode_count() const {
    std::size_t per_axis = 2 * static_cast<std::size_t>(cutoff) + 1;
    return per_axis * per_axis * per_axis;
}

void LatticeSpec::validate() const {
    if (!(box_length > 0.0)) throw std::invalid_argument("lattice: box_length must be > 0");
    if (cutoff < 1) throw std::invalid_argument("lattice: cutoff must be >= 1");
    if (!(mass >= 0.0)) throw std::invalid_argument("lattice: mass must be >= 0");
    if (!(epsilon > 0.0)) throw std::invalid_argument("lattice: epsilon must be > 0");
}

ModeLattice::ModeLattice(const LatticeSpec& spec) : spec_(spec) {
    spec_.validate();
    const int N = spec_.cutoff;
    const double dk = spec_.dk();
    const double V = spec_.volume();
    modes_.reserve(spec_.mode_count());
    for (int nx = -N; nx <= N; ++nx)
        for (int ny = -N; ny <= N; ++ny)
            for (int nz = -N; nz <= N; ++nz) {
                Mode m;
                m.index = {nx, ny, nz};
                m.k_vec = {nx * dk, ny * dk, nz * dk};
                // omega = mass holds exactly for the zero mode
                m.omega = (nx | ny | nz) == 0 ? spec_.mass
                                              : std::sqrt(m.k2() + spec_.mass * spec_.mass);
                m.norm = 1.0 / std::sqrt(2.0 * m.omega * V);  // +inf when omega = 0
                modes_.push_back(m);
            }
}

std::size_t ModeLattice::index_of(const Index3& n) const {
    const int N = spec_.cutoff;
    for (int c : n)
        if (c < -N || c > N) throw std::out_of_range("mode index outside cutoff");
    const std::size_t per = 2 * static_cast<std::size_t>(N) + 1;
    return (static_cast<std::size_t>(n[0] + N) * per + (n[1] + N)) * per + (n[2] + N);
}

ModeLattice build_lattice(const LatticeSpec& spec) { return ModeLattice(spec); }

cxd mode_function(const Mode& m, const Vec3& r, double t) {
    return m.norm * std::exp(cxd(0.0, -m.omega * t + dot(m.k_vec, r)));
}

cxd mode_function_dt(const Mode& m, const Vec3& r, double t) {
    return cxd(0.0, -m.omega) * mode_function(m, r, t);
}

std::size_t SpatialGrid::size() const {
    std::size_t p = static_cast<std::size_t>(points_per_axis);
    return p * p * p;
}

namespace {

void check_grid(const SpatialGrid& g) {
    if (g.points_per_axis < 1 || !(g.box_length > 0.0))
        throw std::invalid_argument("invalid spatial grid");
}

}  // namespace

SampledField sample_mode(const Mode& m, const SpatialGrid& grid, double t, bool conjugate) {
    check_grid(grid);
    const int M = grid.points_per_axis;
    SampledField f{grid, {}, {}};
    f.values.resize(grid.size());
    f.dvalues.resize(grid.size());
    // separable phases: u = norm e^{-iwt} e^{ikx x} e^{iky y} e^{ikz z}
    std::vector<cxd> px(M), py(M), pz(M);
    for (int i = 0; i < M; ++i) {
        const double v = grid.node(i);
        px[i] = std::exp(cxd(0.0, m.k_vec.x * v));
        py[i] = std::exp(cxd(0.0, m.k_vec.y * v));
        pz[i] = std::exp(cxd(0.0, m.k_vec.z * v));
    }
    const cxd head = m.norm * std::exp(cxd(0.0, -m.omega * t));
    const cxd dt_factor(0.0, -m.omega);
    std::size_t idx = 0;
    for (int ix = 0; ix < M; ++ix)
        for (int iy = 0; iy < M; ++iy) {
            const cxd hxy = head * px[ix] * py[iy];
            for (int iz = 0; iz < M; ++iz, ++idx) {
                cxd u = hxy * pz[iz];
                cxd du = dt_factor * u;
                if (conjugate) {
                    u = std::conj(u);
                    du = std::conj(du);
                }
                f.values[idx] = u;
                f.dvalues[idx] = du;
            }
        }
    return f;
}

SampledField synthesize(const ModeLattice& lattice, std::span<const cxd> coeffs,
                        const SpatialGrid& grid, double t) {
    if (coeffs.size() != lattice.size())
        throw std::invalid_argument("coefficient vector length != mode count");
    check_grid(grid);
    SampledField out{grid, std::vector<cxd>(grid.size()), std::vector<cxd>(grid.size())};
    const int M = grid.points_per_axis;
    parallel_for(grid.size(), [&](std::size_t idx) {
        const int ix = static_cast<int>(idx / (static_cast<std::size_t>(M) * M));
        const int iy = static_cast<int>((idx / M) % M);
        const int iz = static_cast<int>(idx % M);
        const Vec3 r{grid.node(ix), grid.node(iy), grid.node(iz)};
        cxd v(0.0, 0.0), dv(0.0, 0.0);
        for (std::size_t l = 0; l < lattice.size(); ++l) {
            const cxd f = coeffs[l];
            if (f == cxd(0.0, 0.0)) continue;
            const cxd u = mode_function(lattice.mode(l), r, t);
            v += f * u;
            dv += f * cxd(0.0, -lattice.mode(l).omega) * u;
        }
        out.values[idx] = v;
        out.dvalues[idx] = dv;
    });
    return out;
}

cxd inner_product(const SampledField& a, const SampledField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("inner_product: mismatched grids");
    if (a.values.size() != a.grid.size() || b.values.size() != b.grid.size() ||
        a.dvalues.size() != a.values.size() || b.dvalues.size() != b.values.size())
        throw std::invalid_argument("inner_product: field not sampled on every grid node");
    const double h = a.grid.spacing();
    const double cell = h * h * h;
    cxd sum = parallel_reduce(a.values.size(), [&](std::size_t i) {
        return std::conj(a.values[i]) * b.dvalues[i] - std::conj(a.dvalues[i]) * b.values[i];
    });
    return cxd(0.0, 1.0) * cell * sum;
}

double OrthonormalityReport::max_deviation() const {
    return std::max({max_dev_uu, max_dev_conj, max_dev_cross});
}

OrthonormalityReport verify_orthonormality(const ModeLattice& lattice,
                                           const std::vector<ModePair>& sample) {
    if (sample.empty()) throw std::invalid_argument("verify_orthonormality: empty sample");
    const SpatialGrid grid{lattice.spec().box_length, 2 * lattice.spec().cutoff + 1};

    // cache sampled fields per distinct mode
    std::vector<int> slot(lattice.size(), -1);
    std::vector<SampledField> plain, conj;
    for (const auto& [i, j] : sample) {
        for (std::size_t m : {i, j}) {
            if (m >= lattice.size())
                throw std::out_of_range("verify_orthonormality: mode index out of range");
            if (slot[m] < 0) {
                slot[m] = static_cast<int>(plain.size());
                plain.push_back(sample_mode(lattice.mode(m), grid, 0.0, false));
                conj.push_back(sample_mode(lattice.mode(m), grid, 0.0, true));
            }
        }
    }

    OrthonormalityReport rep;
    for (const auto& [i, j] : sample) {
        const double delta = (i == j) ? 1.0 : 0.0;
        const auto& ui = plain[slot[i]];
        const auto& uj = plain[slot[j]];
        const auto& ci = conj[slot[i]];
        const auto& cj = conj[slot[j]];
        rep.max_dev_uu = std::max(rep.max_dev_uu, std::abs(inner_product(ui, uj) - delta));
        rep.max_dev_conj = std::max(rep.max_dev_conj, std::abs(inner_product(ci, cj) + delta));
        rep.max_dev_cross = std::max(rep.max_dev_cross, std::abs(inner_product(ci, uj)));
    }
    return rep;
}

std::vector<ModePair> all_mode_pairs(const ModeLattice& lattice) {
    std::vector<ModePair> pairs;
    pairs.reserve(lattice.size() * lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i)
        for (std::size_t j = 0; j < lattice.size(); ++j) pairs.emplace_back(i, j);
    return pairs;
}

}  // namespace fockslit
