#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fockslit/geometry.hpp"

namespace fockslit {

// Discretized periodic-box momentum basis for a free scalar field.
//
// Modes are plane waves u_n(r,t) = n_k exp(-i w t + i k.r) with
// k = 2 pi n / L for integer triples n in [-N,N]^3, w = sqrt(k^2 + mu^2)
// and n_k = 1/sqrt(2 w V), V = L^3. Mode order is lexicographic in n.

struct LatticeSpec {
    double box_length = 0.0;  // L
    int cutoff = 0;           // N, modes per half-axis
    double mass = 0.0;        // mu >= 0
    double epsilon = 0.0;     // pole regularization parameter, > 0

    double volume() const { return box_length * box_length * box_length; }
    double dk() const { return 2.0 * pi / box_length; }
    std::size_t mode_count() const;
    void validate() const;  // throws std::invalid_argument
};

struct Mode {
    Index3 index{};   // n
    Vec3 k_vec{};     // 2 pi n / L
    double omega = 0; // sqrt(|k|^2 + mu^2)
    double norm = 0;  // 1/sqrt(2 omega V); +inf for the massless zero mode

    double k2() const { return norm2(k_vec); }
};

class ModeLattice {
public:
    explicit ModeLattice(const LatticeSpec& spec);

    const LatticeSpec& spec() const { return spec_; }
    const std::vector<Mode>& modes() const { return modes_; }
    std::size_t size() const { return modes_.size(); }
    const Mode& mode(std::size_t i) const { return modes_[i]; }

    // lexicographic position of index n; throws std::out_of_range if outside cutoff
    std::size_t index_of(const Index3& n) const;

private:
    LatticeSpec spec_;
    std::vector<Mode> modes_;
};

ModeLattice build_lattice(const LatticeSpec& spec);

// n_k exp(-i w t + i k.r)
cxd mode_function(const Mode& m, const Vec3& r, double t);
cxd mode_function_dt(const Mode& m, const Vec3& r, double t);

// Uniform quadrature grid over the box [-L/2, L/2)^3, nodes offset half a
// cell so no node coincides with sources placed at the box center plane.
// Exact (to rounding) for trigonometric polynomials up to the Nyquist index.
struct SpatialGrid {
    double box_length = 0.0;
    int points_per_axis = 0;

    double spacing() const { return box_length / points_per_axis; }
    double node(int i) const { return -box_length / 2 + (i + 0.5) * spacing(); }
    std::size_t size() const;
    bool operator==(const SpatialGrid&) const = default;
};

// field value and time derivative sampled on every grid node, row-major (x,y,z)
struct SampledField {
    SpatialGrid grid;
    std::vector<cxd> values;
    std::vector<cxd> dvalues;
};

SampledField sample_mode(const Mode& m, const SpatialGrid& grid, double t, bool conjugate = false);

// positive-frequency synthesis sum_l f_l u_l sampled on the grid
SampledField synthesize(const ModeLattice& lattice, std::span<const cxd> coeffs,
                        const SpatialGrid& grid, double t);

// relativistic inner product (A,B) = i Int d3x (A* Bdot - Adot* B),
// approximated by the grid Riemann sum. Throws on mismatched grids.
cxd inner_product(const SampledField& a, const SampledField& b);

using ModePair = std::pair<std::size_t, std::size_t>;

struct OrthonormalityReport {
    double max_dev_uu = 0.0;    // |(u_k, u_l) - delta_kl|
    double max_dev_conj = 0.0;  // |(u_k*, u_l*) + delta_kl|
    double max_dev_cross = 0.0; // |(u_k*, u_l)|

    double max_deviation() const;
};

// Checks the orthonormality relations over the given mode pairs on the
// commensurate (2N+1)^3 grid. Sample must be non-empty.
OrthonormalityReport verify_orthonormality(const ModeLattice& lattice,
                                           const std::vector<ModePair>& sample);

std::vector<ModePair> all_mode_pairs(const ModeLattice& lattice);

}  // namespace fockslit
