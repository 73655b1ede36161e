#pragma once

#include <span>
#include <string>
#include <vector>

#include "fockslit/geometry.hpp"
#include "fockslit/lattice.hpp"
#include "fockslit/sources.hpp"

namespace fockslit {

// Fock-space states as coefficient vectors over lattice modes.
//
// Both state kinds share the coefficient data; expectation values reduce to
// coefficient bilinears. For |X> = sum f_l a_l^+ |0> and the coherent
// exp(sum f_l a_l^+)|0>, <a_l^+ a_m> = f_l* f_m in both, the coherent state
// adds <a_l a_m> = f_l f_m terms that only enter the instantaneous energy
// density. Normalization factors cancel in every implemented ratio.

enum class StateKind { OneParticle, Coherent };
enum class EnergyMode { Instant, PeriodAveraged };
enum class ObservableId { Field, Current, Energy, EnergyTimeAveraged };

class QuantumState {
public:
    QuantumState(const ModeLattice& lattice, std::vector<cxd> coeffs, StateKind kind,
                 std::string label = {});

    const ModeLattice& lattice() const { return *lattice_; }
    const std::vector<cxd>& coeffs() const { return coeffs_; }
    StateKind kind() const { return kind_; }
    const std::string& label() const { return label_; }

    double norm_squared() const;   // sum |f_l|^2
    QuantumState normalized() const;

private:
    const ModeLattice* lattice_;
    std::vector<cxd> coeffs_;
    StateKind kind_;
    std::string label_;
};

QuantumState build_double_slit_state(const ModeLattice& lattice, const SlitSpec& spec);
QuantumState build_coherent_state(const ModeLattice& lattice, const SlitSpec& spec);
QuantumState build_source_state(const ModeLattice& lattice, const SlitSpec& spec, SourceId which);

// F = sum f_l u_l and its time derivative / gradient, by analytic mode-sum
// differentiation. Deterministic mode order.
struct FieldSample {
    cxd value{};
    cxd d_dt{};
    cxd grad[3]{};
};

FieldSample evaluate_field(const QuantumState& state, const Vec3& r, double t);

// <0|Phi|X> (= F); for the coherent state <0|Phi|CX>/<0|CX>, same formula
cxd field_expectation(const QuantumState& state, const Vec3& r, double t);

// positive-frequency current density i(F* Fdot - Fdot* F); equals |F_DS|^2
// on shell for the double-slit state
double current_density(const QuantumState& state, const Vec3& r, double t);

// normal-ordered energy density |Fdot|^2 + |grad F|^2 + mu^2 |F|^2; the
// coherent Instant variant adds Re[Fdot^2 + (grad F)^2 + mu^2 F^2]
double energy_density(const QuantumState& state, const Vec3& r, double t,
                      EnergyMode mode = EnergyMode::Instant);

// sum_l conj(f_b) f_a = <b|a>; both states one-particle on the same lattice
cxd state_overlap(const QuantumState& a, const QuantumState& b);

enum class DensityObservable { Current, Energy };

struct DensityMatrixResult {
    double value = 0.0;
    double coverage = 0.0;    // |f|^2 weight captured by the subset
    bool low_coverage = false;
};

// Tr{rho O} with rho = |X><X| contracted explicitly over a mode subset;
// equals the direct expectation when the subset covers the full lattice.
DensityMatrixResult density_matrix_expectation(const QuantumState& state, DensityObservable obs,
                                               const Vec3& r, double t,
                                               std::span<const std::size_t> subset,
                                               double coverage_threshold = 0.99);

}  // namespace fockslit
