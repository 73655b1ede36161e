#include "fockslit/states.hpp"

#include <cmath>
#include <stdexcept>

namespace fockslit {

QuantumState::QuantumState(const ModeLattice& lattice, std::vector<cxd> coeffs, StateKind kind,
                           std::string label)
    : lattice_(&lattice), coeffs_(std::move(coeffs)), kind_(kind), label_(std::move(label)) {
    if (coeffs_.size() != lattice.size())
        throw std::invalid_argument("QuantumState: coefficient length != mode count");
}

double QuantumState::norm_squared() const {
    double s = 0.0;
    for (const cxd& f : coeffs_) s += std::norm(f);
    return s;
}

QuantumState QuantumState::normalized() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) throw std::domain_error("cannot normalize the vacuum state");
    const double inv = 1.0 / std::sqrt(n2);
    std::vector<cxd> scaled(coeffs_);
    for (cxd& f : scaled) f *= inv;
    return QuantumState(*lattice_, std::move(scaled), kind_, label_);
}

namespace {

std::vector<cxd> slit_coefficients(const ModeLattice& lattice, const SlitSpec& spec,
                                   SourceId which) {
    spec.validate();
    if (spec.mass != lattice.spec().mass)
        throw std::invalid_argument("slit mass must match the lattice mass");
    std::vector<cxd> f(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i)
        f[i] = closed_form_coefficient(lattice.mode(i), spec, which, lattice.spec().epsilon);
    return f;
}

}  // namespace

QuantumState build_double_slit_state(const ModeLattice& lattice, const SlitSpec& spec) {
    return QuantumState(lattice, slit_coefficients(lattice, spec, SourceId::DS),
                        StateKind::OneParticle, "DS");
}

QuantumState build_coherent_state(const ModeLattice& lattice, const SlitSpec& spec) {
    return QuantumState(lattice, slit_coefficients(lattice, spec, SourceId::DS),
                        StateKind::Coherent, "CDS");
}

QuantumState build_source_state(const ModeLattice& lattice, const SlitSpec& spec, SourceId which) {
    return QuantumState(lattice, slit_coefficients(lattice, spec, which), StateKind::OneParticle,
                        which == SourceId::A ? "A" : "B");
}

FieldSample evaluate_field(const QuantumState& state, const Vec3& r, double t) {
    FieldSample out;
    const ModeLattice& lat = state.lattice();
    const std::vector<cxd>& f = state.coeffs();
    for (std::size_t l = 0; l < lat.size(); ++l) {
        if (f[l] == cxd(0.0, 0.0)) continue;
        const Mode& m = lat.mode(l);
        const cxd fu = f[l] * mode_function(m, r, t);
        out.value += fu;
        out.d_dt += cxd(0.0, -m.omega) * fu;
        out.grad[0] += cxd(0.0, m.k_vec.x) * fu;
        out.grad[1] += cxd(0.0, m.k_vec.y) * fu;
        out.grad[2] += cxd(0.0, m.k_vec.z) * fu;
    }
    return out;
}

cxd field_expectation(const QuantumState& state, const Vec3& r, double t) {
    return evaluate_field(state, r, t).value;
}

double current_density(const QuantumState& state, const Vec3& r, double t) {
    const FieldSample s = evaluate_field(state, r, t);
    // i (F* Fdot - Fdot* F) = -2 Im(F* Fdot); positive for positive-frequency fields
    return -2.0 * std::imag(std::conj(s.value) * s.d_dt);
}

namespace {

double energy_from_sample(const FieldSample& s, double mass, StateKind kind, EnergyMode mode) {
    double e = std::norm(s.d_dt) + std::norm(s.grad[0]) + std::norm(s.grad[1]) +
               std::norm(s.grad[2]) + mass * mass * std::norm(s.value);
    if (kind == StateKind::Coherent && mode == EnergyMode::Instant) {
        const cxd osc = s.d_dt * s.d_dt + s.grad[0] * s.grad[0] + s.grad[1] * s.grad[1] +
                        s.grad[2] * s.grad[2] + mass * mass * s.value * s.value;
        e += std::real(osc);
    }
    return e;
}

}  // namespace

double energy_density(const QuantumState& state, const Vec3& r, double t, EnergyMode mode) {
    const FieldSample s = evaluate_field(state, r, t);
    return energy_from_sample(s, state.lattice().spec().mass, state.kind(), mode);
}

cxd state_overlap(const QuantumState& a, const QuantumState& b) {
    if (&a.lattice() != &b.lattice())
        throw std::invalid_argument("state_overlap: states live on different lattices");
    if (a.kind() != StateKind::OneParticle || b.kind() != StateKind::OneParticle)
        throw std::invalid_argument("state_overlap: both states must be one-particle");
    cxd s(0.0, 0.0);
    for (std::size_t l = 0; l < a.coeffs().size(); ++l)
        s += std::conj(b.coeffs()[l]) * a.coeffs()[l];
    return s;
}

DensityMatrixResult density_matrix_expectation(const QuantumState& state, DensityObservable obs,
                                               const Vec3& r, double t,
                                               std::span<const std::size_t> subset,
                                               double coverage_threshold) {
    if (state.kind() != StateKind::OneParticle)
        throw std::invalid_argument("density_matrix_expectation: one-particle states only");
    const ModeLattice& lat = state.lattice();
    const std::vector<cxd>& f = state.coeffs();
    const double mass = lat.spec().mass;

    // single-mode samples on the subset
    struct ModeSample {
        cxd u, du, gx, gy, gz;
        cxd coeff;
        double weight;
    };
    std::vector<ModeSample> ms;
    ms.reserve(subset.size());
    for (std::size_t l : subset) {
        if (l >= lat.size())
            throw std::out_of_range("density_matrix_expectation: mode index out of range");
        const Mode& m = lat.mode(l);
        ModeSample s;
        s.u = mode_function(m, r, t);
        s.du = cxd(0.0, -m.omega) * s.u;
        s.gx = cxd(0.0, m.k_vec.x) * s.u;
        s.gy = cxd(0.0, m.k_vec.y) * s.u;
        s.gz = cxd(0.0, m.k_vec.z) * s.u;
        s.coeff = f[l];
        s.weight = std::norm(f[l]);
        ms.push_back(s);
    }

    // Tr{rho O} = sum_{l,m} f_l* f_m <1_l|O|1_m>, explicit double contraction
    cxd acc(0.0, 0.0);
    for (const ModeSample& a : ms)
        for (const ModeSample& b : ms) {
            const cxd w = std::conj(a.coeff) * b.coeff;
            if (w == cxd(0.0, 0.0)) continue;
            cxd elem;
            if (obs == DensityObservable::Current) {
                elem = cxd(0.0, 1.0) * (std::conj(a.u) * b.du - std::conj(a.du) * b.u);
            } else {
                elem = std::conj(a.du) * b.du + std::conj(a.gx) * b.gx + std::conj(a.gy) * b.gy +
                       std::conj(a.gz) * b.gz + mass * mass * std::conj(a.u) * b.u;
            }
            acc += w * elem;
        }

    DensityMatrixResult out;
    out.value = std::real(acc);
    double total = state.norm_squared();
    double captured = 0.0;
    for (const ModeSample& s : ms) captured += s.weight;
    out.coverage = total > 0.0 ? captured / total : 1.0;
    out.low_coverage = out.coverage < coverage_threshold;
    return out;
}

}  // namespace fockslit
