#pragma once

#include <string>

#include "fockslit/geometry.hpp"
#include "fockslit/lattice.hpp"

namespace fockslit {

// Closed-form spherical-wave sources, the classical interference pattern and
// the Fourier coefficients of the double-source configuration.
//
// Sources sit at (+d/2,0,0) (A) and (-d/2,0,0) (B) and emit monochromatic
// spherical waves A0 exp(-i w t + i kappa rho)/rho with kappa = k + i eps;
// the imaginary part realizes the pole prescription as spatial damping.
//
// A source may carry a finite radius a > 0: its profile is a uniform ball of
// radius a convolved with itself. Outside radius 2a the emitted field equals
// the point-source wave times the constant factor C(kappa a)^2 with
// C(x) = 3(sin x - x cos x)/x^3 (mean-value property of Helmholtz solutions),
// and every Fourier coefficient gains the real factor C(|l| a)^2. Point
// sources (a = 0) reproduce the bare formulas; the finite radius makes the
// coefficient spectrum absolutely summable, which cubic-cutoff mode sums
// need to converge (rectangular partial sums of the bare 1/l^2 spectrum
// oscillate indefinitely).

enum class Dispersion { Relativistic, NonRelativistic };
enum class SourceId { A, B, DS };

struct SourceSpec {
    Vec3 position{};
    double magnitude = 0.0;
    double phase = 0.0;  // stored in [0, 2 pi)

    cxd amplitude() const;
};

struct SlitSpec {
    double separation = 0.0;  // d > 0
    double wavenumber = 0.0;  // k > 0
    double mass = 0.0;        // mu of the lattice the sources feed
    double magnitude_a = 0.0;
    double phase_a = 0.0;
    double magnitude_b = 0.0;
    double phase_b = 0.0;
    double source_radius = 0.0;     // a >= 0
    double exclusion_radius = 0.0;  // evaluation guard around each source
    Dispersion dispersion = Dispersion::Relativistic;

    double omega_k() const;  // sqrt(k^2+mu^2), or k^2/(2 mu) non-relativistic
    SourceSpec source(SourceId which) const;  // A or B
    void validate() const;  // throws std::invalid_argument
};

// C(x) = 3(sin x - x cos x)/x^3; form factor of one uniform ball
double ball_factor(double x);
cxd ball_factor(cxd x);

// squared factors for the ball*ball profile
double source_form_factor(double k_abs, double radius);   // C(|l| a)^2
cxd source_field_factor(cxd kappa, double radius);        // C(kappa a)^2

// amplitude * C((k+i damping) a)^2 * exp(-i w t + i (k+i damping) rho)/rho.
// Throws std::domain_error when rho <= max(exclusion, 2a) (field singular or
// interior to the source profile).
cxd spherical_wave(const SourceSpec& src, double k, double omega, const Vec3& r, double t,
                   double damping = 0.0, double source_radius = 0.0, double exclusion = 0.0);

cxd double_slit_field(const SlitSpec& spec, const Vec3& r, double t, double damping = 0.0);

struct InterferenceDecomposition {
    double total = 0.0;
    double term_a = 0.0;   // |F_A|^2
    double term_b = 0.0;   // |F_B|^2
    double cross = 0.0;    // 2 Re(F_A* F_B)
};

InterferenceDecomposition intensity(const SlitSpec& spec, const Vec3& r, double t,
                                    double damping = 0.0);

// Eq-2.20-type closed form with the i eps pole prescription:
//   f^A_l = 4 pi n_l (w_l + w_k) / (sqrt(2 w_k) (l^2 - (k+i eps)^2))
//           * C(|l| a)^2 * A0 exp(-i l_x d/2)
// f^B with B0 and exp(+i l_x d/2); f^DS = f^A + f^B. The massless zero mode
// (mu = 0, l = 0) is non-radiative and gets coefficient 0.
cxd closed_form_coefficient(const Mode& m, const SlitSpec& spec, SourceId which, double epsilon);

// Independent quadrature oracle: (u_l, F/sqrt(2 w_k))|_{t=0} evaluated as a
// Riemann sum of the relativistic inner product over the grid, with the
// source field damped by exp(-eps rho). Point sources only (a = 0). Throws
// std::invalid_argument when the grid cannot resolve the mode (Nyquist).
cxd oracle_coefficient(const Mode& m, const SlitSpec& spec, SourceId which,
                       const SpatialGrid& grid, double epsilon);

// all lattice modes at once via separable partial sums (same Riemann sum)
std::vector<cxd> oracle_coefficients(const ModeLattice& lattice, const SlitSpec& spec,
                                     SourceId which, const SpatialGrid& grid);

}  // namespace fockslit
