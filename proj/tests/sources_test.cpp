#include <doctest.h>

#include <cmath>

#include "fockslit/sources.hpp"

using namespace fockslit;

namespace {

SlitSpec sample_slit() {
    SlitSpec s;
    s.separation = 1.2;
    s.wavenumber = pi;
    s.mass = 2 * pi;
    s.magnitude_a = 1.0;
    s.phase_a = 0.0;
    s.magnitude_b = 1.0;
    s.phase_b = 0.0;
    return s;
}

}  // namespace

TEST_CASE("spherical wave direct values") {
    SourceSpec src{{0, 0, 0}, 1.0, 0.0};
    const cxd v = spherical_wave(src, 1.0, 1.0, {1, 0, 0}, 0.0);
    CHECK(v.real() == doctest::Approx(std::cos(1.0)).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(std::sin(1.0)).epsilon(1e-14));
}

TEST_CASE("spherical wave modulus and periodicity") {
    SourceSpec src{{0.5, -0.2, 0}, 0.7, 1.1};
    const double k = 2.3, w = 3.1;
    for (const Vec3 r : {Vec3{2, 1, 0.5}, Vec3{-1, 0.3, 2}, Vec3{0.6, -2, 1}}) {
        const double rho = norm(r - src.position);
        for (double t : {0.0, 0.4, -1.7}) {
            const cxd v = spherical_wave(src, k, w, r, t);
            CHECK(std::abs(v) == doctest::Approx(src.magnitude / rho).epsilon(1e-13));
            const cxd later = spherical_wave(src, k, w, r, t + 2 * pi / w);
            CHECK(std::abs(later - v) < 1e-12 * std::abs(v));
        }
    }
}

TEST_CASE("spherical wave refuses the singular region") {
    SourceSpec src{{0, 0, 0}, 1.0, 0.0};
    CHECK_THROWS_AS((void)spherical_wave(src, 1.0, 1.0, {0, 0, 0}, 0.0), std::domain_error);
    // inside a smeared source the exterior closed form is invalid
    CHECK_THROWS_AS((void)spherical_wave(src, 1.0, 1.0, {0.5, 0, 0}, 0.0, 0.0, 0.4),
                    std::domain_error);
    CHECK_NOTHROW((void)spherical_wave(src, 1.0, 1.0, {0.9, 0, 0}, 0.0, 0.0, 0.4));
    // explicit exclusion radius dominates when larger
    CHECK_THROWS_AS((void)spherical_wave(src, 1.0, 1.0, {0.9, 0, 0}, 0.0, 0.0, 0.0, 1.0),
                    std::domain_error);
}

TEST_CASE("double slit field symmetry on the midplane") {
    SlitSpec s = sample_slit();
    const Vec3 r{0.0, 0.4, 2.0};

    s.phase_b = pi;  // B0 = -A0
    CHECK(std::abs(double_slit_field(s, r, 0.3)) < 1e-14);

    s.phase_b = 0.0;  // B0 = A0
    const cxd total = double_slit_field(s, r, 0.3);
    const cxd fa = spherical_wave(s.source(SourceId::A), s.wavenumber, s.omega_k(), r, 0.3);
    CHECK(std::abs(total - 2.0 * fa) < 1e-13 * std::abs(total));

    s.magnitude_b = 0.0;  // single slit
    CHECK(std::abs(double_slit_field(s, r, 0.3) - fa) < 1e-14);
}

TEST_CASE("intensity decomposition is exact and matches the cosine form") {
    SlitSpec s = sample_slit();
    s.phase_a = 0.9;
    s.phase_b = 2.2;
    s.magnitude_b = 0.6;
    const Vec3 r{0.8, 0.0, 2.4};
    const auto dec = intensity(s, r, 0.0);
    CHECK(dec.total == dec.term_a + dec.term_b + dec.cross);
    CHECK(dec.term_a >= 0.0);
    CHECK(dec.term_b >= 0.0);

    const double ra = norm(r - s.source(SourceId::A).position);
    const double rb = norm(r - s.source(SourceId::B).position);
    const double expected = 2.0 * s.magnitude_a * s.magnitude_b / (ra * rb) *
                            std::cos(s.wavenumber * (ra - rb) + s.phase_a - s.phase_b);
    CHECK(dec.cross == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("central fringe cases") {
    SlitSpec s = sample_slit();
    const Vec3 r{0.0, 0.0, 3.0};

    const auto bright = intensity(s, r, 0.0);
    CHECK(bright.cross == doctest::Approx(2.0 * bright.term_a).epsilon(1e-12));
    CHECK(bright.total == doctest::Approx(4.0 * bright.term_a).epsilon(1e-12));

    s.phase_b = pi;
    const auto dark = intensity(s, r, 0.0);
    CHECK(std::abs(dark.total) < 1e-13 * bright.total);
}

TEST_CASE("far-field reduction of the cross term") {
    SlitSpec s = sample_slit();
    s.separation = 0.01;  // d << r
    const double x = 0.4, z = 3.0;
    const double r = std::sqrt(x * x + z * z);
    const auto dec = intensity(s, {x, 0.0, z}, 0.0);
    const double far = 2.0 * s.magnitude_a * s.magnitude_b / (r * r) *
                       std::cos(-s.wavenumber * x * s.separation / r + s.phase_a - s.phase_b);
    CHECK(dec.cross == doctest::Approx(far).epsilon(5.0 * s.separation / r));
}

TEST_CASE("closed-form coefficient structure") {
    ModeLattice lat(LatticeSpec{10.0, 4, 2 * pi, 0.2 * pi});
    SlitSpec s = sample_slit();
    s.magnitude_b = 0.35;
    s.phase_b = 1.3;
    const double eps = lat.spec().epsilon;

    // modes with l_x = 0: both phase factors are 1
    const Mode& m0 = lat.mode(lat.index_of({0, 2, -1}));
    const cxd fa0 = closed_form_coefficient(m0, s, SourceId::A, eps);
    const cxd fb0 = closed_form_coefficient(m0, s, SourceId::B, eps);
    CHECK(std::abs(fa0 / s.source(SourceId::A).amplitude() -
                   fb0 / s.source(SourceId::B).amplitude()) < 1e-14 * std::abs(fa0));

    // generic translation / reflection phase relations
    const Mode& m = lat.mode(lat.index_of({3, 1, -2}));
    const cxd fa = closed_form_coefficient(m, s, SourceId::A, eps);
    const cxd fb = closed_form_coefficient(m, s, SourceId::B, eps);
    const cxd ratio = s.source(SourceId::B).amplitude() / s.source(SourceId::A).amplitude();
    const cxd shift = std::exp(cxd(0.0, m.k_vec.x * s.separation));
    CHECK(std::abs(fb - fa * ratio * shift) < 1e-13 * std::abs(fb));

    const Mode& mneg = lat.mode(lat.index_of({-3, 1, -2}));
    const cxd famir = closed_form_coefficient(mneg, s, SourceId::A, eps);
    CHECK(std::abs(famir - fa * shift) < 1e-13 * std::abs(fa));

    // DS sum collapses to 2 cos(l_x d/2) times the common radial factor
    SlitSpec sym = sample_slit();
    const cxd fds = closed_form_coefficient(m, sym, SourceId::DS, eps);
    const cxd fa_sym = closed_form_coefficient(m, sym, SourceId::A, eps);
    const cxd expected = 2.0 * std::cos(m.k_vec.x * sym.separation / 2.0) *
                         (fa_sym * std::exp(cxd(0.0, m.k_vec.x * sym.separation / 2.0)));
    CHECK(std::abs(fds - expected) < 1e-13 * std::abs(fds));
}

TEST_CASE("phase covariance of the coefficients") {
    ModeLattice lat(LatticeSpec{10.0, 3, 2 * pi, 0.2 * pi});
    SlitSpec s = sample_slit();
    const double alpha = 0.77;
    SlitSpec rotated = s;
    rotated.phase_a += alpha;
    for (std::size_t i = 0; i < lat.size(); i += 17) {
        const cxd base = closed_form_coefficient(lat.mode(i), s, SourceId::A, 0.3);
        const cxd rot = closed_form_coefficient(lat.mode(i), rotated, SourceId::A, 0.3);
        CHECK(std::abs(rot - base * std::exp(cxd(0.0, alpha))) <= 1e-13 * std::abs(base));
    }
}

TEST_CASE("closed form agrees with the quadrature oracle off shell") {
    // eps = 2 dk keeps the damped integrand negligible at the box boundary
    const double L = 10.0, k = pi;
    const double dk = 2 * pi / L;
    ModeLattice lat(LatticeSpec{L, 4, 2 * k, 2 * dk});
    SlitSpec s = sample_slit();
    const SpatialGrid grid{L, 96};
    for (Index3 idx : {Index3{0, 0, 0}, Index3{1, -2, 0}, Index3{3, 2, 1}, Index3{-4, 0, -3}}) {
        const Mode& m = lat.mode(lat.index_of(idx));
        const cxd cf = closed_form_coefficient(m, s, SourceId::A, lat.spec().epsilon);
        const cxd oc = oracle_coefficient(m, s, SourceId::A, grid, lat.spec().epsilon);
        CHECK(std::abs(oc - cf) / std::abs(cf) < 0.02);
    }
}

TEST_CASE("oracle translation property for grid-commensurate separations") {
    const double L = 10.0;
    ModeLattice lat(LatticeSpec{L, 3, 2 * pi, 2 * (2 * pi / L)});
    SlitSpec s = sample_slit();
    const SpatialGrid grid{L, 32};
    s.separation = 8.0 * grid.spacing();  // sources sit on grid-translates
    s.magnitude_b = 0.4;
    s.phase_b = 0.6;
    const Mode& m = lat.mode(lat.index_of({2, 1, -1}));
    const cxd fa = oracle_coefficient(m, s, SourceId::A, grid, lat.spec().epsilon);
    const cxd fb = oracle_coefficient(m, s, SourceId::B, grid, lat.spec().epsilon);
    const cxd ratio = s.source(SourceId::B).amplitude() / s.source(SourceId::A).amplitude();
    const cxd shift = std::exp(cxd(0.0, m.k_vec.x * s.separation));
    // holds up to the box-boundary tail the translation drags across the
    // (non-wrapped) integration box; same scale as the quadrature accuracy
    CHECK(std::abs(fb - fa * ratio * shift) < 0.02 * std::abs(fb));
}

TEST_CASE("oracle error decreases as the grid refines") {
    const double L = 10.0, k = pi;
    const double dk = 2 * pi / L;
    ModeLattice lat(LatticeSpec{L, 4, 2 * k, 2 * dk});
    SlitSpec s = sample_slit();
    const Mode& m = lat.mode(lat.index_of({3, -2, 2}));  // far off shell
    const cxd cf = closed_form_coefficient(m, s, SourceId::A, lat.spec().epsilon);
    double last = 1e300;
    for (int gridsize : {32, 64, 96}) {
        const cxd oc = oracle_coefficient(m, s, SourceId::A, SpatialGrid{L, gridsize},
                                          lat.spec().epsilon);
        const double rel = std::abs(oc - cf) / std::abs(cf);
        CHECK(rel < last);
        last = rel;
    }
    CHECK(last < 0.01);
}

TEST_CASE("oracle preconditions") {
    const double L = 10.0;
    ModeLattice lat(LatticeSpec{L, 4, 2 * pi, 0.5});
    SlitSpec s = sample_slit();
    const Mode& m = lat.mode(lat.index_of({4, 0, 0}));
    CHECK_THROWS_AS((void)oracle_coefficient(m, s, SourceId::A, SpatialGrid{L, 12}, 0.5),
                    std::invalid_argument);
    SlitSpec smeared = s;
    smeared.source_radius = 0.3;
    CHECK_THROWS_AS((void)oracle_coefficient(m, smeared, SourceId::A, SpatialGrid{L, 64}, 0.5),
                    std::invalid_argument);
}

TEST_CASE("batch oracle equals the single-mode oracle") {
    const double L = 8.0;
    ModeLattice lat(LatticeSpec{L, 2, 1.5, 2 * (2 * pi / L)});
    SlitSpec s = sample_slit();
    s.mass = 1.5;
    const SpatialGrid grid{L, 24};
    const auto all = oracle_coefficients(lat, s, SourceId::DS, grid);
    REQUIRE(all.size() == lat.size());
    for (std::size_t i : {std::size_t{0}, lat.size() / 2, lat.size() - 3}) {
        const cxd single = oracle_coefficient(lat.mode(i), s, SourceId::DS, grid,
                                              lat.spec().epsilon);
        CHECK(std::abs(all[i] - single) <= 1e-12 * (1.0 + std::abs(single)));
    }
}

TEST_CASE("smeared sources factor out of every coefficient") {
    ModeLattice lat(LatticeSpec{10.0, 3, 2 * pi, 0.3});
    SlitSpec plain = sample_slit();
    SlitSpec smeared = plain;
    smeared.source_radius = 0.6;
    for (std::size_t i = 0; i < lat.size(); i += 23) {
        const Mode& m = lat.mode(i);
        const cxd f0 = closed_form_coefficient(m, plain, SourceId::DS, 0.3);
        const double ff = source_form_factor(std::sqrt(m.k2()), smeared.source_radius);
        const cxd fs = closed_form_coefficient(m, smeared, SourceId::DS, 0.3);
        CHECK(std::abs(fs - ff * f0) <= 1e-13 * (1.0 + std::abs(f0)));
    }
    // exterior field gains the matching constant factor
    const Vec3 r{0.5, 0.2, 3.0};
    const cxd damped = double_slit_field(plain, r, 0.1, 0.3);
    const cxd sm = double_slit_field(smeared, r, 0.1, 0.3);
    const cxd factor = source_field_factor(cxd(plain.wavenumber, 0.3), smeared.source_radius);
    CHECK(std::abs(sm - factor * damped) < 1e-12 * std::abs(sm));
}

TEST_CASE("slit spec validation") {
    SlitSpec s = sample_slit();
    CHECK_NOTHROW(s.validate());
    SlitSpec bad = s;
    bad.separation = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.wavenumber = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.magnitude_a = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = s;
    bad.dispersion = Dispersion::NonRelativistic;
    bad.mass = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    // phases are normalized into [0, 2 pi)
    SlitSpec wrapped = s;
    wrapped.phase_a = -0.5;
    const SourceSpec src = wrapped.source(SourceId::A);
    CHECK(src.phase == doctest::Approx(2 * pi - 0.5));
    CHECK(src.phase >= 0.0);
    CHECK(src.phase < 2 * pi);
}

TEST_CASE("non-relativistic dispersion option") {
    SlitSpec s = sample_slit();
    CHECK(s.omega_k() == doctest::Approx(std::sqrt(s.wavenumber * s.wavenumber + s.mass * s.mass)));
    s.dispersion = Dispersion::NonRelativistic;
    CHECK(s.omega_k() == doctest::Approx(s.wavenumber * s.wavenumber / (2.0 * s.mass)));
}
