/// Heat semigroup, Duhamel quadrature, Leray and convection sources, and the
/// scheme constants.  Reference values: closed forms, independent
/// quadratures, per-mode ODE solutions, and the zero-padded real-space
/// convolution oracle.

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <functional>

#include "leray/fft.hpp"
#include "leray/kernels.hpp"
#include "leray/presets.hpp"
#include "oracles.hpp"

using namespace leray;

namespace {

GridSpec box_pi(int n = 32) { return GridSpec::make(n, M_PI); }

ScalarField sample(const GridSpec& g,
                   const std::function<double(double, double, double)>& f) {
    ScalarField out(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k)
                out.at(i, j, k) = f(g.coord(i), g.coord(j), g.coord(k));
    return out;
}

double sup_diff(const VectorField& a, const VectorField& b) {
    VectorField d = a;
    d -= b;
    return sup_abs(d);
}

/// Analytic quadratic form of the Taylor-Green field at half-width pi:
/// q = 2 cos^2x cos^2y cos^2z - 2 sin^2x sin^2y cos^2z.
double tg_quadratic_form(double x, double y, double z) {
    const double cx = std::cos(x), cy = std::cos(y), cz = std::cos(z);
    const double sx = std::sin(x), sy = std::sin(y);
    return 2.0 * cx * cx * cy * cy * cz * cz - 2.0 * sx * sx * sy * sy * cz * cz;
}

/// Composite trapezoid of e^{-a(1-s)} over s in [0,1] with M intervals,
/// computed on scalars only (the quadrature the Duhamel step is specified
/// to use, evaluated without any field machinery).
double trapezoid_decay(double a, int M) {
    double sum = 0.5 * (std::exp(-a) + 1.0);
    for (int p = 1; p < M; ++p) sum += std::exp(-a * (1.0 - double(p) / M));
    return sum / M;
}

}  // namespace

TEST_CASE("scheme constants: frozen values and quadrature cross-checks") {
    const SchemeConstants c = compute_constants(HeatParams{}, box_pi(8), 16.0);

    // space-time L1 mass of the heat kernel is exactly 1; the constant is
    // clamped below by 1
    CHECK(c.c_g == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(oracle::heat_l1_mass(0.37) == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(oracle::heat_l1_mass(2.0) == doctest::Approx(1.0).epsilon(2e-3));

    // Leray kernel: near-field L1 + sqrt far-field L2 = 1/2 + 1/sqrt(12 pi),
    // which is below the clamp
    CHECK(c.c_k_raw == doctest::Approx(oracle::c_k_closed_form()).epsilon(1e-3));
    CHECK(c.c_k_raw == doctest::Approx(oracle::c_k_quadrature()).epsilon(2e-3));
    CHECK(c.c_k == doctest::Approx(1.0));

    // Sobolev embedding constant sqrt(4 pi * pi / 4) = pi
    CHECK(c.c_s == doctest::Approx(oracle::c_s_closed_form()).epsilon(1e-8));
    CHECK(c.c_s == doctest::Approx(oracle::c_s_quadrature()).epsilon(1e-4));

    CHECK(c.c_n == doctest::Approx(16.0));
}

TEST_CASE("heat_propagate: dt = 0 is a bit-exact identity, dt < 0 rejected") {
    const GridSpec g = box_pi(16);
    const VectorField v = preset_field(PresetKind::taylor_green, g, 0.2, 5);
    const VectorField same = heat_propagate(v, HeatParams{}, 0.0);
    for (int c = 0; c < 3; ++c)
        CHECK(std::memcmp(same[c].v.data(), v[c].v.data(),
                          v[c].v.size() * sizeof(double)) == 0);
    CHECK_THROWS_AS(heat_propagate(v, HeatParams{}, -1e-9), SolverError);
}

TEST_CASE("heat_propagate: single mode decays at exactly exp(-nu rho ksq dt)") {
    const GridSpec g = box_pi();
    const ScalarField f = sample(g, [](double x, double, double) { return std::sin(x); });
    const HeatParams p{2.0, 0.25};  // nu, rho
    const double dt = 0.8;
    const ScalarField out = heat_propagate(f, p, dt);
    const double factor = std::exp(-p.nu * p.rho * dt);  // |kappa|^2 = 1
    double worst = 0.0;
    for (std::size_t i = 0; i < f.v.size(); ++i)
        worst = std::max(worst, std::fabs(out.v[i] - factor * f.v[i]));
    CHECK(worst <= 1e-13);
}

TEST_CASE("heat_propagate: semigroup property and mean conservation") {
    const GridSpec g = box_pi(16);
    const VectorField v = preset_field(PresetKind::abc_flow, g, 0.3, 9);
    const HeatParams p{1.0, 0.5};
    const VectorField two_steps = heat_propagate(heat_propagate(v, p, 0.3), p, 0.7);
    const VectorField one_step = heat_propagate(v, p, 1.0);
    CHECK(sup_diff(two_steps, one_step) <= 1e-12 * sup_abs(v));

    ScalarField shifted = v[0];
    for (double& x : shifted.v) x += 3.25;  // inject a nonzero mean
    const ScalarField evolved = heat_propagate(shifted, p, 0.6);
    double mean_in = 0.0, mean_out = 0.0;
    for (double x : shifted.v) mean_in += x;
    for (double x : evolved.v) mean_out += x;
    CHECK(mean_out / shifted.v.size() ==
          doctest::Approx(mean_in / shifted.v.size()).epsilon(1e-12));
}

TEST_CASE("duhamel_step: input validation") {
    const GridSpec g = box_pi(8);
    const VectorField z(g);
    CHECK_THROWS_AS(duhamel_step({z}, {0.0}, HeatParams{}, 0.0), SolverError);
    CHECK_THROWS_AS(duhamel_step({z, z}, {0.0, 0.5}, HeatParams{}, 1.0), SolverError);
    CHECK_THROWS_AS(duhamel_step({z, z, z}, {0.0, 0.4, 0.4}, HeatParams{}, 0.4),
                    SolverError);
}

TEST_CASE("duhamel_step: matches the scalar trapezoid on a single mode") {
    const GridSpec g = box_pi();
    const HeatParams p{1.5, 0.6};
    const double a = p.nu * p.rho;  // |kappa|^2 = 1 for sin(x)
    const ScalarField f = sample(g, [](double x, double, double) { return std::sin(x); });
    VectorField s(g);
    s[1] = f;

    for (int M : {8, 32}) {
        std::vector<VectorField> sources(M + 1, s);
        std::vector<double> times(M + 1);
        for (int j = 0; j <= M; ++j) times[j] = double(j) / M;
        const VectorField out = duhamel_step(sources, times, p, 1.0);
        const double expect = trapezoid_decay(a, M);
        double worst = 0.0;
        for (std::size_t i = 0; i < f.v.size(); ++i)
            worst = std::max(worst, std::fabs(out[1].v[i] - expect * f.v[i]));
        CHECK(worst <= 1e-13);
        CHECK(sup_abs(out[0]) <= 1e-15);
        CHECK(sup_abs(out[2]) <= 1e-15);
    }
}

TEST_CASE("duhamel quadrature: second-order convergence to the exact mode integral") {
    const double a = 0.9;
    const double exact = oracle::duhamel_mode_exact(a);
    const double e8 = std::fabs(trapezoid_decay(a, 8) - exact);
    const double e32 = std::fabs(trapezoid_decay(a, 32) - exact);
    CHECK(e8 / e32 == doctest::Approx(16.0).epsilon(0.15));
}

TEST_CASE("leray_quadratic_form: analytic Taylor-Green value") {
    const GridSpec g = box_pi();
    const VectorField v = preset_field(PresetKind::taylor_green, g);
    for (bool dealias : {true, false}) {
        const ScalarField q = leray_quadratic_form(v, dealias);
        double worst = 0.0;
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                for (int k = 0; k < g.n; ++k)
                    worst = std::max(
                        worst, std::fabs(q.at(i, j, k) - tg_quadratic_form(
                                                             g.coord(i), g.coord(j),
                                                             g.coord(k))));
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("leray_source: zero field and pure shear give zero") {
    const GridSpec g = box_pi(16);
    CHECK(sup_abs(leray_source(VectorField(g))) == 0.0);
    VectorField shear(g);
    shear[0] = sample(g, [](double, double y, double) { return std::sin(y); });
    CHECK(sup_abs(leray_source(shear)) <= 1e-14);
}

TEST_CASE("leray_source: quadratic homogeneity and zero mean") {
    const GridSpec g = box_pi(16);
    const VectorField v = preset_field(PresetKind::taylor_green, g, 0.4, 3);
    VectorField v2 = v;
    v2 *= 2.0;
    VectorField scaled = leray_source(v);
    scaled *= 4.0;
    CHECK(sup_diff(leray_source(v2), scaled) <= 1e-12 * sup_abs(scaled));

    const VectorField lr = leray_source(v);
    for (int c = 0; c < 3; ++c) {
        double mean = 0.0;
        for (double x : lr[c].v) mean += x;
        CHECK(std::fabs(mean) / lr[c].v.size() <= 1e-14);
    }
}

TEST_CASE("leray_source cancels the compressible part of convection") {
    const GridSpec g = box_pi();
    const VectorField v = preset_field(PresetKind::taylor_green, g, 0.5, 17);
    const VectorField total = convection_source(v) + leray_source(v);
    const double scale = sup_abs(v);
    CHECK(sobolev_norm(divergence(total), 0) <= 1e-10 * scale * scale);
}

TEST_CASE("leray_source: Taylor-Green matches the closed-form solution") {
    // q = (1 + cos 2z)(cos 2x + cos 2y)/2, so solving Lap p = q by hand and
    // taking the gradient gives the exact periodic field the multiplier must
    // reproduce:
    //   p = (1/8)(cos2x + cos2y) + (1/16) cos2z (cos2x + cos2y),
    //   source_i = d_i p (sign: multiplier is -i xi_i/|xi|^2 applied to q).
    const GridSpec g = box_pi();
    const VectorField v = preset_field(PresetKind::taylor_green, g);
    const VectorField impl = leray_source(v);
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k) {
                const double x = g.coord(i), y = g.coord(j), z = g.coord(k);
                const double w = 0.25 + std::cos(2 * z) / 8.0;
                const double f0 = std::sin(2 * x) * w;
                const double f1 = std::sin(2 * y) * w;
                const double f2 = std::sin(2 * z) *
                                  (std::cos(2 * x) + std::cos(2 * y)) / 8.0;
                worst = std::max(worst, std::fabs(impl[0].at(i, j, k) - f0));
                worst = std::max(worst, std::fabs(impl[1].at(i, j, k) - f1));
                worst = std::max(worst, std::fabs(impl[2].at(i, j, k) - f2));
            }
    CHECK(worst <= 1e-12);
}

namespace {
// Analytic quadratic form of the Gaussian vortex with sigma = 2 (L = 16):
// q = 2 psi^2 / sigma^4 * ((x^2 + y^2)/sigma^2 - 1), psi^2 = exp(-r^2/sigma^2).
double vortex_quadratic_form(double x, double y, double z) {
    const double s2 = 4.0;
    const double psi2 = std::exp(-(x * x + y * y + z * z) / s2);
    return 2.0 * psi2 / (s2 * s2) * ((x * x + y * y) / s2 - 1.0);
}

double vortex_oracle_rel_diff(int n) {
    const GridSpec g = GridSpec::make(n, 16.0);
    const VectorField impl =
        leray_source(preset_field(PresetKind::gaussian_vortex, g));
    const auto ref = oracle::leray_free_space_field(g, vortex_quadratic_form);
    double ref_sup = 0.0, diff_sup = 0.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < ref[c].v.size(); ++i) {
            ref_sup = std::max(ref_sup, std::fabs(ref[c].v[i]));
            diff_sup = std::max(diff_sup, std::fabs(ref[c].v[i] - impl[c].v[i]));
        }
    REQUIRE(ref_sup > 0.0);
    return diff_sup / ref_sup;
}
}  // namespace

TEST_CASE("leray_source matches the free-space convolution on a localized field") {
    // On a boundary-negligible field the periodic multiplier and the real-
    // space kernel convolution describe the same object; the residual is the
    // oracle's own O(h^2) Riemann-sum error at the kernel singularity, so the
    // disagreement must be small and shrink by ~4x when h halves.
    const double e32 = vortex_oracle_rel_diff(32);
    const double e64 = vortex_oracle_rel_diff(64);
    CHECK(e64 <= 0.05);
    CHECK(e32 / e64 == doctest::Approx(4.0).epsilon(0.25));
}

TEST_CASE("convolution oracle is self-consistent with the brute-force sum") {
    const GridSpec g = box_pi(16);
    const auto fast = oracle::leray_free_space_field(g, tg_quadratic_form);
    const ScalarField q = sample(g, tg_quadratic_form);
    for (auto [i, j, k] : {std::array<int, 3>{3, 5, 7}, {10, 2, 14}}) {
        for (int c = 0; c < 3; ++c)
            CHECK(fast[c].at(i, j, k) ==
                  doctest::Approx(oracle::leray_convolution_at(q, i, j, k, c))
                      .epsilon(1e-10));
    }
}

TEST_CASE("convection_source: analytic two-mode example") {
    const GridSpec g = box_pi();
    VectorField v(g);
    v[0] = sample(g, [](double, double y, double) { return std::sin(y); });
    v[1] = sample(g, [](double x, double, double) { return std::sin(x); });
    for (bool dealias : {true, false}) {
        const VectorField conv = convection_source(v, dealias);
        double worst = 0.0;
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                for (int k = 0; k < g.n; ++k) {
                    const double x = g.coord(i), y = g.coord(j);
                    worst = std::max(worst,
                                     std::fabs(conv[0].at(i, j, k) +
                                               std::sin(x) * std::cos(y)));
                    worst = std::max(worst,
                                     std::fabs(conv[1].at(i, j, k) +
                                               std::sin(y) * std::cos(x)));
                    worst = std::max(worst, std::fabs(conv[2].at(i, j, k)));
                }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("duhamel_constant_source: zero start, agrees with duhamel_step at the end") {
    const GridSpec g = box_pi(16);
    VectorField s(g);
    s[0] = sample(g, [](double x, double, double) { return std::sin(x); });
    const HeatParams p{1.0, 0.8};
    const int M = 6;
    const auto nodes = detail::duhamel_constant_source(s, p, M);
    REQUIRE(nodes.size() == std::size_t(M + 1));
    CHECK(sup_abs(nodes[0]) == 0.0);

    std::vector<VectorField> sources(M + 1, s);
    std::vector<double> times(M + 1);
    for (int j = 0; j <= M; ++j) times[j] = double(j) / M;
    const VectorField end = duhamel_step(sources, times, p, 1.0);
    CHECK(sup_diff(nodes[M], end) <= 1e-13 * sup_abs(end));
}
