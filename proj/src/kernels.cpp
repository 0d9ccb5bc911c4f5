#include "leray/kernels.hpp"

#include <cmath>

namespace leray {

namespace {

void check_heat_params(const HeatParams& p) {
    if (!(p.nu > 0.0) || !(p.rho > 0.0))
        fail(ErrorKind::invalid_argument, "heat params: nu and rho must be > 0");
}

template <class F>
double simpson(F f, double a, double b, int intervals) {
    // composite Simpson, `intervals` even
    const double h = (b - a) / intervals;
    double sum = f(a) + f(b);
    for (int i = 1; i < intervals; ++i)
        sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

SpectralField heat_spectral(const ScalarField& f, double a, double dt) {
    SpectralField F = forward(f);
    const auto ksq = ksq_table(f.grid);
    for (std::size_t i = 0; i < ksq.size(); ++i)
        F.coeffs[i] *= std::exp(-a * dt * ksq[i]);
    return F;
}

/// Real-space factors for the quadratic sources: the velocity itself and all
/// nine spectral derivatives d_j v_m.  With dealiasing the factors are built
/// from the truncated spectrum so products are alias-free after the result
/// truncation.
struct Factors {
    VectorField v;
    ScalarField dv[3][3];  // dv[j][m] = d_j v_m
};

Factors make_factors(const VectorField& v, bool dealias) {
    SpectralVector V = forward(v);
    if (dealias)
        for (int c = 0; c < 3; ++c) dealias_truncate(V[c]);
    Factors f;
    f.v = dealias ? inverse(V, v.grid) : v;
    const auto& t = wave_tables(v.grid);
    const int n = v.grid.n;
    for (int m = 0; m < 3; ++m) {
        for (int j = 0; j < 3; ++j) {
            SpectralField D(v.grid);
            std::size_t idx = 0;
            for (int i = 0; i < n; ++i)
                for (int jj = 0; jj < n; ++jj)
                    for (int kk = 0; kk < n; ++kk, ++idx) {
                        const double kap = j == 0   ? t.kappa_d[i]
                                           : j == 1 ? t.kappa_d[jj]
                                                    : t.kappa_d[kk];
                        D.coeffs[idx] = std::complex<double>(0.0, kap) * V[m].coeffs[idx];
                    }
            f.dv[j][m] = inverse(D);
        }
    }
    return f;
}

ScalarField quadratic_form_from(const Factors& f, const GridSpec& grid) {
    ScalarField q(grid);
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
            for (std::size_t i = 0; i < q.v.size(); ++i)
                q.v[i] += f.dv[j][m].v[i] * f.dv[m][j].v[i];
    return q;
}

/// out_i = (-i kappa_i / |kappa|^2) * Q, zero mode dropped.
SpectralVector apply_leray_multiplier(const SpectralField& Q) {
    const GridSpec grid = Q.grid;
    const auto& t = wave_tables(grid);
    const int n = grid.n;
    SpectralVector out{SpectralField(grid), SpectralField(grid), SpectralField(grid)};
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++idx) {
                const double ksq = t.kappa_sq[i] + t.kappa_sq[j] + t.kappa_sq[k];
                if (ksq == 0.0) continue;
                const std::complex<double> base = Q.coeffs[idx] / ksq;
                out[0].coeffs[idx] = std::complex<double>(0.0, -t.kappa_d[i]) * base;
                out[1].coeffs[idx] = std::complex<double>(0.0, -t.kappa_d[j]) * base;
                out[2].coeffs[idx] = std::complex<double>(0.0, -t.kappa_d[k]) * base;
            }
    return out;
}

}  // namespace

ScalarField heat_propagate(const ScalarField& f, const HeatParams& p, double dt) {
    check_heat_params(p);
    if (dt < 0.0) fail(ErrorKind::invalid_argument, "heat_propagate: dt must be >= 0");
    if (!is_finite(f)) fail(ErrorKind::invalid_field, "heat_propagate: non-finite input");
    if (dt == 0.0) return f;
    return inverse(heat_spectral(f, p.rho * p.nu, dt));
}

VectorField heat_propagate(const VectorField& f, const HeatParams& p, double dt) {
    VectorField out(f.grid);
    for (int i = 0; i < 3; ++i) out[i] = heat_propagate(f[i], p, dt);
    return out;
}

VectorField duhamel_step(const std::vector<VectorField>& sources,
                         const std::vector<double>& times, const HeatParams& p,
                         double tau) {
    check_heat_params(p);
    if (sources.size() != times.size())
        fail(ErrorKind::invalid_argument, "duhamel_step: sources/times size mismatch");
    if (sources.size() < 2)
        fail(ErrorKind::insufficient_nodes, "duhamel_step: needs at least 2 nodes");
    for (std::size_t j = 1; j < times.size(); ++j)
        if (!(times[j] > times[j - 1]))
            fail(ErrorKind::invalid_argument, "duhamel_step: times must increase");
    if (std::fabs(times.back() - tau) > 1e-12)
        fail(ErrorKind::invalid_argument, "duhamel_step: times must end at tau");

    const GridSpec grid = sources.front().grid;
    const auto ksq = ksq_table(grid);
    const double a = p.rho * p.nu;
    const std::size_t J = sources.size() - 1;

    SpectralVector acc{SpectralField(grid), SpectralField(grid), SpectralField(grid)};
    for (std::size_t j = 0; j <= J; ++j) {
        if (!is_finite(sources[j]))
            fail(ErrorKind::invalid_field, "duhamel_step: non-finite source");
        double w;
        if (j == 0)
            w = 0.5 * (times[1] - times[0]);
        else if (j == J)
            w = 0.5 * (times[J] - times[J - 1]);
        else
            w = 0.5 * (times[j + 1] - times[j - 1]);
        detail::accumulate_heat_scaled(acc, forward(sources[j]), w, a,
                                       tau - times[j], ksq);
    }
    return inverse(acc, grid);
}

ScalarField leray_quadratic_form(const VectorField& v, bool dealias) {
    if (!is_finite(v)) fail(ErrorKind::invalid_field, "leray_source: non-finite input");
    return quadratic_form_from(make_factors(v, dealias), v.grid);
}

VectorField leray_source(const VectorField& v, bool dealias) {
    ScalarField q = leray_quadratic_form(v, dealias);
    SpectralField Q = forward(q);
    if (dealias) dealias_truncate(Q);
    return inverse(apply_leray_multiplier(Q), v.grid);
}

VectorField convection_source(const VectorField& v, bool dealias) {
    if (!is_finite(v)) fail(ErrorKind::invalid_field, "convection_source: non-finite input");
    Factors f = make_factors(v, dealias);
    VectorField out(v.grid);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
            for (std::size_t idx = 0; idx < out[i].v.size(); ++idx)
                out[i].v[idx] -= f.v[j].v[idx] * f.dv[j][i].v[idx];
        if (dealias) {
            SpectralField P = forward(out[i]);
            dealias_truncate(P);
            out[i] = inverse(P);
        }
    }
    return out;
}

SchemeConstants compute_constants(const HeatParams& p, const GridSpec& grid,
                                  double c_n) {
    check_heat_params(p);
    (void)grid;  // the constants are free-space; the grid enters via reports
    if (!(c_n > 0.0))
        fail(ErrorKind::invalid_argument, "compute_constants: c_n must be > 0");

    const double a = p.rho * p.nu;

    // |G|_{L1 x L1}: spatial L1 mass of the heat kernel integrated over the
    // unit local-time interval (midpoint rule in time; the mass is constant
    // in t for a positive kernel).
    auto mass_at = [a](double t) {
        const double sig = std::sqrt(4.0 * a * t);
        auto integrand = [a, t](double r) {
            const double g =
                std::pow(4.0 * M_PI * a * t, -1.5) * std::exp(-r * r / (4.0 * a * t));
            return 4.0 * M_PI * r * r * g;
        };
        return simpson(integrand, 0.0, 14.0 * sig, 4096);
    };
    double cg_raw = 0.0;
    const int Q = 32;
    for (int q = 0; q < Q; ++q) cg_raw += mass_at((q + 0.5) / Q) / Q;

    // C_K: near-field L1 and far-field L2 of K_i(z) = z_i / (4 pi |z|^3),
    // split at |z| = 1.  Angular moments of |w_3| and w_3^2 over the sphere
    // by quadrature in the polar angle.
    const double ang1 =
        2.0 * M_PI *
        simpson([](double th) { return std::fabs(std::cos(th)) * std::sin(th); },
                0.0, M_PI, 2048);
    const double ang2 = 2.0 * M_PI *
                        simpson(
                            [](double th) {
                                const double c = std::cos(th);
                                return c * c * std::sin(th);
                            },
                            0.0, M_PI, 2048);
    // |K_i| = |w_i| / (4 pi r^2): the radial integrand over B_1 is constant.
    const double near =
        simpson([ang1](double r) { (void)r; return ang1 / (4.0 * M_PI); }, 0.0, 1.0, 16);
    // K_i^2 integrand over r > 1 is ang2/(16 pi^2 r^2); substituting r = 1/u
    // maps it to a constant on (0, 1].
    const double far = simpson(
        [ang2](double u) { (void)u; return ang2 / (16.0 * M_PI * M_PI); }, 0.0, 1.0, 16);
    const double ck_raw = near + std::sqrt(far);

    // C_s = sqrt(int (1+|y|^2)^{-2} dy); r = tan(phi) turns the radial
    // integral into int_0^{pi/2} sin^2(phi) dphi.
    const double cs_int = simpson(
        [](double phi) {
            const double s = std::sin(phi);
            return s * s;
        },
        0.0, M_PI / 2.0, 2048);
    const double cs_raw = std::sqrt(4.0 * M_PI * cs_int);

    SchemeConstants k;
    k.c_g = std::max(1.0, cg_raw);
    k.c_k_raw = ck_raw;
    k.c_k = std::max(1.0, ck_raw);
    k.c_s = std::max(1.0, cs_raw);
    k.c_n = c_n;
    return k;
}

namespace detail {

SpectralVector leray_source_spectral(const VectorField& v, double rho, bool dealias) {
    ScalarField q = leray_quadratic_form(v, dealias);
    SpectralField Q = forward(q);
    if (dealias) dealias_truncate(Q);
    SpectralVector out = apply_leray_multiplier(Q);
    for (int i = 0; i < 3; ++i)
        for (auto& z : out[i].coeffs) z *= rho;
    return out;
}

SpectralVector scheme_source_spectral(const VectorField& v, double rho, bool dealias) {
    Factors f = make_factors(v, dealias);
    SpectralField Q = forward(quadratic_form_from(f, v.grid));
    if (dealias) dealias_truncate(Q);
    SpectralVector out = apply_leray_multiplier(Q);
    for (int i = 0; i < 3; ++i) {
        ScalarField conv(v.grid);
        for (int j = 0; j < 3; ++j)
            for (std::size_t idx = 0; idx < conv.v.size(); ++idx)
                conv.v[idx] -= f.v[j].v[idx] * f.dv[j][i].v[idx];
        SpectralField C = forward(conv);
        if (dealias) dealias_truncate(C);
        for (std::size_t idx = 0; idx < C.coeffs.size(); ++idx)
            out[i].coeffs[idx] = rho * (out[i].coeffs[idx] + C.coeffs[idx]);
    }
    return out;
}

SpectralVector convection_mixed_spectral(const VectorField& a, const VectorField& b,
                                         double rho, bool dealias) {
    Factors fb = make_factors(b, dealias);
    VectorField av = a;
    if (dealias) {
        SpectralVector A = forward(a);
        for (int c = 0; c < 3; ++c) dealias_truncate(A[c]);
        av = inverse(A, a.grid);
    }
    SpectralVector out{SpectralField(a.grid), SpectralField(a.grid), SpectralField(a.grid)};
    for (int i = 0; i < 3; ++i) {
        ScalarField conv(a.grid);
        for (int j = 0; j < 3; ++j)
            for (std::size_t idx = 0; idx < conv.v.size(); ++idx)
                conv.v[idx] -= av[j].v[idx] * fb.dv[j][i].v[idx];
        out[i] = forward(conv);
        if (dealias) dealias_truncate(out[i]);
        for (auto& z : out[i].coeffs) z *= rho;
    }
    return out;
}

void accumulate_heat_scaled(SpectralVector& acc, const SpectralVector& src, double w,
                            double a, double dt, const std::vector<double>& ksq) {
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < ksq.size(); ++i)
            acc[c].coeffs[i] += w * std::exp(-a * dt * ksq[i]) * src[c].coeffs[i];
}

std::vector<VectorField> duhamel_constant_source(const VectorField& S,
                                                 const HeatParams& p, int M) {
    check_heat_params(p);
    if (M < 2) fail(ErrorKind::insufficient_nodes, "duhamel: needs M >= 2");
    if (!is_finite(S)) fail(ErrorKind::invalid_field, "duhamel: non-finite source");
    const GridSpec grid = S.grid;
    const auto ksq = ksq_table(grid);
    const double a = p.rho * p.nu;
    const double dt = 1.0 / M;
    SpectralVector F = forward(S);

    std::vector<VectorField> out;
    out.reserve(M + 1);
    out.emplace_back(grid);  // tau_0: empty integral
    for (int j = 1; j <= M; ++j) {
        SpectralVector acc{SpectralField(grid), SpectralField(grid), SpectralField(grid)};
        for (int jp = 0; jp <= j; ++jp) {
            const double w = (jp == 0 || jp == j) ? 0.5 * dt : dt;
            accumulate_heat_scaled(acc, F, w, a, (j - jp) * dt, ksq);
        }
        out.push_back(inverse(acc, grid));
    }
    return out;
}

}  // namespace detail

}  // namespace leray
