#include "leray/fields.hpp"

#include <algorithm>
#include <cmath>

namespace leray {

namespace {

void check_m(int m) {
    if (m < 0 || m > 4)
        fail(ErrorKind::invalid_argument,
             "norm order m must be in [0, 4], got " + std::to_string(m));
}

void check_finite(const ScalarField& f, const char* who) {
    if (!is_finite(f))
        fail(ErrorKind::invalid_field, std::string(who) + ": non-finite values");
}

void check_finite(const VectorField& f, const char* who) {
    if (!is_finite(f))
        fail(ErrorKind::invalid_field, std::string(who) + ": non-finite values");
}

/// All multi-indices alpha with |alpha| <= m.
std::vector<std::array<int, 3>> multi_indices(int m) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a <= m; ++a)
        for (int b = 0; a + b <= m; ++b)
            for (int c = 0; a + b + c <= m; ++c) out.push_back({a, b, c});
    return out;
}

/// Sobolev weight sum_{|alpha| <= m} prod_d kappa_d^{2 alpha_d} for one mode,
/// given the per-axis squared wavenumbers (derivative convention, so the
/// Nyquist contribution is zero for alpha_d >= 1).
double sobolev_weight(const std::vector<std::array<int, 3>>& alphas, double kx2,
                      double ky2, double kz2) {
    double w = 0.0;
    for (const auto& a : alphas) {
        double t = 1.0;
        for (int p = 0; p < a[0]; ++p) t *= kx2;
        for (int p = 0; p < a[1]; ++p) t *= ky2;
        for (int p = 0; p < a[2]; ++p) t *= kz2;
        w += t;
    }
    return w;
}

double sobolev_norm_sq(const ScalarField& f, int m) {
    const auto& t = wave_tables(f.grid);
    const auto alphas = multi_indices(m);
    const int n = f.grid.n;
    const double vol = 8.0 * f.grid.half_width * f.grid.half_width * f.grid.half_width;
    SpectralField F = forward(f);
    double sum = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        const double kx2 = t.kappa_d[i] * t.kappa_d[i];
        for (int j = 0; j < n; ++j) {
            const double ky2 = t.kappa_d[j] * t.kappa_d[j];
            for (int k = 0; k < n; ++k, ++idx) {
                const double kz2 = t.kappa_d[k] * t.kappa_d[k];
                sum += sobolev_weight(alphas, kx2, ky2, kz2) * std::norm(F.coeffs[idx]);
            }
        }
    }
    return vol * sum;
}

}  // namespace

double sobolev_norm(const ScalarField& f, int m) {
    check_m(m);
    check_finite(f, "sobolev_norm");
    return std::sqrt(sobolev_norm_sq(f, m));
}

double sobolev_norm(const VectorField& f, int m) {
    check_m(m);
    check_finite(f, "sobolev_norm");
    double best = 0.0;
    for (int i = 0; i < 3; ++i)
        best = std::max(best, std::sqrt(sobolev_norm_sq(f[i], m)));
    return best;
}

ScalarField derivative(const ScalarField& f, int axis) {
    const auto& t = wave_tables(f.grid);
    SpectralField F = forward(f);
    const int n = f.grid.n;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++idx) {
                const double kap = axis == 0   ? t.kappa_d[i]
                                   : axis == 1 ? t.kappa_d[j]
                                               : t.kappa_d[k];
                F.coeffs[idx] *= std::complex<double>(0.0, kap);
            }
    return inverse(F);
}

namespace {

double cm_sup_norm_scalar(const ScalarField& f, int m) {
    // sum over |alpha| <= m of sup |D^alpha f|; derivatives taken spectrally
    // one axis power at a time.
    double total = 0.0;
    for (const auto& a : multi_indices(m)) {
        ScalarField d = f;
        for (int p = 0; p < a[0]; ++p) d = derivative(d, 0);
        for (int p = 0; p < a[1]; ++p) d = derivative(d, 1);
        for (int p = 0; p < a[2]; ++p) d = derivative(d, 2);
        total += sup_abs(d);
    }
    return total;
}

}  // namespace

double cm_sup_norm(const ScalarField& f, int m) {
    check_m(m);
    check_finite(f, "cm_sup_norm");
    return cm_sup_norm_scalar(f, m);
}

double cm_sup_norm(const VectorField& f, int m) {
    check_m(m);
    check_finite(f, "cm_sup_norm");
    double best = 0.0;
    for (int i = 0; i < 3; ++i) best = std::max(best, cm_sup_norm_scalar(f[i], m));
    return best;
}

double hm_cm_norm(const VectorField& f, int m) {
    return std::max(sobolev_norm(f, m), cm_sup_norm(f, m));
}

ScalarField divergence(const VectorField& v) {
    check_finite(v, "divergence");
    const auto& t = wave_tables(v.grid);
    SpectralVector V = forward(v);
    const int n = v.grid.n;
    SpectralField D(v.grid);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k, ++idx) {
                D.coeffs[idx] =
                    std::complex<double>(0.0, t.kappa_d[i]) * V[0].coeffs[idx] +
                    std::complex<double>(0.0, t.kappa_d[j]) * V[1].coeffs[idx] +
                    std::complex<double>(0.0, t.kappa_d[k]) * V[2].coeffs[idx];
            }
    return inverse(D);
}

ScalarField laplacian(const ScalarField& f) {
    SpectralField F = forward(f);
    const auto ksq = ksq_table(f.grid);
    for (std::size_t i = 0; i < ksq.size(); ++i) F.coeffs[i] *= -ksq[i];
    return inverse(F);
}

VectorField laplacian(const VectorField& f) {
    VectorField out(f.grid);
    for (int i = 0; i < 3; ++i) out[i] = laplacian(f[i]);
    return out;
}

double decay_exponent(const ScalarField& f, double r_min, double r_max, double cap) {
    check_finite(f, "decay_exponent");
    if (!(r_min > 0.0) || !(r_max > r_min))
        fail(ErrorKind::invalid_argument, "decay_exponent: need 0 < r_min < r_max");

    const int n = f.grid.n;
    const double h = f.grid.h();
    const double global_sup = sup_abs(f);
    if (global_sup == 0.0)
        fail(ErrorKind::invalid_field, "decay_exponent: zero field");

    // Free-space check: the outermost cell layer must be small against the
    // global sup.  Threshold 0.1 rejects genuinely periodic fields while
    // letting polynomially decaying profiles through to the fit.
    double boundary_sup = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (i != 0 && i != n - 1 && j != 0 && j != n - 1 && k != 0 && k != n - 1)
                    continue;
                boundary_sup = std::max(boundary_sup, std::fabs(f.at(i, j, k)));
            }
    if (boundary_sup >= 0.1 * global_sup)
        fail(ErrorKind::not_free_space,
             "decay_exponent: boundary shell is not negligible");

    // Radial shells of width h; shell s covers radii [s*h, (s+1)*h).
    const int n_shells = static_cast<int>(std::ceil(
                             std::sqrt(3.0) * f.grid.half_width / h)) + 2;
    std::vector<double> shell_max(n_shells, 0.0);
    for (int i = 0; i < n; ++i) {
        const double x = f.grid.coord(i);
        for (int j = 0; j < n; ++j) {
            const double y = f.grid.coord(j);
            for (int k = 0; k < n; ++k) {
                const double z = f.grid.coord(k);
                const double r = std::sqrt(x * x + y * y + z * z);
                const int s = static_cast<int>(r / h);
                if (s < n_shells)
                    shell_max[s] = std::max(shell_max[s], std::fabs(f.at(i, j, k)));
            }
        }
    }

    // Collect usable shells in the fit range; normalize by the first one so
    // the fit is invariant under rescaling of f.
    std::vector<double> lx, ly;
    double ref = 0.0;
    for (int s = 0; s < n_shells; ++s) {
        const double r = (s + 0.5) * h;
        if (r < r_min || r > r_max || shell_max[s] <= 0.0) continue;
        if (ref == 0.0) ref = shell_max[s];
        lx.push_back(std::log(r));
        ly.push_back(std::log(shell_max[s] / ref));
    }
    if (lx.size() < 4)
        fail(ErrorKind::insufficient_range,
             "decay_exponent: fewer than 4 usable shells in fit range");

    const std::size_t npts = lx.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= npts;
    my /= npts;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < npts; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    const double slope = sxy / sxx;
    return std::min(-slope, cap);
}

LocalTrajectory LocalTrajectory::constant(const VectorField& data, int M, double t0) {
    if (M < 2)
        fail(ErrorKind::insufficient_nodes, "trajectory needs M >= 2 nodes");
    LocalTrajectory traj;
    traj.grid = data.grid;
    traj.t0 = t0;
    traj.states.assign(M + 1, data);
    return traj;
}

double c0_traj_norm(const LocalTrajectory& traj, int m) {
    if (traj.M() < 2)
        fail(ErrorKind::insufficient_nodes, "c0_traj_norm needs M >= 2 nodes");
    double best = 0.0;
    for (const auto& s : traj.states) best = std::max(best, sobolev_norm(s, m));
    return best;
}

double c1_traj_norm(const LocalTrajectory& traj, int m) {
    const int M = traj.M();
    if (M < 2)
        fail(ErrorKind::insufficient_nodes, "c1_traj_norm needs M >= 2 nodes");
    const double dt = 1.0 / M;
    double dbest = 0.0;
    for (int j = 0; j <= M; ++j) {
        VectorField ddt(traj.grid);
        if (j == 0)
            ddt = (1.0 / dt) * (traj.states[1] - traj.states[0]);
        else if (j == M)
            ddt = (1.0 / dt) * (traj.states[M] - traj.states[M - 1]);
        else
            ddt = (0.5 / dt) * (traj.states[j + 1] - traj.states[j - 1]);
        dbest = std::max(dbest, sobolev_norm(ddt, m));
    }
    return c0_traj_norm(traj, m) + dbest;
}

}  // namespace leray
