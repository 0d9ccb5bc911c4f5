#include "leray/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace leray {

namespace {

// One cached c2c plan pair per grid size.  Plans are created with
// FFTW_ESTIMATE (deterministic algorithm choice run-to-run) and
// FFTW_UNALIGNED so they can execute on any caller buffer via the
// new-array interface.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex g_plan_mutex;
std::map<int, PlanPair>& plan_cache() {
    static std::map<int, PlanPair> cache;
    return cache;
}

PlanPair get_plans(int n) {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> buf(static_cast<std::size_t>(n) * n * n);
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    PlanPair plans;
    plans.fwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans.bwd = fftw_plan_dft_3d(n, n, n, p, p, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache[n] = plans;
    return plans;
}

}  // namespace

SpectralField forward(const ScalarField& f) {
    const int n = f.grid.n;
    SpectralField F(f.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) F.coeffs[i] = f.v[i];
    auto* p = reinterpret_cast<fftw_complex*>(F.coeffs.data());
    fftw_execute_dft(get_plans(n).fwd, p, p);
    const double scale = 1.0 / static_cast<double>(f.grid.npoints());
    for (auto& z : F.coeffs) z *= scale;
    return F;
}

ScalarField inverse(const SpectralField& F) {
    const int n = F.grid.n;
    std::vector<std::complex<double>> buf = F.coeffs;
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(get_plans(n).bwd, p, p);
    ScalarField f(F.grid);
    for (std::size_t i = 0; i < f.v.size(); ++i) f.v[i] = buf[i].real();
    return f;
}

SpectralVector forward(const VectorField& f) {
    return {forward(f[0]), forward(f[1]), forward(f[2])};
}

VectorField inverse(const SpectralVector& F, const GridSpec& grid) {
    VectorField f(grid);
    for (int i = 0; i < 3; ++i) f[i] = inverse(F[i]);
    return f;
}

const WaveTables& wave_tables(const GridSpec& grid) {
    static std::mutex m;
    static std::map<std::pair<int, double>, WaveTables> cache;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(grid.n, grid.half_width);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    WaveTables t;
    t.kappa_d.resize(grid.n);
    t.kappa_sq.resize(grid.n);
    const double base = M_PI / grid.half_width;
    for (int k = 0; k < grid.n; ++k) {
        const int q = freq_of_index(k, grid.n);
        const double kappa = base * q;
        t.kappa_d[k] = (q == -grid.n / 2) ? 0.0 : kappa;
        t.kappa_sq[k] = kappa * kappa;
    }
    return cache[key] = std::move(t);
}

std::vector<double> ksq_table(const GridSpec& grid) {
    const auto& t = wave_tables(grid);
    std::vector<double> ksq(grid.npoints());
    const int n = grid.n;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double sij = t.kappa_sq[i] + t.kappa_sq[j];
            for (int k = 0; k < n; ++k) ksq[idx++] = sij + t.kappa_sq[k];
        }
    return ksq;
}

void dealias_truncate(SpectralField& F) {
    const int n = F.grid.n;
    const int cut = dealias_cutoff(n);
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
        const bool ki = std::abs(freq_of_index(i, n)) > cut;
        for (int j = 0; j < n; ++j) {
            const bool kij = ki || std::abs(freq_of_index(j, n)) > cut;
            for (int k = 0; k < n; ++k, ++idx) {
                if (kij || std::abs(freq_of_index(k, n)) > cut)
                    F.coeffs[idx] = 0.0;
            }
        }
    }
}

}  // namespace leray
