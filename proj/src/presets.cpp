#include "leray/presets.hpp"

#include <cmath>
#include <random>

#include "leray/errors.hpp"

namespace leray {

PresetKind preset_from_name(const std::string& name) {
    if (name == "taylor_green") return PresetKind::taylor_green;
    if (name == "abc_flow") return PresetKind::abc_flow;
    if (name == "gaussian_vortex") return PresetKind::gaussian_vortex;
    fail(ErrorKind::config, "unknown preset: " + name);
}

std::string preset_name(PresetKind kind) {
    switch (kind) {
        case PresetKind::taylor_green: return "taylor_green";
        case PresetKind::abc_flow: return "abc_flow";
        case PresetKind::gaussian_vortex: return "gaussian_vortex";
    }
    return "?";
}

namespace {

/// Curl of a random low-mode vector potential: solenoidal by construction.
void add_perturbation(VectorField& f, double amp, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    const GridSpec& g = f.grid;
    const double s = M_PI / g.half_width;
    // potential A_c(x) = sum over a few fixed modes of random coefficients
    const int kmax = 2;
    struct Mode {
        int kx, ky, kz;
        double a[3], b[3];
    };
    std::vector<Mode> modes;
    for (int kx = 0; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky)
            for (int kz = -kmax; kz <= kmax; ++kz) {
                if (kx == 0 && ky == 0 && kz == 0) continue;
                Mode m{kx, ky, kz, {}, {}};
                for (int c = 0; c < 3; ++c) {
                    m.a[c] = unif(rng);
                    m.b[c] = unif(rng);
                }
                modes.push_back(m);
            }
    const double norm = amp / modes.size();
    for (int i = 0; i < g.n; ++i) {
        const double x = g.coord(i);
        for (int j = 0; j < g.n; ++j) {
            const double y = g.coord(j);
            for (int k = 0; k < g.n; ++k) {
                const double z = g.coord(k);
                const std::size_t idx = g.index(i, j, k);
                for (const auto& m : modes) {
                    const double ph = s * (m.kx * x + m.ky * y + m.kz * z);
                    const double cs = std::cos(ph), sn = std::sin(ph);
                    // curl of (A cos + B sin) per mode, kappa = s*(kx,ky,kz)
                    const double kx = s * m.kx, ky = s * m.ky, kz = s * m.kz;
                    const double dA[3] = {m.a[0] * -sn + m.b[0] * cs,
                                          m.a[1] * -sn + m.b[1] * cs,
                                          m.a[2] * -sn + m.b[2] * cs};
                    f[0].v[idx] += norm * (ky * dA[2] - kz * dA[1]);
                    f[1].v[idx] += norm * (kz * dA[0] - kx * dA[2]);
                    f[2].v[idx] += norm * (kx * dA[1] - ky * dA[0]);
                }
            }
        }
    }
}

}  // namespace

VectorField preset_field(PresetKind kind, const GridSpec& grid, double perturb,
                         std::uint64_t seed) {
    VectorField f(grid);
    const double s = M_PI / grid.half_width;  // scaled coordinate factor
    const double sigma = grid.half_width / 8.0;

    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.coord(i);
        for (int j = 0; j < grid.n; ++j) {
            const double y = grid.coord(j);
            for (int k = 0; k < grid.n; ++k) {
                const double z = grid.coord(k);
                const std::size_t idx = grid.index(i, j, k);
                switch (kind) {
                    case PresetKind::taylor_green:
                        f[0].v[idx] = std::sin(s * x) * std::cos(s * y) * std::cos(s * z);
                        f[1].v[idx] = -std::cos(s * x) * std::sin(s * y) * std::cos(s * z);
                        f[2].v[idx] = 0.0;
                        break;
                    case PresetKind::abc_flow:
                        // A = B = C = 1
                        f[0].v[idx] = std::sin(s * z) + std::cos(s * y);
                        f[1].v[idx] = std::sin(s * x) + std::cos(s * z);
                        f[2].v[idx] = std::sin(s * y) + std::cos(s * x);
                        break;
                    case PresetKind::gaussian_vortex: {
                        // curl of (0, 0, exp(-|x|^2 / 2 sigma^2))
                        const double psi =
                            std::exp(-(x * x + y * y + z * z) / (2.0 * sigma * sigma));
                        f[0].v[idx] = -y / (sigma * sigma) * psi;
                        f[1].v[idx] = x / (sigma * sigma) * psi;
                        f[2].v[idx] = 0.0;
                        break;
                    }
                }
            }
        }
    }
    if (perturb != 0.0) add_perturbation(f, perturb, seed);
    return f;
}

}  // namespace leray
