#pragma once

#include <vector>

#include "leray/field.hpp"

namespace leray {

/// Integer frequency for a storage index along one axis.
inline int freq_of_index(int k, int n) { return k < n / 2 ? k : k - n; }

/// Forward transform: normalized so coefficients are Fourier-series
/// coefficients (DFT / n^3).  A real input of a single mode e^{i pi q x/L}
/// lands on storage index q mod n with unit magnitude.
SpectralField forward(const ScalarField& f);

/// Inverse transform back to samples (real part; imaginary parts of a
/// Hermitian-symmetric input cancel to round-off).
ScalarField inverse(const SpectralField& F);

SpectralVector forward(const VectorField& f);
VectorField inverse(const SpectralVector& F, const GridSpec& grid);

/// Per-axis wavevector tables for a grid.
///  kappa_d  : pi*q/L with the Nyquist entry zeroed -- used for first
///             derivatives (keeps derivatives of real fields real) and,
///             consistently, for Sobolev weights.
///  kappa_sq : full (pi*q/L)^2 including Nyquist -- used for even-order
///             multipliers (heat decay, Leray denominator, Laplacian).
struct WaveTables {
    std::vector<double> kappa_d;
    std::vector<double> kappa_sq;
};

const WaveTables& wave_tables(const GridSpec& grid);

/// |kappa|^2 for a flat storage index (sum of the three per-axis kappa_sq).
std::vector<double> ksq_table(const GridSpec& grid);

/// Largest per-axis |q| kept by the 2/3-rule truncation.
inline int dealias_cutoff(int n) { return (n - 1) / 3; }

/// Zero all coefficients with any per-axis |q| above the 2/3-rule cutoff.
void dealias_truncate(SpectralField& F);

}  // namespace leray
