#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "leray/grid.hpp"

namespace leray {

/// Real scalar sample field on a GridSpec.
struct ScalarField {
    GridSpec grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g) : grid(g), v(g.npoints(), 0.0) {}

    double& at(int i, int j, int k) { return v[grid.index(i, j, k)]; }
    double at(int i, int j, int k) const { return v[grid.index(i, j, k)]; }

    ScalarField& operator+=(const ScalarField& o) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
        return *this;
    }
    ScalarField& operator*=(double c) {
        for (double& x : v) x *= c;
        return *this;
    }
};

inline ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
inline ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
inline ScalarField operator*(double c, ScalarField a) { return a *= c; }

/// Three-component real vector field; components share one grid.
struct VectorField {
    GridSpec grid;
    std::array<ScalarField, 3> c;

    VectorField() = default;
    explicit VectorField(const GridSpec& g)
        : grid(g), c{ScalarField(g), ScalarField(g), ScalarField(g)} {}

    ScalarField& operator[](int i) { return c[i]; }
    const ScalarField& operator[](int i) const { return c[i]; }

    VectorField& operator+=(const VectorField& o) {
        for (int i = 0; i < 3; ++i) c[i] += o.c[i];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        for (int i = 0; i < 3; ++i) c[i] -= o.c[i];
        return *this;
    }
    VectorField& operator*=(double s) {
        for (int i = 0; i < 3; ++i) c[i] *= s;
        return *this;
    }
};

inline VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
inline VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
inline VectorField operator*(double s, VectorField a) { return a *= s; }

/// Complex Fourier coefficients, one per wavevector.  Storage index k per
/// axis maps to the integer frequency q = k for k < n/2 and q = k - n
/// otherwise, i.e. q in [-n/2, n/2); the physical wavevector is pi*q/L.
struct SpectralField {
    GridSpec grid;
    std::vector<std::complex<double>> coeffs;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), coeffs(g.npoints()) {}
};

using SpectralVector = std::array<SpectralField, 3>;

inline bool is_finite(const ScalarField& f) {
    for (double x : f.v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline bool is_finite(const VectorField& f) {
    return is_finite(f[0]) && is_finite(f[1]) && is_finite(f[2]);
}

inline double sup_abs(const ScalarField& f) {
    double s = 0.0;
    for (double x : f.v) s = std::max(s, std::fabs(x));
    return s;
}

inline double sup_abs(const VectorField& f) {
    return std::max({sup_abs(f[0]), sup_abs(f[1]), sup_abs(f[2])});
}

}  // namespace leray
