#pragma once

#include <vector>

#include "leray/fields.hpp"

namespace leray {

/// Viscosity and step-size dilation entering the heat semigroup
/// exp(rho*nu*dt*Laplacian).
struct HeatParams {
    double nu = 1.0;
    double rho = 1.0;
};

/// Scheme constants.  c_g, c_k, c_s are evaluated by quadrature and clamped
/// below by 1; c_k_raw keeps the unclamped kernel integral for reporting.
struct SchemeConstants {
    double c_g = 1.0;
    double c_k = 1.0;
    double c_k_raw = 0.0;
    double c_s = 1.0;
    double c_n = 16.0;
};

/// Heat semigroup applied for local time dt >= 0: spectral multiplier
/// exp(-rho*nu*dt*|xi|^2).  dt == 0 returns the input bit-exactly.
ScalarField heat_propagate(const ScalarField& f, const HeatParams& p, double dt);
VectorField heat_propagate(const VectorField& f, const HeatParams& p, double dt);

/// Composite-trapezoid Duhamel integral
///   int_{times.front()}^{tau} G(tau - s) * S(s) ds
/// over source snapshots S(times[j]); requires times.back() == tau and at
/// least two nodes.
VectorField duhamel_step(const std::vector<VectorField>& sources,
                         const std::vector<double>& times, const HeatParams& p,
                         double tau);

/// Pointwise quadratic form q = sum_{j,m} (d_j v_m)(d_m v_j) with spectral
/// derivatives (2/3-rule dealiasing optional).
ScalarField leray_quadratic_form(const VectorField& v, bool dealias = true);

/// Leray pressure-gradient source: component i has spectral coefficients
/// (-i xi_i / |xi|^2) * q_hat(xi), zero at xi = 0.
VectorField leray_source(const VectorField& v, bool dealias = true);

/// Convection source, component i = -sum_j v_j d_j v_i.
VectorField convection_source(const VectorField& v, bool dealias = true);

/// Evaluate the scheme constants by quadrature (heat-kernel space-time L1
/// mass, Leray kernel near/far split, Sobolev embedding bound).
SchemeConstants compute_constants(const HeatParams& p, const GridSpec& grid,
                                  double c_n);

namespace detail {

/// rho * (convection + leray) source of one velocity snapshot, in spectral
/// space (the Duhamel accumulation never leaves Fourier space).
SpectralVector scheme_source_spectral(const VectorField& v, double rho,
                                      bool dealias);

/// Mixed convection -rho * sum_j a_j d_j b_i (spectral output), used by the
/// non-star substep where the transported iterate differs from the
/// transporting one.
SpectralVector convection_mixed_spectral(const VectorField& a,
                                         const VectorField& b, double rho,
                                         bool dealias);

/// Leray source alone, scaled by rho, in spectral space.
SpectralVector leray_source_spectral(const VectorField& v, double rho,
                                     bool dealias);

/// acc += w * exp(-a*dt*|xi|^2) * src, elementwise over modes.
void accumulate_heat_scaled(SpectralVector& acc, const SpectralVector& src,
                            double w, double a, double dt,
                            const std::vector<double>& ksq);

/// Duhamel increments of a time-constant source at all trajectory nodes
/// tau_j = t0 + j/M: out[j] = int_{t0}^{tau_j} G(tau_j - s) * S ds.
/// out[0] is the zero field.
std::vector<VectorField> duhamel_constant_source(const VectorField& S,
                                                 const HeatParams& p, int M);

}  // namespace detail

}  // namespace leray
