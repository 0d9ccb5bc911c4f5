#pragma once

#include <vector>

#include "leray/fft.hpp"
#include "leray/field.hpp"

namespace leray {

/// Discrete Sobolev norm sqrt(sum_{|alpha| <= m} |D^alpha f|_{L2}^2) with the
/// L2 norm carrying the cell measure h^3.  Computed spectrally (Parseval);
/// m in [0, 4].  Vector overload takes the max over components.
double sobolev_norm(const ScalarField& f, int m);
double sobolev_norm(const VectorField& f, int m);

/// C^m sup norm sum_{|alpha| <= m} sup |D^alpha f| (max over components).
double cm_sup_norm(const ScalarField& f, int m);
double cm_sup_norm(const VectorField& f, int m);

/// Norm of the intersection space H^m cap C^m: max of the two norms above.
double hm_cm_norm(const VectorField& f, int m);

/// Spectral derivative d/dx_axis (axis in {0,1,2}).
ScalarField derivative(const ScalarField& f, int axis);

/// Spectral divergence of a vector field.
ScalarField divergence(const VectorField& v);

/// Spectral Laplacian.
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& f);

/// Fitted polynomial decay order of a free-space-like field: least-squares
/// slope of log(shell max |f|) against log(radius) over radial shells of
/// width h whose center radius lies in [r_min, r_max].  Returns -slope,
/// capped at `cap`.  Raises not_free_space when the field is not negligible
/// at the box boundary and insufficient_range with fewer than 4 usable
/// shells in range.
double decay_exponent(const ScalarField& f, double r_min, double r_max,
                      double cap = 12.0);

/// States of one local solve: v(tau_j) at the M+1 nodes tau_j = t0 + j/M of
/// the unit interval [t0, t0+1] (t0 = l-1 for step l).
struct LocalTrajectory {
    GridSpec grid;
    double t0 = 0.0;
    std::vector<VectorField> states;

    int M() const { return static_cast<int>(states.size()) - 1; }
    double node_time(int j) const { return t0 + static_cast<double>(j) / M(); }

    static LocalTrajectory constant(const VectorField& data, int M, double t0);

    LocalTrajectory& operator+=(const LocalTrajectory& o) {
        for (std::size_t j = 0; j < states.size(); ++j) states[j] += o.states[j];
        return *this;
    }
    LocalTrajectory& operator-=(const LocalTrajectory& o) {
        for (std::size_t j = 0; j < states.size(); ++j) states[j] -= o.states[j];
        return *this;
    }
};

inline LocalTrajectory operator-(LocalTrajectory a, const LocalTrajectory& b) { return a -= b; }
inline LocalTrajectory operator+(LocalTrajectory a, const LocalTrajectory& b) { return a += b; }

/// max over trajectory nodes of sobolev_norm(states[j], m).
double c0_traj_norm(const LocalTrajectory& traj, int m);

/// c0_traj_norm plus the max node norm of the discrete time derivative
/// (centered differences inside, one-sided at the endpoints).
double c1_traj_norm(const LocalTrajectory& traj, int m);

}  // namespace leray
