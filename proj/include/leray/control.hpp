#pragma once

#include <cstdint>
#include <vector>

#include "leray/kernels.hpp"

namespace leray {

/// Available dynamically-defined control functions.
enum class ControlKind {
    none,
    simple,                ///< Duhamel of the time-constant source -v_prev/C
    neg_first_increment,   ///< cancel the first Picard increment nodewise
    consumption,           ///< neg_first_increment + Duhamel of -v/C - r/C^2
    foresight,             ///< sign-partitioned source built from the converged end state
};

struct ControlMode {
    ControlKind kind = ControlKind::none;
    double C = 16.0;    ///< control budget constant (> 0)
    double eps = 0.25;  ///< foresight increment bound (> 0)
};

/// Control function carried across steps: r^l(l-1, .) plus the history of
/// its H^m cap C^m norms at each completed step.
struct ControlState {
    VectorField r;
    std::vector<double> norm_history;
};

/// r^0 = h/C for the modes that pre-seed the control, zero otherwise.
ControlState init_control(const VectorField& h, const ControlMode& mode);

/// Per-component sign classification of (v_fore, r_prev) over grid points.
/// Labels: PP/PM/MP/MM by the signs of v then r; Z where v_fore is exactly
/// zero.  Exact zeros of r_prev with nonzero v_fore join the equal-sign set.
struct SignPartition {
    enum Label : std::uint8_t { PP = 0, PM = 1, MP = 2, MM = 3, Z = 4 };
    GridSpec grid;
    std::array<std::vector<std::uint8_t>, 3> label;
    std::array<std::array<std::size_t, 5>, 3> counts{};
};

SignPartition sign_partition(const VectorField& v_fore, const VectorField& r_prev);

/// delta r trajectory of the simple control: Duhamel increments of the
/// time-constant source -v_prev/C at every node of the unit interval.
LocalTrajectory control_simple(const VectorField& v_prev, double C,
                               const HeatParams& p, int M, double t0);

/// delta r(tau_j) = -(first_iterate(tau_j) - data): cancels the k = 1 Picard
/// increment nodewise.
LocalTrajectory control_neg_first_increment(const LocalTrajectory& first_iterate,
                                            const VectorField& data);

/// Consumption control: neg_first_increment plus the Duhamel increments of
/// the time-constant source -v_prev/C - r_prev/C^2.
LocalTrajectory control_consumption(const LocalTrajectory& first_iterate,
                                    const VectorField& v_prev,
                                    const VectorField& r_prev, double C,
                                    const HeatParams& p);

/// Foresight control: builds g per component from the converged end state
/// v_fore and r_prev -- g = v_fore/C + r_prev/C^2 on the one-cell dilation
/// of the equal-sign sets, g = 2*v_fore + r_prev/C^2 elsewhere -- and
/// returns delta r(tau_j) = -Duhamel(g) at every node.
LocalTrajectory control_foresight(const VectorField& v_fore,
                                  const VectorField& r_prev, double C,
                                  const HeatParams& p, int M, double t0);

/// Step-size choice coupled to the foresight increment bound eps (spatial
/// dimension 3): eps / (nu*n*(C+1) + n*(C+1)^2 + n^2*c_kp*(C+1)^2).
double foresight_step_size(double eps, double C, double nu, double c_kp);

/// Add the control increment to every node of the uncontrolled trajectory,
/// advance state.r by the end-node increment and append the new
/// H^m cap C^m norm to the history.  Returns the controlled trajectory.
LocalTrajectory apply_control(const LocalTrajectory& traj,
                              const LocalTrajectory& incr, ControlState& state,
                              int m);

}  // namespace leray
