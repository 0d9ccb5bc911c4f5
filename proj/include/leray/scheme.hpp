#pragma once

#include <functional>
#include <vector>

#include "leray/control.hpp"
#include "leray/kernels.hpp"

namespace leray {

/// How the step-size dilation rho_l is chosen each global step.
enum class StepPolicy { theorem, fixed, adaptive };

/// Which sub-iteration the local solver runs: the star scheme takes all
/// sources from the previous iterate; the non-star scheme transports the new
/// iterate and needs an inner fixed point per sub-iteration.
enum class SubstepKind { star, nonstar };

struct SchemeConfig {
    GridSpec grid;
    HeatParams heat;
    int m = 2;               ///< Sobolev order for norms/stopping (0..4)
    int M = 16;              ///< trajectory nodes per unit interval (>= 2)
    double tol = 1e-9;       ///< relative sub-iteration tolerance
    int max_subiter = 40;
    bool dealias = true;
    double c_n = 16.0;       ///< theorem constant c(n)
    double c_kp = 1.0;       ///< constant in the foresight eps-rho coupling
    StepPolicy policy = StepPolicy::theorem;
    double rho_fixed = 0.01; ///< rho for policy fixed; seed for adaptive
    SubstepKind kind = SubstepKind::star;
    ControlMode control;
};

/// One Picard sub-iteration of the star scheme: every node gets the heat
/// propagation of `data` plus the trapezoid Duhamel integral of the sources
/// rho*(convection + leray) evaluated on the previous iterate.
LocalTrajectory picard_substep(const LocalTrajectory& prev, const VectorField& data,
                               const SchemeConfig& cfg, double rho);

/// Non-star sub-iteration: the convection transports the *new* iterate, so
/// each sub-iteration solves its linear advection-diffusion problem by an
/// inner fixed point (tolerance tol/10, at most 20 passes).
LocalTrajectory nonstar_substep(const LocalTrajectory& prev, const VectorField& data,
                                const SchemeConfig& cfg, double rho);

struct LocalSolveResult {
    LocalTrajectory traj;           ///< converged trajectory
    LocalTrajectory first_iterate;  ///< k = 1 trajectory (control input)
    std::vector<double> increment_norms;  ///< C0 H^m norm of delta v^k, k >= 1
    std::vector<double> ratios;           ///< increment ratios, k >= 2
    std::vector<VectorField> increments_end;  ///< delta v^k at tau = l, k >= 1
    int n_subiter = 0;
    bool slow_convergence = false;
};

/// Run sub-iterations from the constant-in-tau start until the increment
/// norm falls below tol*(1 + |data|_{H^m}).  Raises divergence when the
/// ratio exceeds 1 twice in a row, blow_up on non-finite values.
LocalSolveResult local_solve(const VectorField& data, const SchemeConfig& cfg,
                             double rho, SubstepKind kind = SubstepKind::star,
                             double t0 = 0.0);

/// Theorem step size 1/(c_n * (c_prev + 1) * C_G * C_K * C_s), where c_prev
/// bounds the *squared* H^m norm of the data.
double step_size_theorem(double c_prev, const SchemeConstants& k);

/// Halve rho0 (at most 20 times) until the first measured Picard ratio is
/// <= 1/2; raises no_contraction if that never happens.
double step_size_adaptive(const VectorField& data, const SchemeConfig& cfg,
                          double rho0);

struct StepReport {
    int l = 0;
    double rho = 0.0;
    int n_subiter = 0;
    bool slow_convergence = false;
    double k1_norm = 0.0;             ///< C0 H^m norm of the k = 1 increment
    std::vector<double> ratios;       ///< k >= 2
    double hm_norm_end = 0.0;         ///< |v^r(l, .)|_{H^m}
    double cm_norm_end = 0.0;         ///< |v^r(l, .)|_{C^m}
    double control_hm_norm = 0.0;     ///< |r^l(l, .)|_{H^m}
    double control_cm_norm = 0.0;     ///< |r^l(l, .)|_{C^m}
    double leray_sup = 0.0;           ///< sup of the Leray source at tau = l
    double div_norm = 0.0;            ///< L2 norm of div v^r(l, .)
};

struct RunLedger {
    std::vector<StepReport> reports;
    double physical_time = 0.0;  ///< sum of the rho_l
};

/// Observer invoked after each completed step with (l, v^r(l,.), r^l(l,.)).
using StepObserver =
    std::function<void(int, const VectorField&, const VectorField&)>;

/// Global time-stepping loop: per step recompute rho_l from the policy,
/// solve locally from the controlled data, add the control increment, and
/// report.  Data must be (numerically) divergence-free.
RunLedger run_global(const VectorField& h, int n_steps, const SchemeConfig& cfg,
                     const StepObserver& observer = {});

}  // namespace leray
