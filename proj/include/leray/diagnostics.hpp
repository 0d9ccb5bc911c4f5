#pragma once

#include <string>
#include <vector>

#include "leray/scheme.hpp"

namespace leray {

/// Sup norm of the Leray source of v (degree-2 homogeneous in v).
double leray_sup_norm(const VectorField& v, bool dealias = true);

enum class FitKind { uniform, linear, sqrt };

/// Least-squares fit of a per-step series x_l (l = 1, 2, ...) against a
/// bound shape: constant, a + b*l, or a + b*sqrt(l).
struct BoundFit {
    FitKind kind = FitKind::uniform;
    double intercept = 0.0;
    double slope = 0.0;
    double max_residual = 0.0;
};

BoundFit fit_bound(const std::vector<double>& series, FitKind kind);

/// Max over interior trajectory nodes of the L2 norm of
///   d_tau v - rho*nu*Lap v + rho*(v.grad)v - rho*Leray(v)
/// with centered time differences; O(M^-2) for converged trajectories.
double nse_residual(const LocalTrajectory& traj, const SchemeConfig& cfg, double rho);

/// Decay-order inheritance check for the Picard increments delta v^k,
/// k >= 2: every nonzero component must have fitted decay exponent
/// >= m_target - 0.5 over the shell range [r_min, r_max].
struct DecayReport {
    struct Entry {
        int k = 0;
        int component = 0;
        double exponent = 0.0;
    };
    std::vector<Entry> entries;
    bool pass = false;
};

DecayReport decay_inheritance(const std::vector<VectorField>& increments,
                              double m_target, double r_min, double r_max);

/// CSV (RFC 4180) contraction table: one row per measured sub-iteration
/// ratio with its squared-norm counterpart and the <= 1/2 verdict; the k = 1
/// row carries the first-increment norm against the <= 1/4 clause.
std::string contraction_table_csv(const std::vector<StepReport>& reports);

/// True when every ratio row passes (<= 1/2) and every first increment is
/// <= 1/4.
bool contraction_table_pass(const std::vector<StepReport>& reports);

/// Deterministic JSON report for a run: config echo, per-step reports,
/// bound fits, pass flags, checkpoint refs, physical time.  All doubles are
/// printed with 17 significant digits so identical runs produce identical
/// bytes.
std::string run_report_json(const RunLedger& ledger, const SchemeConfig& cfg,
                            const std::string& preset, int n_steps,
                            std::uint64_t seed, double perturb,
                            const std::vector<std::string>& checkpoints = {});

/// Format one double the way the JSON report does (17 significant digits).
std::string json_double(double x);

}  // namespace leray
