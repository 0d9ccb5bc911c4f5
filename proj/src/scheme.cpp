#include "leray/scheme.hpp"

#include <algorithm>
#include <cmath>

namespace leray {

namespace {

void check_cfg(const SchemeConfig& cfg) {
    if (cfg.M < 2) fail(ErrorKind::insufficient_nodes, "scheme: M must be >= 2");
    if (cfg.m < 0 || cfg.m > 4)
        fail(ErrorKind::invalid_argument, "scheme: m must be in [0, 4]");
    if (!(cfg.tol > 0.0)) fail(ErrorKind::invalid_argument, "scheme: tol must be > 0");
    if (cfg.max_subiter < 1)
        fail(ErrorKind::invalid_argument, "scheme: max_subiter must be >= 1");
    if (!(cfg.heat.nu > 0.0))
        fail(ErrorKind::invalid_argument, "scheme: nu must be > 0");
}

void check_rho(double rho) {
    if (!(rho > 0.0) || !std::isfinite(rho))
        fail(ErrorKind::invalid_argument, "scheme: rho must be finite and > 0");
}

/// Per-solve cached mode data: heat decay factors for every node offset
/// p/M of the unit interval, plus the transformed data.
struct Workspace {
    GridSpec grid;
    std::vector<double> ksq;
    std::vector<std::vector<double>> decay_pow;
    SpectralVector data_hat;
};

Workspace make_workspace(const VectorField& data, const SchemeConfig& cfg, double rho) {
    Workspace ws;
    ws.grid = data.grid;
    ws.ksq = ksq_table(data.grid);
    const double a = rho * cfg.heat.nu;
    const double dt = 1.0 / cfg.M;
    ws.decay_pow.resize(cfg.M + 1);
    for (int p = 0; p <= cfg.M; ++p) {
        ws.decay_pow[p].resize(ws.ksq.size());
        for (std::size_t i = 0; i < ws.ksq.size(); ++i)
            ws.decay_pow[p][i] = std::exp(-a * p * dt * ws.ksq[i]);
    }
    ws.data_hat = forward(data);
    return ws;
}

/// Node assembly shared by both substeps: for each target node j >= 1,
///   v_hat(tau_j) = decay[j] * data_hat
///                + sum_{j'=0}^{j} w_{j'} decay[j - j'] * S_hat[j']
/// with trapezoid weights over the j+1 source nodes; node 0 is the data.
LocalTrajectory assemble_nodes(const Workspace& ws,
                               const std::vector<SpectralVector>& sources,
                               const VectorField& data, int M, double t0) {
    LocalTrajectory out;
    out.grid = ws.grid;
    out.t0 = t0;
    out.states.reserve(M + 1);
    out.states.push_back(data);  // bit-exact initial node
    const double dt = 1.0 / M;
    const std::size_t nmodes = ws.ksq.size();
    for (int j = 1; j <= M; ++j) {
        SpectralVector acc{SpectralField(ws.grid), SpectralField(ws.grid),
                           SpectralField(ws.grid)};
        for (int c = 0; c < 3; ++c) {
            const auto& decay_j = ws.decay_pow[j];
            for (std::size_t i = 0; i < nmodes; ++i)
                acc[c].coeffs[i] = decay_j[i] * ws.data_hat[c].coeffs[i];
            for (int jp = 0; jp <= j; ++jp) {
                const double w = (jp == 0 || jp == j) ? 0.5 * dt : dt;
                const auto& decay = ws.decay_pow[j - jp];
                const auto& src = sources[jp][c].coeffs;
                for (std::size_t i = 0; i < nmodes; ++i)
                    acc[c].coeffs[i] += w * decay[i] * src[i];
            }
        }
        VectorField node = inverse(acc, ws.grid);
        if (!is_finite(node))
            fail(ErrorKind::blow_up,
                 "scheme: non-finite values at node " + std::to_string(j));
        out.states.push_back(std::move(node));
    }
    return out;
}

LocalTrajectory star_substep_ws(const Workspace& ws, const LocalTrajectory& prev,
                                const VectorField& data, const SchemeConfig& cfg,
                                double rho) {
    std::vector<SpectralVector> sources;
    sources.reserve(prev.states.size());
    for (const auto& s : prev.states)
        sources.push_back(detail::scheme_source_spectral(s, rho, cfg.dealias));
    return assemble_nodes(ws, sources, data, cfg.M, prev.t0);
}

LocalTrajectory nonstar_substep_ws(const Workspace& ws, const LocalTrajectory& prev,
                                   const VectorField& data, const SchemeConfig& cfg,
                                   double rho) {
    // Leray sources are frozen on the previous outer iterate.
    std::vector<SpectralVector> leray_src;
    leray_src.reserve(prev.states.size());
    for (const auto& s : prev.states)
        leray_src.push_back(detail::leray_source_spectral(s, rho, cfg.dealias));

    const double inner_tol = cfg.tol / 10.0;
    const double ref = 1.0 + sobolev_norm(data, cfg.m);
    const int inner_cap = 20;

    LocalTrajectory inner = prev;  // initial guess: previous outer iterate
    for (int p = 1; p <= inner_cap; ++p) {
        std::vector<SpectralVector> sources;
        sources.reserve(prev.states.size());
        for (std::size_t j = 0; j < prev.states.size(); ++j) {
            SpectralVector s = detail::convection_mixed_spectral(
                prev.states[j], inner.states[j], rho, cfg.dealias);
            for (int c = 0; c < 3; ++c)
                for (std::size_t i = 0; i < s[c].coeffs.size(); ++i)
                    s[c].coeffs[i] += leray_src[j][c].coeffs[i];
            sources.push_back(std::move(s));
        }
        LocalTrajectory next = assemble_nodes(ws, sources, data, cfg.M, prev.t0);
        const double delta = c0_traj_norm(next - inner, cfg.m);
        inner = std::move(next);
        if (delta <= inner_tol * ref) return inner;
    }
    fail(ErrorKind::nonstar_inner_divergence,
         "nonstar substep: inner fixed point did not converge in 20 passes");
}

}  // namespace

LocalTrajectory picard_substep(const LocalTrajectory& prev, const VectorField& data,
                               const SchemeConfig& cfg, double rho) {
    check_cfg(cfg);
    check_rho(rho);
    if (!is_finite(data)) fail(ErrorKind::invalid_field, "picard_substep: non-finite data");
    if (prev.M() != cfg.M)
        fail(ErrorKind::invalid_argument, "picard_substep: node count mismatch");
    Workspace ws = make_workspace(data, cfg, rho);
    return star_substep_ws(ws, prev, data, cfg, rho);
}

LocalTrajectory nonstar_substep(const LocalTrajectory& prev, const VectorField& data,
                                const SchemeConfig& cfg, double rho) {
    check_cfg(cfg);
    check_rho(rho);
    if (!is_finite(data)) fail(ErrorKind::invalid_field, "nonstar_substep: non-finite data");
    if (prev.M() != cfg.M)
        fail(ErrorKind::invalid_argument, "nonstar_substep: node count mismatch");
    Workspace ws = make_workspace(data, cfg, rho);
    return nonstar_substep_ws(ws, prev, data, cfg, rho);
}

LocalSolveResult local_solve(const VectorField& data, const SchemeConfig& cfg,
                             double rho, SubstepKind kind, double t0) {
    check_cfg(cfg);
    check_rho(rho);
    if (!is_finite(data)) fail(ErrorKind::invalid_field, "local_solve: non-finite data");

    Workspace ws = make_workspace(data, cfg, rho);
    const double ref = 1.0 + sobolev_norm(data, cfg.m);

    LocalSolveResult res;
    LocalTrajectory prev = LocalTrajectory::constant(data, cfg.M, t0);
    double prev_delta = -1.0;
    bool prev_ratio_gt1 = false;
    for (int k = 1; k <= cfg.max_subiter; ++k) {
        LocalTrajectory next = kind == SubstepKind::star
                                   ? star_substep_ws(ws, prev, data, cfg, rho)
                                   : nonstar_substep_ws(ws, prev, data, cfg, rho);
        LocalTrajectory diff = next - prev;
        const double delta = c0_traj_norm(diff, cfg.m);
        res.increment_norms.push_back(delta);
        res.increments_end.push_back(diff.states.back());
        if (k == 1) res.first_iterate = next;
        if (k >= 2) {
            const double ratio = prev_delta > 0.0 ? delta / prev_delta : 0.0;
            res.ratios.push_back(ratio);
            if (ratio > 1.0 && prev_ratio_gt1)
                fail(ErrorKind::divergence,
                     "local_solve: increments grew twice in a row at k = " +
                         std::to_string(k));
            prev_ratio_gt1 = ratio > 1.0;
        }
        prev_delta = delta;
        prev = std::move(next);
        res.n_subiter = k;
        if (delta <= cfg.tol * ref) {
            res.traj = std::move(prev);
            return res;
        }
    }
    res.traj = std::move(prev);
    res.slow_convergence = true;
    return res;
}

double step_size_theorem(double c_prev, const SchemeConstants& k) {
    if (!(c_prev >= 0.0) || !std::isfinite(c_prev))
        fail(ErrorKind::invalid_argument, "step_size_theorem: c_prev must be >= 0");
    return 1.0 / (k.c_n * (c_prev + 1.0) * k.c_g * k.c_k * k.c_s);
}

double step_size_adaptive(const VectorField& data, const SchemeConfig& cfg,
                          double rho0) {
    check_cfg(cfg);
    check_rho(rho0);
    if (!is_finite(data))
        fail(ErrorKind::invalid_field, "step_size_adaptive: non-finite data");

    const double ref = 1.0 + sobolev_norm(data, cfg.m);
    double rho = rho0;
    for (int halving = 0; halving <= 20; ++halving) {
        Workspace ws = make_workspace(data, cfg, rho);
        LocalTrajectory t0s = LocalTrajectory::constant(data, cfg.M, 0.0);
        LocalTrajectory t1;
        try {
            t1 = star_substep_ws(ws, t0s, data, cfg, rho);
        } catch (const SolverError& e) {
            if (e.kind() == ErrorKind::blow_up) {
                rho *= 0.5;
                continue;
            }
            throw;
        }
        const double d1 = c0_traj_norm(t1 - t0s, cfg.m);
        if (d1 <= cfg.tol * ref) return rho;  // already at the fixed point
        try {
            LocalTrajectory t2 = star_substep_ws(ws, t1, data, cfg, rho);
            const double d2 = c0_traj_norm(t2 - t1, cfg.m);
            if (d2 / d1 <= 0.5) return rho;
        } catch (const SolverError& e) {
            if (e.kind() != ErrorKind::blow_up) throw;
        }
        rho *= 0.5;
    }
    fail(ErrorKind::no_contraction,
         "step_size_adaptive: no contraction after 20 halvings");
}

RunLedger run_global(const VectorField& h, int n_steps, const SchemeConfig& cfg,
                     const StepObserver& observer) {
    check_cfg(cfg);
    if (n_steps < 1) fail(ErrorKind::invalid_argument, "run_global: n_steps must be >= 1");
    if (!is_finite(h)) fail(ErrorKind::invalid_field, "run_global: non-finite data");
    if (!(h.grid == cfg.grid))
        fail(ErrorKind::invalid_argument, "run_global: data grid differs from config");

    const double div_norm0 = sobolev_norm(divergence(h), 0);
    if (div_norm0 > 1e-8 * sobolev_norm(h, 1))
        fail(ErrorKind::invalid_field, "run_global: data is not divergence-free");

    const SchemeConstants constants = compute_constants(cfg.heat, cfg.grid, cfg.c_n);
    ControlState state = init_control(h, cfg.control);

    RunLedger ledger;
    VectorField v = h;
    for (int l = 1; l <= n_steps; ++l) {
        const double c_prev = sobolev_norm(v, cfg.m);
        double rho = 0.0;
        switch (cfg.policy) {
            case StepPolicy::theorem:
                rho = step_size_theorem(c_prev * c_prev, constants);
                if (cfg.control.kind == ControlKind::foresight)
                    rho = std::min(rho, foresight_step_size(cfg.control.eps,
                                                            cfg.control.C,
                                                            cfg.heat.nu, cfg.c_kp));
                break;
            case StepPolicy::fixed:
                rho = cfg.rho_fixed;
                break;
            case StepPolicy::adaptive:
                rho = step_size_adaptive(v, cfg, cfg.rho_fixed);
                break;
        }

        LocalSolveResult res = local_solve(v, cfg, rho, cfg.kind, l - 1.0);
        const HeatParams step_heat{cfg.heat.nu, rho};

        LocalTrajectory incr;
        switch (cfg.control.kind) {
            case ControlKind::none: {
                incr = LocalTrajectory::constant(VectorField(cfg.grid), cfg.M, l - 1.0);
                break;
            }
            case ControlKind::simple:
                incr = control_simple(v, cfg.control.C, step_heat, cfg.M, l - 1.0);
                break;
            case ControlKind::neg_first_increment:
                incr = control_neg_first_increment(res.first_iterate, v);
                break;
            case ControlKind::consumption:
                incr = control_consumption(res.first_iterate, v, state.r,
                                           cfg.control.C, step_heat);
                break;
            case ControlKind::foresight:
                incr = control_foresight(res.traj.states.back(), state.r,
                                         cfg.control.C, step_heat, cfg.M, l - 1.0);
                break;
        }
        LocalTrajectory controlled = apply_control(res.traj, incr, state, cfg.m);
        v = controlled.states.back();

        StepReport rep;
        rep.l = l;
        rep.rho = rho;
        rep.n_subiter = res.n_subiter;
        rep.slow_convergence = res.slow_convergence;
        rep.k1_norm = res.increment_norms.empty() ? 0.0 : res.increment_norms.front();
        rep.ratios = res.ratios;
        rep.hm_norm_end = sobolev_norm(v, cfg.m);
        rep.cm_norm_end = cm_sup_norm(v, cfg.m);
        rep.control_hm_norm = sobolev_norm(state.r, cfg.m);
        rep.control_cm_norm = cm_sup_norm(state.r, cfg.m);
        rep.leray_sup = sup_abs(leray_source(v, cfg.dealias));
        rep.div_norm = sobolev_norm(divergence(v), 0);
        ledger.reports.push_back(std::move(rep));
        ledger.physical_time += rho;

        if (observer) observer(l, v, state.r);
    }
    return ledger;
}

}  // namespace leray
