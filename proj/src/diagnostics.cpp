#include "leray/diagnostics.hpp"

#include <cmath>
#include <cstdio>

namespace leray {

double leray_sup_norm(const VectorField& v, bool dealias) {
    return sup_abs(leray_source(v, dealias));
}

BoundFit fit_bound(const std::vector<double>& series, FitKind kind) {
    if (series.size() < 2)
        fail(ErrorKind::invalid_argument, "fit_bound: needs at least 2 points");
    for (double x : series)
        if (!std::isfinite(x)) fail(ErrorKind::invalid_field, "fit_bound: non-finite series");

    const std::size_t N = series.size();
    BoundFit fit;
    fit.kind = kind;

    if (kind == FitKind::uniform) {
        double mean = 0.0;
        for (double x : series) mean += x;
        mean /= N;
        fit.intercept = mean;
        fit.slope = 0.0;
    } else {
        // basis (1, phi(l)) with phi = l or sqrt(l); normal equations
        double s1 = 0.0, sp = 0.0, spp = 0.0, sy = 0.0, spy = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double l = static_cast<double>(i + 1);
            const double p = kind == FitKind::linear ? l : std::sqrt(l);
            s1 += 1.0;
            sp += p;
            spp += p * p;
            sy += series[i];
            spy += p * series[i];
        }
        const double det = s1 * spp - sp * sp;
        fit.intercept = (spp * sy - sp * spy) / det;
        fit.slope = (s1 * spy - sp * sy) / det;
    }

    for (std::size_t i = 0; i < N; ++i) {
        const double l = static_cast<double>(i + 1);
        const double p = kind == FitKind::uniform ? 0.0
                         : kind == FitKind::linear ? l
                                                   : std::sqrt(l);
        fit.max_residual =
            std::max(fit.max_residual, std::fabs(series[i] - (fit.intercept + fit.slope * p)));
    }
    return fit;
}

double nse_residual(const LocalTrajectory& traj, const SchemeConfig& cfg, double rho) {
    const int M = traj.M();
    if (M < 2) fail(ErrorKind::insufficient_nodes, "nse_residual: needs M >= 2");
    if (!(rho > 0.0)) fail(ErrorKind::invalid_argument, "nse_residual: rho must be > 0");

    const double half_over_dt = 0.5 * M;
    double worst = 0.0;
    for (int j = 1; j < M; ++j) {
        const VectorField& v = traj.states[j];
        VectorField res = half_over_dt * (traj.states[j + 1] - traj.states[j - 1]);
        VectorField lap = laplacian(v);
        VectorField conv = convection_source(v, cfg.dealias);
        VectorField ler = leray_source(v, cfg.dealias);
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < res[c].v.size(); ++i)
                res[c].v[i] -= rho * (cfg.heat.nu * lap[c].v[i] + conv[c].v[i] +
                                      ler[c].v[i]);
        worst = std::max(worst, sobolev_norm(res, 0));
    }
    return worst;
}

DecayReport decay_inheritance(const std::vector<VectorField>& increments,
                              double m_target, double r_min, double r_max) {
    if (increments.empty())
        fail(ErrorKind::invalid_argument, "decay_inheritance: no increments given");
    DecayReport rep;
    rep.pass = true;
    int k = 2;  // callers pass the increments from k = 2 on
    for (const auto& inc : increments) {
        for (int c = 0; c < 3; ++c) {
            if (sup_abs(inc[c]) == 0.0) continue;  // inactive component
            DecayReport::Entry e;
            e.k = k;
            e.component = c;
            e.exponent = decay_exponent(inc[c], r_min, r_max);
            if (e.exponent < m_target - 0.5) rep.pass = false;
            rep.entries.push_back(e);
        }
        ++k;
    }
    return rep;
}

std::string json_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string contraction_table_csv(const std::vector<StepReport>& reports) {
    std::string out = "l,k,value,value_squared,pass\r\n";
    for (const auto& rep : reports) {
        // k = 1 row: first-increment norm against the 1/4 clause
        out += std::to_string(rep.l) + ",1," + json_double(rep.k1_norm) + "," +
               json_double(rep.k1_norm * rep.k1_norm) + "," +
               (rep.k1_norm <= 0.25 ? "true" : "false") + "\r\n";
        int k = 2;
        for (double ratio : rep.ratios) {
            out += std::to_string(rep.l) + "," + std::to_string(k) + "," +
                   json_double(ratio) + "," + json_double(ratio * ratio) + "," +
                   (ratio <= 0.5 ? "true" : "false") + "\r\n";
            ++k;
        }
    }
    return out;
}

bool contraction_table_pass(const std::vector<StepReport>& reports) {
    for (const auto& rep : reports) {
        if (rep.k1_norm > 0.25) return false;
        for (double ratio : rep.ratios)
            if (ratio > 0.5) return false;
    }
    return true;
}

namespace {

const char* policy_name(StepPolicy p) {
    switch (p) {
        case StepPolicy::theorem: return "theorem";
        case StepPolicy::fixed: return "fixed";
        case StepPolicy::adaptive: return "adaptive";
    }
    return "?";
}

const char* kind_name(SubstepKind k) {
    return k == SubstepKind::star ? "star" : "nonstar";
}

const char* control_name(ControlKind k) {
    switch (k) {
        case ControlKind::none: return "none";
        case ControlKind::simple: return "simple";
        case ControlKind::neg_first_increment: return "neg_first_increment";
        case ControlKind::consumption: return "consumption";
        case ControlKind::foresight: return "foresight";
    }
    return "?";
}

void append_fit(std::string& out, const char* series, const BoundFit& f, bool last) {
    const char* kind = f.kind == FitKind::uniform ? "uniform"
                       : f.kind == FitKind::linear ? "linear"
                                                   : "sqrt";
    out += std::string("    {\"series\": \"") + series + "\", \"kind\": \"" + kind +
           "\", \"intercept\": " + json_double(f.intercept) +
           ", \"slope\": " + json_double(f.slope) +
           ", \"max_residual\": " + json_double(f.max_residual) + "}";
    out += last ? "\n" : ",\n";
}

}  // namespace

std::string run_report_json(const RunLedger& ledger, const SchemeConfig& cfg,
                            const std::string& preset, int n_steps,
                            std::uint64_t seed, double perturb,
                            const std::vector<std::string>& checkpoints) {
    std::string out = "{\n";
    out += "  \"config\": {\n";
    out += "    \"grid\": {\"n\": " + std::to_string(cfg.grid.n) +
           ", \"half_width\": " + json_double(cfg.grid.half_width) + "},\n";
    out += "    \"nu\": " + json_double(cfg.heat.nu) + ",\n";
    out += "    \"m\": " + std::to_string(cfg.m) + ",\n";
    out += "    \"M\": " + std::to_string(cfg.M) + ",\n";
    out += "    \"tol\": " + json_double(cfg.tol) + ",\n";
    out += "    \"max_subiter\": " + std::to_string(cfg.max_subiter) + ",\n";
    out += std::string("    \"dealias\": ") + (cfg.dealias ? "true" : "false") + ",\n";
    out += "    \"c_n\": " + json_double(cfg.c_n) + ",\n";
    out += "    \"c_kp\": " + json_double(cfg.c_kp) + ",\n";
    out += std::string("    \"policy\": \"") + policy_name(cfg.policy) + "\",\n";
    out += "    \"rho_fixed\": " + json_double(cfg.rho_fixed) + ",\n";
    out += std::string("    \"substep\": \"") + kind_name(cfg.kind) + "\",\n";
    out += std::string("    \"control\": {\"kind\": \"") + control_name(cfg.control.kind) +
           "\", \"C\": " + json_double(cfg.control.C) +
           ", \"eps\": " + json_double(cfg.control.eps) + "},\n";
    out += "    \"preset\": \"" + preset + "\",\n";
    out += "    \"n_steps\": " + std::to_string(n_steps) + ",\n";
    out += "    \"seed\": " + std::to_string(seed) + ",\n";
    out += "    \"perturb\": " + json_double(perturb) + "\n";
    out += "  },\n";

    out += "  \"steps\": [\n";
    for (std::size_t i = 0; i < ledger.reports.size(); ++i) {
        const StepReport& r = ledger.reports[i];
        out += "    {\"l\": " + std::to_string(r.l) + ", \"rho\": " + json_double(r.rho) +
               ", \"n_subiter\": " + std::to_string(r.n_subiter) +
               std::string(", \"slow_convergence\": ") +
               (r.slow_convergence ? "true" : "false") +
               ", \"k1_norm\": " + json_double(r.k1_norm) + ", \"ratios\": [";
        for (std::size_t j = 0; j < r.ratios.size(); ++j) {
            out += json_double(r.ratios[j]);
            if (j + 1 < r.ratios.size()) out += ", ";
        }
        out += "], \"hm_norm_end\": " + json_double(r.hm_norm_end) +
               ", \"cm_norm_end\": " + json_double(r.cm_norm_end) +
               ", \"control_hm_norm\": " + json_double(r.control_hm_norm) +
               ", \"control_cm_norm\": " + json_double(r.control_cm_norm) +
               ", \"leray_sup\": " + json_double(r.leray_sup) +
               ", \"div_norm\": " + json_double(r.div_norm) + "}";
        out += (i + 1 < ledger.reports.size()) ? ",\n" : "\n";
    }
    out += "  ],\n";

    // standard bound fits over the per-step series
    std::vector<double> hm, ctrl, ler;
    for (const auto& r : ledger.reports) {
        hm.push_back(r.hm_norm_end);
        ctrl.push_back(std::max(r.control_hm_norm, r.control_cm_norm));
        ler.push_back(r.leray_sup);
    }
    out += "  \"fits\": [\n";
    if (hm.size() >= 2) {
        append_fit(out, "hm_norm_end", fit_bound(hm, FitKind::uniform), false);
        append_fit(out, "control_norm", fit_bound(ctrl, FitKind::linear), false);
        append_fit(out, "leray_sup", fit_bound(ler, FitKind::linear), true);
    }
    out += "  ],\n";

    bool div_free = true;
    for (const auto& r : ledger.reports)
        if (r.div_norm > 1e-6 * r.hm_norm_end * r.hm_norm_end) div_free = false;
    out += "  \"pass_flags\": {\"contraction\": ";
    out += contraction_table_pass(ledger.reports) ? "true" : "false";
    out += ", \"divergence_free\": ";
    out += div_free ? "true" : "false";
    out += "},\n";
    out += "  \"checkpoints\": [";
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        out += "\"" + checkpoints[i] + "\"";
        if (i + 1 < checkpoints.size()) out += ", ";
    }
    out += "],\n";
    out += "  \"physical_time\": " + json_double(ledger.physical_time) + "\n";
    out += "}\n";
    return out;
}

}  // namespace leray
