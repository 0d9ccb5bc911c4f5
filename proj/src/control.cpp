#include "leray/control.hpp"

#include <cmath>

namespace leray {

namespace {

void check_C(double C) {
    if (!(C > 0.0)) fail(ErrorKind::invalid_argument, "control: C must be > 0");
}

LocalTrajectory traj_from_increments(std::vector<VectorField> nodes, int M, double t0,
                                     const GridSpec& grid) {
    LocalTrajectory out;
    out.grid = grid;
    out.t0 = t0;
    out.states = std::move(nodes);
    (void)M;
    return out;
}

}  // namespace

ControlState init_control(const VectorField& h, const ControlMode& mode) {
    if (!is_finite(h)) fail(ErrorKind::invalid_field, "init_control: non-finite data");
    ControlState st;
    st.r = VectorField(h.grid);
    switch (mode.kind) {
        case ControlKind::simple:
        case ControlKind::consumption:
        case ControlKind::foresight:
            check_C(mode.C);
            st.r = h;
            for (int c = 0; c < 3; ++c)
                for (double& x : st.r[c].v) x /= mode.C;
            break;
        case ControlKind::none:
        case ControlKind::neg_first_increment:
            break;  // starts from zero
    }
    return st;
}

SignPartition sign_partition(const VectorField& v_fore, const VectorField& r_prev) {
    if (!is_finite(v_fore) || !is_finite(r_prev))
        fail(ErrorKind::invalid_field, "sign_partition: non-finite input");
    if (!(v_fore.grid == r_prev.grid))
        fail(ErrorKind::invalid_argument, "sign_partition: grid mismatch");

    SignPartition part;
    part.grid = v_fore.grid;
    const std::size_t np = v_fore.grid.npoints();
    for (int c = 0; c < 3; ++c) {
        part.label[c].resize(np);
        for (std::size_t i = 0; i < np; ++i) {
            const double v = v_fore[c].v[i];
            const double r = r_prev[c].v[i];
            std::uint8_t lab;
            if (v == 0.0) {
                lab = SignPartition::Z;
            } else if (v > 0.0) {
                // exact zeros of r join the matching-sign set of v
                lab = (r >= 0.0) ? SignPartition::PP : SignPartition::PM;
            } else {
                lab = (r <= 0.0) ? SignPartition::MM : SignPartition::MP;
            }
            part.label[c][i] = lab;
            ++part.counts[c][lab];
        }
    }
    return part;
}

LocalTrajectory control_simple(const VectorField& v_prev, double C,
                               const HeatParams& p, int M, double t0) {
    check_C(C);
    if (!is_finite(v_prev)) fail(ErrorKind::invalid_field, "control_simple: non-finite input");
    VectorField S = v_prev;
    for (int c = 0; c < 3; ++c)
        for (double& x : S[c].v) x = -(x / C);
    auto nodes = detail::duhamel_constant_source(S, p, M);
    return traj_from_increments(std::move(nodes), M, t0, v_prev.grid);
}

LocalTrajectory control_neg_first_increment(const LocalTrajectory& first_iterate,
                                            const VectorField& data) {
    if (first_iterate.M() < 2)
        fail(ErrorKind::insufficient_nodes, "control: first iterate needs M >= 2");
    LocalTrajectory out;
    out.grid = first_iterate.grid;
    out.t0 = first_iterate.t0;
    out.states.reserve(first_iterate.states.size());
    for (const auto& s : first_iterate.states) out.states.push_back(data - s);
    return out;
}

LocalTrajectory control_consumption(const LocalTrajectory& first_iterate,
                                    const VectorField& v_prev,
                                    const VectorField& r_prev, double C,
                                    const HeatParams& p) {
    check_C(C);
    if (!is_finite(v_prev) || !is_finite(r_prev))
        fail(ErrorKind::invalid_field, "control_consumption: non-finite input");
    LocalTrajectory out = control_neg_first_increment(first_iterate, v_prev);
    VectorField phi(v_prev.grid);
    for (int c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < phi[c].v.size(); ++i)
            phi[c].v[i] = -v_prev[c].v[i] / C - r_prev[c].v[i] / (C * C);
    auto extra = detail::duhamel_constant_source(phi, p, first_iterate.M());
    for (std::size_t j = 0; j < out.states.size(); ++j) out.states[j] += extra[j];
    return out;
}

LocalTrajectory control_foresight(const VectorField& v_fore,
                                  const VectorField& r_prev, double C,
                                  const HeatParams& p, int M, double t0) {
    check_C(C);
    SignPartition part = sign_partition(v_fore, r_prev);
    const GridSpec grid = v_fore.grid;
    const int n = grid.n;

    VectorField g(grid);
    for (int c = 0; c < 3; ++c) {
        // one-cell (3^3 neighborhood, periodic) dilation of the equal-sign sets
        std::vector<std::uint8_t> equal_sign(grid.npoints(), 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const std::uint8_t lab = part.label[c][grid.index(i, j, k)];
                    if (lab != SignPartition::PP && lab != SignPartition::MM) continue;
                    for (int di = -1; di <= 1; ++di)
                        for (int dj = -1; dj <= 1; ++dj)
                            for (int dk = -1; dk <= 1; ++dk)
                                equal_sign[grid.index((i + di + n) % n, (j + dj + n) % n,
                                                      (k + dk + n) % n)] = 1;
                }
        for (std::size_t i = 0; i < g[c].v.size(); ++i) {
            const double v = v_fore[c].v[i];
            const double r = r_prev[c].v[i];
            g[c].v[i] = equal_sign[i] ? v / C + r / (C * C) : 2.0 * v + r / (C * C);
        }
    }

    auto nodes = detail::duhamel_constant_source(g, p, M);
    LocalTrajectory out = traj_from_increments(std::move(nodes), M, t0, grid);
    for (auto& s : out.states) s *= -1.0;
    return out;
}

double foresight_step_size(double eps, double C, double nu, double c_kp) {
    if (!(eps > 0.0) || !(C > 0.0) || !(nu > 0.0) || !(c_kp > 0.0))
        fail(ErrorKind::invalid_argument, "foresight_step_size: parameters must be > 0");
    const double n = 3.0;
    const double c1 = C + 1.0;
    return eps / (nu * n * c1 + n * c1 * c1 + n * n * c_kp * c1 * c1);
}

LocalTrajectory apply_control(const LocalTrajectory& traj, const LocalTrajectory& incr,
                              ControlState& state, int m) {
    if (traj.states.size() != incr.states.size())
        fail(ErrorKind::invalid_argument, "apply_control: node count mismatch");
    LocalTrajectory out = traj;
    for (std::size_t j = 0; j < out.states.size(); ++j) out.states[j] += incr.states[j];
    state.r += incr.states.back();
    state.norm_history.push_back(hm_cm_norm(state.r, m));
    return out;
}

}  // namespace leray
