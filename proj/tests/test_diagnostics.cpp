/// Leray sup, bound fits, NSE residuals, decay inheritance, contraction
/// tables, and the JSON report.  References: closed-form least squares,
/// analytic decay profiles, and second-order quadrature behavior.

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <functional>

#include "leray/diagnostics.hpp"
#include "leray/presets.hpp"

using namespace leray;

namespace {

ScalarField sample(const GridSpec& g,
                   const std::function<double(double, double, double)>& f) {
    ScalarField out(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (int k = 0; k < g.n; ++k)
                out.at(i, j, k) = f(g.coord(i), g.coord(j), g.coord(k));
    return out;
}

}  // namespace

TEST_CASE("leray_sup_norm: trivial zeros and exact quadratic homogeneity") {
    const GridSpec g = GridSpec::make(16, M_PI);
    CHECK(leray_sup_norm(VectorField(g)) == 0.0);

    VectorField shear(g);
    shear[0] = sample(g, [](double, double y, double) { return std::sin(y); });
    CHECK(leray_sup_norm(shear) <= 1e-14);

    const VectorField v = preset_field(PresetKind::taylor_green, g, 0.3, 21);
    VectorField v2 = v;
    v2 *= 2.0;  // power-of-two scaling is exact through the whole pipeline
    CHECK(leray_sup_norm(v2) == 4.0 * leray_sup_norm(v));
}

TEST_CASE("leray_sup_norm: Taylor-Green hits the closed-form sup") {
    // The hand-solved source is (sin2x (1/4 + cos2z/8), sin2y (...), ...);
    // its sup 3/8 is attained at grid points (x = pi/4, z = 0).
    const GridSpec g = GridSpec::make(32, M_PI);
    const VectorField v = preset_field(PresetKind::taylor_green, g);
    CHECK(leray_sup_norm(v) == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("fit_bound: uniform, linear, and sqrt shapes") {
    CHECK_THROWS_AS(fit_bound({1.0}, FitKind::uniform), SolverError);
    CHECK_THROWS_AS(fit_bound({1.0, std::nan("")}, FitKind::linear), SolverError);

    const BoundFit c = fit_bound({3.5, 3.5, 3.5, 3.5}, FitKind::uniform);
    CHECK(c.intercept == doctest::Approx(3.5));
    CHECK(c.slope == 0.0);
    CHECK(c.max_residual == 0.0);

    const BoundFit u = fit_bound({1.0, 2.0, 4.0}, FitKind::uniform);
    CHECK(u.intercept == doctest::Approx(7.0 / 3.0).epsilon(1e-14));
    CHECK(u.max_residual == doctest::Approx(5.0 / 3.0).epsilon(1e-14));

    std::vector<double> lin, root;
    for (int l = 1; l <= 12; ++l) {
        lin.push_back(0.75 + 0.3 * l);
        root.push_back(-1.25 + 2.0 * std::sqrt(double(l)));
    }
    const BoundFit lf = fit_bound(lin, FitKind::linear);
    CHECK(lf.intercept == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(lf.slope == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(lf.max_residual <= 1e-12);
    const BoundFit rf = fit_bound(root, FitKind::sqrt);
    CHECK(rf.intercept == doctest::Approx(-1.25).epsilon(1e-10));
    CHECK(rf.slope == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(rf.max_residual <= 1e-12);

    // deterministic: same series, same fit, bitwise
    const BoundFit again = fit_bound(lin, FitKind::linear);
    CHECK(again.intercept == lf.intercept);
    CHECK(again.slope == lf.slope);
    CHECK(again.max_residual == lf.max_residual);
}

TEST_CASE("nse_residual: zero trajectory, validation") {
    SchemeConfig cfg;
    cfg.grid = GridSpec::make(16, M_PI);
    cfg.M = 8;
    const LocalTrajectory zero =
        LocalTrajectory::constant(VectorField(cfg.grid), cfg.M, 0.0);
    CHECK(nse_residual(zero, cfg, 0.1) == 0.0);
    CHECK_THROWS_AS(nse_residual(zero, cfg, 0.0), SolverError);
    LocalTrajectory thin = zero;
    thin.states.resize(2);
    CHECK_THROWS_AS(nse_residual(thin, cfg, 0.1), SolverError);
}

TEST_CASE("nse_residual: second order in M on heat flow and Taylor-Green") {
    SchemeConfig cfg;
    cfg.grid = GridSpec::make(16, M_PI);
    cfg.tol = 1e-11;
    const double rho = 0.02;

    // self-cancelling shear mode: the residual is purely time differencing
    VectorField shear(cfg.grid);
    shear[0] = sample(cfg.grid, [](double, double y, double) { return std::sin(y); });
    double res_shear[2];
    int idx = 0;
    for (int M : {8, 16}) {
        cfg.M = M;
        const LocalSolveResult r = local_solve(shear, cfg, 0.5);
        res_shear[idx++] = nse_residual(r.traj, cfg, 0.5);
    }
    CHECK(res_shear[0] / res_shear[1] == doctest::Approx(4.0).epsilon(0.08));

    const VectorField tg = preset_field(PresetKind::taylor_green, cfg.grid);
    double res_tg[2];
    idx = 0;
    for (int M : {16, 32}) {
        cfg.M = M;
        const LocalSolveResult r = local_solve(tg, cfg, rho);
        res_tg[idx++] = nse_residual(r.traj, cfg, rho);
    }
    const double factor = res_tg[0] / res_tg[1];
    CHECK(factor >= 3.2);
    CHECK(factor <= 4.8);
}

TEST_CASE("decay_inheritance: closed-form positive and negative controls") {
    const GridSpec g = GridSpec::make(64, 32.0);
    CHECK_THROWS_AS(decay_inheritance({}, 2.0, 4.0, 24.0), SolverError);

    // all-zero increments: vacuous pass, nothing to fit
    const DecayReport vac = decay_inheritance({VectorField(g)}, 2.0, 4.0, 24.0);
    CHECK(vac.pass);
    CHECK(vac.entries.empty());

    VectorField quartic(g);
    quartic[0] = sample(g, [](double x, double y, double z) {
        const double r2 = x * x + y * y + z * z;
        return 1.0 / (1.0 + r2 * r2);
    });
    const DecayReport good = decay_inheritance({quartic}, 2.0, 4.0, 24.0);
    CHECK(good.pass);
    REQUIRE(good.entries.size() == 1);
    CHECK(good.entries[0].k == 2);
    CHECK(good.entries[0].component == 0);
    CHECK(good.entries[0].exponent == doctest::Approx(4.0).epsilon(0.06));

    VectorField slow(g);
    slow[0] = sample(g, [](double x, double y, double z) {
        return 1.0 / (1.0 + std::sqrt(x * x + y * y + z * z));
    });
    const DecayReport bad = decay_inheritance({quartic, slow}, 2.0, 4.0, 24.0);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.entries.size() == 2);
    CHECK(bad.entries[1].k == 3);
    CHECK(bad.entries[1].exponent < 1.5);
}

TEST_CASE("json_double: 17-digit round trip and null for non-finite") {
    for (double x : {1.0 / 3.0, 0.1, M_PI, 1e300, -2.5e-17, 0.0}) {
        const std::string s = json_double(x);
        CHECK(std::strtod(s.c_str(), nullptr) == x);
    }
    CHECK(json_double(std::nan("")) == "null");
    CHECK(json_double(HUGE_VAL) == "null");
}

TEST_CASE("contraction_table_csv: rows, thresholds, CRLF") {
    CHECK(contraction_table_csv({}) == "l,k,value,value_squared,pass\r\n");

    StepReport a;
    a.l = 1;
    a.k1_norm = 0.2;
    a.ratios = {0.4, 0.6};
    StepReport b;
    b.l = 2;
    b.k1_norm = 0.3;  // violates the 1/4 clause
    const std::string csv = contraction_table_csv({a, b});

    std::string want = "l,k,value,value_squared,pass\r\n";
    want += "1,1," + json_double(0.2) + "," + json_double(0.2 * 0.2) + ",true\r\n";
    want += "1,2," + json_double(0.4) + "," + json_double(0.4 * 0.4) + ",true\r\n";
    want += "1,3," + json_double(0.6) + "," + json_double(0.6 * 0.6) + ",false\r\n";
    want += "2,1," + json_double(0.3) + "," + json_double(0.3 * 0.3) + ",false\r\n";
    CHECK(csv == want);

    CHECK_FALSE(contraction_table_pass({a, b}));
    a.ratios = {0.4, 0.5};
    CHECK(contraction_table_pass({a}));
    // converged-at-k=1 run: a single always-true row
    StepReport z;
    z.l = 1;
    CHECK(contraction_table_pass({z}));
    CHECK(contraction_table_csv({z}).find("1,1,0,0,true\r\n") != std::string::npos);
}

TEST_CASE("run_report_json: structure, fits, and determinism") {
    SchemeConfig cfg;
    cfg.grid = GridSpec::make(16, M_PI);
    cfg.M = 8;
    const VectorField h = preset_field(PresetKind::taylor_green, cfg.grid);
    const RunLedger ledger = run_global(h, 3, cfg);

    const std::string once =
        run_report_json(ledger, cfg, "taylor_green", 3, 0, 0.0, {"a.bin"});
    const std::string twice =
        run_report_json(ledger, cfg, "taylor_green", 3, 0, 0.0, {"a.bin"});
    CHECK(once == twice);

    for (const char* needle :
         {"\"config\"", "\"steps\"", "\"fits\"", "\"pass_flags\"",
          "\"hm_norm_end\"", "\"leray_sup\"", "\"divergence_free\": true",
          "\"checkpoints\": [\"a.bin\"]", "\"physical_time\"",
          "\"series\": \"control_norm\", \"kind\": \"linear\""}) {
        INFO(needle);
        CHECK(once.find(needle) != std::string::npos);
    }
}
