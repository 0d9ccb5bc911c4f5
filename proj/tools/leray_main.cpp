/// Command-line front end for the solver library: run the global scheme,
/// print the computed constants, emit contraction tables, compare the two
/// sub-iteration variants, or exercise the checkpoint round trip.

#include <CLI11.hpp>

#include <cstdio>
#include <functional>

#include "leray/cli.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string preset;
    std::string out_dir;
    int steps = -1;
    int n = -1;
    double L = -1.0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "config file (INI sections)");
    cmd->add_option("--set", args.overrides,
                    "override section.key=value (repeatable; wins over the file)");
    cmd->add_option("--preset", args.preset,
                    "taylor_green | abc_flow | gaussian_vortex");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--steps", args.steps, "number of global steps");
    cmd->add_option("--n", args.n, "grid points per axis");
    cmd->add_option("--L", args.L, "box half-width");
}

leray::RunConfig build_config(const CommonArgs& args) {
    leray::RunConfig cfg = args.config_path.empty()
                               ? leray::RunConfig::defaults()
                               : leray::load_config_file(args.config_path);
    for (const auto& ov : args.overrides) leray::apply_override(cfg, ov);
    if (!args.preset.empty()) leray::apply_override(cfg, "run.preset=" + args.preset);
    if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
    if (args.steps >= 0)
        leray::apply_override(cfg, "run.steps=" + std::to_string(args.steps));
    if (args.n > 0) leray::apply_override(cfg, "grid.n=" + std::to_string(args.n));
    if (args.L > 0.0) leray::apply_override(cfg, "grid.L=" + std::to_string(args.L));
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constructive Leray-form time stepping on the periodic box"};
    app.require_subcommand(1);

    CommonArgs run_args, const_args, contr_args, cmp_args, rt_args;
    CLI::App* c_run = app.add_subcommand("run", "global stepping loop with reports");
    add_common(c_run, run_args);
    CLI::App* c_const =
        app.add_subcommand("constants", "print the scheme constants as JSON");
    add_common(c_const, const_args);
    CLI::App* c_contr =
        app.add_subcommand("contraction", "emit the contraction table; exit 0 iff it passes");
    add_common(c_contr, contr_args);
    CLI::App* c_cmp = app.add_subcommand(
        "compare-schemes", "star vs nonstar local limits; exit 0 iff they agree");
    add_common(c_cmp, cmp_args);
    CLI::App* c_rt = app.add_subcommand(
        "roundtrip", "checkpoint write/read round trip; exit 0 iff bit-identical");
    add_common(c_rt, rt_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_run->parsed()) return leray::cmd_run(build_config(run_args));
        if (c_const->parsed()) return leray::cmd_constants(build_config(const_args));
        if (c_contr->parsed()) return leray::cmd_contraction(build_config(contr_args));
        if (c_cmp->parsed()) return leray::cmd_compare_schemes(build_config(cmp_args));
        if (c_rt->parsed()) return leray::cmd_roundtrip(build_config(rt_args));
    } catch (const leray::SolverError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return leray::exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
