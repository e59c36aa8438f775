#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvipat/cli/commands.hpp"
#include "curvipat/cli/config.hpp"
#include "curvipat/error.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kDivergence = 3, kNumerical = 4 };

int exit_code_for(curvipat::ErrorKind kind) {
    using curvipat::ErrorKind;
    switch (kind) {
        case ErrorKind::Divergence: return kDivergence;
        case ErrorKind::NumericalFailure: return kNumerical;
        default: return kUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    namespace cli = curvipat::cli;
    CLI::App app{"curvipat: diffusion-reaction simulations on curvilinear domains"};
    app.require_subcommand(1);

    std::string config_path, model, out, tstar;
    std::vector<std::string> sets;
    std::string seed, m, snapshots;
    bool heatmap = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("--model", model, "bvam-disk, schnakenberg-anomalous-disk, dib-sphere, "
                                          "bulk-surface-ball, bsdib-cylinder");
        sub->add_option("--set", sets, "override, e.g. params.alpha1=0.9 (repeatable)");
        sub->add_option("--seed", seed, "64-bit RNG seed");
        sub->add_option("--out", out, "output directory");
        sub->add_option("--m", m, "number of time steps");
        sub->add_option("--tstar", tstar, "final time");
        sub->add_option("--snapshots", snapshots, "record every this many steps");
        sub->add_flag("--heatmap", heatmap, "write PPM heatmaps with each snapshot");
    };
    CLI::App* run = app.add_subcommand("run", "run one simulation");
    CLI::App* converge = app.add_subcommand("converge", "self-convergence study");
    CLI::App* props = app.add_subcommand("props", "operator property report");
    for (CLI::App* sub : {run, converge, props}) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        cli::Settings settings;
        if (!config_path.empty()) settings = cli::load_settings(config_path);
        if (!model.empty()) settings["model"] = model;
        for (const auto& s : sets) cli::apply_assignment(settings, s);
        if (!seed.empty()) settings["seed"] = seed;
        if (!out.empty()) settings["output_dir"] = out;
        if (!m.empty()) settings["m"] = m;
        if (!tstar.empty()) settings["t_star"] = tstar;
        if (!snapshots.empty()) settings["snapshot_every"] = snapshots;
        if (heatmap) settings["heatmap"] = "true";
        const cli::SimConfig cfg = cli::make_config(settings);

        if (run->parsed()) {
            const cli::RunReport report = cli::cmd_run(cfg, std::cout);
            return report.diverged ? kDivergence : kOk;
        }
        if (converge->parsed()) {
            cli::cmd_converge(cfg, std::cout);
            return kOk;
        }
        cli::cmd_props(cfg, std::cout);
        return kOk;
    } catch (const curvipat::Error& e) {
        std::cerr << "error (" << curvipat::to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
}
