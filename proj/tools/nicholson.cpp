// nicholson: certify, construct and iterate monotone heteroclinic profiles of the
// harvested Nicholson blowflies equation.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nicholson/commands.hpp"
#include "nicholson/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Monotone heteroclinic profiles of the delayed Nicholson equation with harvesting"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::vector<std::string> sets;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--out", out_dir, "output directory (overrides 'outputs')");
    app.add_option("--set", sets, "individual key=value override, repeatable");

    auto* check = app.add_subcommand("check", "certify the hypotheses, exit 0 iff all pass");
    auto* bounds = app.add_subcommand("bounds", "write upper/lower solutions and their residuals");
    auto* iter = app.add_subcommand("iterate", "run the monotone iteration from the upper solution");
    auto* verify = app.add_subcommand("verify", "check a profile against the delay equation");
    std::string profile_path;
    bool run_pipeline = false;
    verify->add_option("--profile", profile_path, "profile CSV (default <out>/final.csv)");
    verify->add_flag("--run", run_pipeline, "run the iteration instead of loading a profile");

    // Options are accepted before or after the subcommand name.
    for (auto* sub : {check, bounds, iter, verify}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : nicholson::kExitInput;
    }

    nicholson::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = nicholson::load_config(config_path);
        for (const auto& s : sets) nicholson::apply_override(cfg, s);
        if (!out_dir.empty()) cfg.outputs = out_dir;
        nicholson::validate(cfg);
    } catch (const nicholson::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return nicholson::kExitInput;
    }

    if (check->parsed()) return nicholson::cmd_check(cfg, std::cout, std::cerr);
    if (bounds->parsed()) return nicholson::cmd_bounds(cfg, std::cout, std::cerr);
    if (iter->parsed()) return nicholson::cmd_iterate(cfg, std::cout, std::cerr);
    nicholson::VerifyOptions vopt;
    if (!profile_path.empty()) vopt.profile = profile_path;
    vopt.run_pipeline = run_pipeline;
    return nicholson::cmd_verify(cfg, vopt, std::cout, std::cerr);
}
