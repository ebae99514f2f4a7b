#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kortmix/commands.hpp"
#include "kortmix/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"entropy-consistent constitutive audit and 1-D solver for a "
                 "binary Korteweg-type fluid mixture"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::string out_dir;
    bool dump_samples = false;
    std::vector<std::string> mutations;

    app.add_option("--config", config_path, "run configuration file")
        ->envname("KORTMIX_CONFIG");
    app.add_option("--seed", seed, "override the audit sampling seed");
    app.add_option("--samples", samples, "override the audit sample count");
    app.add_option("--out", out_dir, "output directory for reports and snapshots");
    app.add_flag("--dump-samples", dump_samples,
                 "write one record per audited jet");
    app.add_option("--mutate", mutations,
                   "tamper a material parameter or stress coefficient "
                   "(KEY=VALUE, repeatable)");

    CLI::App* cmd_check =
        app.add_subcommand("check-params", "parameter admissibility report");
    CLI::App* cmd_aud =
        app.add_subcommand("audit", "entropy-production identity audit");
    CLI::App* cmd_sim =
        app.add_subcommand("simulate", "periodic 1-D transient run");
    cmd_check->fallthrough();
    cmd_aud->fallthrough();
    cmd_sim->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kortmix::kExitConfigError;
    }

    try {
        kortmix::RunConfig cfg;
        if (!config_path.empty())
            cfg = kortmix::parse_config_file(config_path);
        if (app.count("--seed")) cfg.audit.seed = seed;
        if (app.count("--samples"))
            cfg.audit.n_samples = static_cast<std::size_t>(samples);
        if (app.count("--out")) cfg.output.dir = out_dir;
        if (dump_samples) cfg.output.dump_samples = true;
        for (const auto& spec : mutations) kortmix::apply_mutation(cfg, spec);
        kortmix::finalize_config(cfg);

        if (cmd_check->parsed()) return kortmix::cmd_check_params(cfg, std::cout);
        if (cmd_aud->parsed()) return kortmix::cmd_audit(cfg, std::cout);
        if (cmd_sim->parsed()) return kortmix::cmd_simulate(cfg, std::cout);
        return kortmix::kExitConfigError;
    } catch (const kortmix::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kortmix::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kortmix::kExitConfigError;
    }
}
