// perikon command line: homogenize / wave / impact / validate drivers over
// the shared-library C API.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime instability,
// 3 I/O failure.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "perikon/perikon.h"

namespace {

int exit_code(perikon_status st) {
    switch (st) {
        case PERIKON_OK: return 0;
        case PERIKON_ERR_CONFIG: return 1;
        case PERIKON_ERR_RUNTIME: return 2;
        case PERIKON_ERR_IO: return 3;
        case PERIKON_ERR_INVALID: return 1;
    }
    return 1;
}

int report(perikon_status st) {
    if (st != PERIKON_OK) std::fprintf(stderr, "error: %s\n", perikon_last_error());
    return exit_code(st);
}

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    int threads = -1;
    long long seed = -1;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_out) {
    cmd->add_option("--config", args.config_path, "scenario configuration file")->required();
    if (with_out)
        cmd->add_option("--out", args.out_dir, "output directory")->required();
    cmd->add_option("--threads", args.threads, "worker threads (overrides config and environment)");
    cmd->add_option("--seed", args.seed, "random seed (overrides config)");
}

perikon_status load_with_overrides(const CommonArgs& args, perikon_config** cfg) {
    perikon_status st = perikon_config_load(args.config_path.c_str(), cfg);
    if (st != PERIKON_OK) return st;
    if (args.threads >= 0) {
        st = perikon_config_set(*cfg, "solver.threads", std::to_string(args.threads).c_str());
        if (st != PERIKON_OK) return st;
    }
    if (args.seed >= 0) {
        st = perikon_config_set(*cfg, "meso.seed", std::to_string(args.seed).c_str());
        if (st != PERIKON_OK) return st;
    }
    return PERIKON_OK;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"perikon: peridynamic simulation of wet-concrete impact"};
    app.set_version_flag("--version", perikon_version());
    app.require_subcommand(1);

    CommonArgs homog_args, wave_args, impact_args, validate_args;
    CLI::App* homog = app.add_subcommand("homogenize", "effective-moduli sweep over (phi, w)");
    add_common(homog, homog_args, true);
    CLI::App* wave = app.add_subcommand("wave", "wave-speed / effective-modulus experiment");
    add_common(wave, wave_args, true);
    CLI::App* impact = app.add_subcommand("impact", "projectile perforation experiment");
    add_common(impact, impact_args, true);
    CLI::App* validate = app.add_subcommand("validate", "check a configuration and print it");
    add_common(validate, validate_args, false);

    CLI11_PARSE(app, argc, argv);

    perikon_config* cfg = nullptr;
    int rc = 0;
    if (homog->parsed()) {
        rc = report(load_with_overrides(homog_args, &cfg));
        if (rc == 0) rc = report(perikon_run_homogenize(cfg, homog_args.out_dir.c_str()));
        if (rc == 0) std::printf("homogenize sweep written to %s\n", homog_args.out_dir.c_str());
    } else if (wave->parsed()) {
        rc = report(load_with_overrides(wave_args, &cfg));
        perikon_wave_result result{};
        if (rc == 0) rc = report(perikon_run_wave(cfg, wave_args.out_dir.c_str(), &result));
        if (rc == 0)
            std::printf("wave_speed = %g m/s\nmodulus_ratio = %g\n", result.wave_speed,
                        result.modulus_ratio);
    } else if (impact->parsed()) {
        rc = report(load_with_overrides(impact_args, &cfg));
        perikon_impact_result result{};
        if (rc == 0) rc = report(perikon_run_impact(cfg, impact_args.out_dir.c_str(), &result));
        if (rc == 0) {
            std::printf("residual_velocity = %g m/s\n", result.residual_velocity);
            std::printf("peak_acceleration = %g m/s^2\n", result.peak_acceleration);
            std::printf("penetration_depth = %g m\n", result.penetration_depth);
            std::printf("crater_radius = %g m, crater_depth = %g m\n", result.crater_radius,
                        result.crater_depth);
            std::printf("scabbing_radius = %g m, scabbing_depth = %g m\n",
                        result.scabbing_radius, result.scabbing_depth);
        }
    } else if (validate->parsed()) {
        rc = report(load_with_overrides(validate_args, &cfg));
        if (rc == 0) rc = report(perikon_validate(cfg));
        if (rc == 0) {
            char buf[64];
            if (perikon_config_get(cfg, "scenario", buf, sizeof(buf)) == PERIKON_OK)
                std::printf("configuration ok (scenario: %s)\n", buf);
        }
    }
    perikon_config_free(cfg);
    return rc;
}
