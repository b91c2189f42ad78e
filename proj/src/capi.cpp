#include "perikon/perikon.h"

#include <cstring>
#include <new>
#include <string>

#include "core/config.hpp"
#include "core/error.hpp"
#include "homogenization.hpp"
#include "scenario.hpp"

using namespace perikon;

struct perikon_config {
    Config cfg;
};

namespace {

thread_local std::string g_last_error;

perikon_status fail(perikon_status code, const char* what) {
    g_last_error = what;
    return code;
}

template <typename Fn>
perikon_status guarded(Fn fn) {
    try {
        fn();
        return PERIKON_OK;
    } catch (const ConfigError& e) {
        return fail(PERIKON_ERR_CONFIG, e.what());
    } catch (const InstabilityError& e) {
        return fail(PERIKON_ERR_RUNTIME, e.what());
    } catch (const IoError& e) {
        return fail(PERIKON_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(PERIKON_ERR_RUNTIME, "out of memory");
    } catch (const std::exception& e) {
        return fail(PERIKON_ERR_INVALID, e.what());
    }
}

std::string dir_arg(const char* out_dir) { return out_dir ? std::string(out_dir) : std::string(); }

}  // namespace

extern "C" {

const char* perikon_version(void) { return "perikon 1.0.0"; }

const char* perikon_last_error(void) { return g_last_error.c_str(); }

perikon_status perikon_config_load(const char* path, perikon_config** out) {
    if (!path || !out) return fail(PERIKON_ERR_INVALID, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new perikon_config{Config::parse_file(path, &scenario_schema())};
    });
}

perikon_status perikon_config_parse(const char* text, perikon_config** out) {
    if (!text || !out) return fail(PERIKON_ERR_INVALID, "null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new perikon_config{Config::parse_text(text, &scenario_schema())};
    });
}

void perikon_config_free(perikon_config* cfg) { delete cfg; }

perikon_status perikon_config_set(perikon_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return fail(PERIKON_ERR_INVALID, "null argument");
    return guarded([&] { cfg->cfg.set(key, value); });
}

perikon_status perikon_config_get(const perikon_config* cfg, const char* key, char* buf,
                                  size_t buflen) {
    if (!cfg || !key || !buf || buflen == 0) return fail(PERIKON_ERR_INVALID, "null argument");
    return guarded([&] {
        const std::string v = cfg->cfg.get_string(key);
        std::strncpy(buf, v.c_str(), buflen - 1);
        buf[buflen - 1] = '\0';
    });
}

perikon_status perikon_config_write(const perikon_config* cfg, const char* path) {
    if (!cfg || !path) return fail(PERIKON_ERR_INVALID, "null argument");
    return guarded([&] { cfg->cfg.write_file(path); });
}

perikon_status perikon_validate(const perikon_config* cfg) {
    if (!cfg) return fail(PERIKON_ERR_INVALID, "null config");
    return guarded([&] { validate_scenario(cfg->cfg); });
}

perikon_status perikon_run_homogenize(const perikon_config* cfg, const char* out_dir) {
    if (!cfg) return fail(PERIKON_ERR_INVALID, "null config");
    return guarded([&] { run_homogenize(cfg->cfg, dir_arg(out_dir)); });
}

perikon_status perikon_run_wave(const perikon_config* cfg, const char* out_dir,
                                perikon_wave_result* result) {
    if (!cfg) return fail(PERIKON_ERR_INVALID, "null config");
    return guarded([&] {
        const WaveMetrics m = run_wave(cfg->cfg, dir_arg(out_dir));
        if (result) *result = {m.wave_speed, m.modulus_ratio};
    });
}

perikon_status perikon_run_impact(const perikon_config* cfg, const char* out_dir,
                                  perikon_impact_result* result) {
    if (!cfg) return fail(PERIKON_ERR_INVALID, "null config");
    return guarded([&] {
        const ImpactMetrics m = run_impact(cfg->cfg, dir_arg(out_dir));
        if (result)
            *result = {m.residual_velocity, m.peak_acceleration, m.penetration_depth,
                       m.crater_radius,     m.crater_depth,      m.scabbing_radius,
                       m.scabbing_depth};
    });
}

perikon_status perikon_effective_moduli(double youngs, double poisson, double water_bulk,
                                        double f1, double f2, double porosity,
                                        double saturation, double* bulk_out,
                                        double* shear_out) {
    if (!bulk_out || !shear_out) return fail(PERIKON_ERR_INVALID, "null output pointer");
    return guarded([&] {
        const Moduli matrix = moduli_from_youngs(youngs, poisson);
        const Moduli m =
            unsaturated_moduli(matrix, WaterProperties{water_bulk, f1, f2}, porosity, saturation);
        *bulk_out = m.bulk;
        *shear_out = m.shear;
    });
}

}  // extern "C"
