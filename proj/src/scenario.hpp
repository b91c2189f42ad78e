// Scenario configuration schema and experiment drivers: the homogenization
// sweep, the wave-speed / effective-modulus test, and the perforation
// runs. Drivers orchestrate the solver sequentially and write VTK frames,
// CSV series, a run log, and a metrics summary into the output directory.
#pragma once

#include <optional>
#include <string>

#include "core/config.hpp"
#include "simulation.hpp"

namespace perikon {

// Full key table (with defaults and documentation strings).
const Schema& scenario_schema();

Config load_scenario_config(const std::string& path);

// Schema plus cross-field checks; throws ConfigError on violation.
void validate_scenario(const Config& cfg);

struct WaveMetrics {
    double wave_speed = 0.0;     // m/s between the two stations
    double modulus_ratio = 0.0;  // (C_w / C_w,ref)^2, reference = zero porosity
};

struct ImpactMetrics {
    double residual_velocity = 0.0;   // m/s at end of run
    double peak_acceleration = 0.0;   // m/s^2
    double penetration_depth = 0.0;   // m, max nose travel past entry face
    double crater_radius = 0.0;
    double crater_depth = 0.0;
    double scabbing_radius = 0.0;
    double scabbing_depth = 0.0;
};

// out_dir empty disables file output.
void run_homogenize(const Config& cfg, const std::string& out_dir);
WaveMetrics run_wave(const Config& cfg, const std::string& out_dir);
// Sweep drivers can pass a precomputed zero-porosity reference speed to
// avoid repeating the reference run.
WaveMetrics run_wave(const Config& cfg, const std::string& out_dir,
                     std::optional<double> reference_speed);
ImpactMetrics run_impact(const Config& cfg, const std::string& out_dir);

// Applies solver.threads / PERIKON_THREADS to the parallel runtime.
void apply_thread_config(const Config& cfg);

}  // namespace perikon
