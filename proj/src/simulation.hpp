// Ordinary state-based peridynamic system and explicit time integration.
//
// Per step (velocity Verlet): half-kick, drift, force recompute
// (dilatation + pressure, bond force states, contact, surface loads),
// half-kick, then a deterministic bond-break commit. Force evaluation is
// parallel over points against the current position snapshot with each
// point's bond sum accumulated in fixed bond order, so trajectories are
// bit-identical for any thread count.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "constitutive.hpp"
#include "contact.hpp"
#include "core/vec3.hpp"
#include "failure.hpp"
#include "homogenization.hpp"
#include "lattice.hpp"
#include "mesostructure.hpp"

namespace perikon {

enum class Influence : std::uint8_t { Constant, Inverse };

struct PhaseMaterial {
    Moduli moduli;          // operative (possibly wet-adjusted) point moduli
    double density = 2400.0;
};

struct FailureModel {
    bool enabled = true;
    // Wet-adjusted quasi-static critical stretches per BondKind.
    std::array<CriticalStretch, kBondKindCount> s0{};
    double ft_over_fc = 0.1;
    double saturation = 0.0;
    DifParams dif;
};

struct SurfaceLoad {
    std::vector<std::uint32_t> points;
    Vec3 force_density;  // N/m^3 applied while t < t_end
    double t_end = 0.0;
};

struct SimulationSetup {
    Lattice lattice;
    std::vector<Phase> phases;       // empty -> all points Mortar
    std::vector<std::uint8_t> pore;  // empty -> no pre-broken bonds
    std::array<PhaseMaterial, 3> material{};
    FailureModel failure;
    EosParams eos;
    double eos_porosity = 0.0;    // phi entering the Biot coefficient
    double eos_saturation = 0.0;  // w scaling the water pressure term
    Influence influence = Influence::Constant;
    bool surface_correction = false;
    std::vector<std::uint8_t> pinned;  // empty -> nothing pinned
};

struct EnergyReport {
    double kinetic = 0.0;
    double strain = 0.0;
    double dissipated = 0.0;
    double external_work = 0.0;
};

class Simulation {
public:
    explicit Simulation(SimulationSetup setup);

    // --- state ---
    const Lattice& lattice() const { return lat_; }
    const BondSystem& bonds() const { return bonds_; }
    BondSystem& bonds() { return bonds_; }
    std::vector<Vec3>& positions() { return pos_; }
    const std::vector<Vec3>& positions() const { return pos_; }
    std::vector<Vec3>& velocities() { return vel_; }
    const std::vector<Vec3>& velocities() const { return vel_; }
    const std::vector<Vec3>& forces() const { return force_; }
    const std::vector<double>& dilatation() const { return theta_; }
    const std::vector<double>& pressure() const { return pressure_; }
    const std::vector<double>& weighted_volume() const { return m_; }
    const std::vector<Phase>& phases() const { return phase_; }
    double time() const { return time_; }
    std::int64_t step_count() const { return step_; }
    std::int64_t broken_bond_count() const { return broken_; }
    std::int64_t tension_break_count() const { return tension_breaks_; }
    std::int64_t compression_break_count() const { return compression_breaks_; }
    // Mean log10 stretch rate over committed breaks, by sense.
    double mean_break_rate_log10(bool tension) const;
    std::int64_t clamp_event_count() const;

    std::optional<RigidBody>& projectile() { return projectile_; }
    void attach_projectile(RigidBody body, ContactParams params);

    // Short-range repulsion among target points (anti-interpenetration of
    // failed material). d_pi = min(0.9 xi, 1.35 dx) for pairs with a
    // reference bond, 1.35 dx otherwise; intact pairs feel it only beyond
    // 10% bond compression.
    void enable_self_contact(ContactParams params);

    std::vector<SurfaceLoad>& surface_loads() { return loads_; }

    // --- setup-scale operations (also used directly by tests) ---
    double stable_timestep(double safety) const;
    void refresh_forces();  // dilatation + pressure + force density + contact + loads
    void compute_dilatation();

    // Strain energy density of one point (quadratic form over its bonds).
    double strain_energy_density(std::size_t i) const;

    // --- time integration ---
    void step(double dt);
    bool state_finite() const;

    // Volume-weighted damage; raw counts pre-broken bonds as broken,
    // relative measures load-induced breakage against the post-pre-break
    // baseline.
    void compute_damage(std::vector<double>& raw, std::vector<double>& rel) const;

    EnergyReport energy() const;

    // --- checkpointing ---
    void save_checkpoint(const std::string& path) const;
    // Restores dynamic state (positions, velocities, bond states,
    // projectile, tallies); the system must have been built from the same
    // setup.
    void load_checkpoint(const std::string& path);

private:
    template <bool kInverse>
    void pass_dilatation();
    template <bool kInverse>
    void pass_force();
    void apply_contact();
    void apply_self_contact();
    void apply_loads();
    void half_kick(double half_dt);
    void commit_breaks();
    void compute_weighted_volume();
    void apply_surface_correction();

    Lattice lat_;
    BondSystem bonds_;
    std::vector<Phase> phase_;
    std::vector<std::uint8_t> pinned_;

    // Per point.
    std::vector<Vec3> pos_, vel_, force_;
    std::vector<double> rho_, bulk_, shear_;
    std::vector<double> m_, inv_m_, alpha_;
    std::vector<double> theta_, pressure_;
    std::vector<std::uint8_t> clamp_flag_;
    std::vector<double> intact_weight0_;  // post-pre-break intact volume weight

    struct ForcePoint {
        double c_iso, alpha, theta, pressure;
    };
    std::vector<ForcePoint> fp_;

    FailureModel failure_;
    EosParams eos_;
    double eos_porosity_ = 0.0, eos_saturation_ = 0.0;
    Influence influence_ = Influence::Constant;

    std::optional<RigidBody> projectile_;
    ContactParams contact_{};
    bool self_contact_ = false;
    ContactParams self_contact_params_{};
    std::vector<SurfaceLoad> loads_;

    // Break candidates gathered during the force pass, committed at step
    // end; chunk-indexed so collection is order-deterministic.
    struct BreakCandidate {
        std::int64_t slot;
        double energy;
        float log10_rate;
        std::uint8_t tension;
    };
    std::vector<std::vector<BreakCandidate>> candidates_;

    double time_ = 0.0;
    std::int64_t step_ = 0;
    std::int64_t broken_ = 0;
    std::int64_t tension_breaks_ = 0;
    std::int64_t compression_breaks_ = 0;
    double rate_log_sum_t_ = 0.0;
    double rate_log_sum_c_ = 0.0;
    double dissipated_ = 0.0;
    double external_work_ = 0.0;
    bool forces_ready_ = false;
};

}  // namespace perikon
