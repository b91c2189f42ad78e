// Short-range repulsive contact between a rigid projectile and target
// points. The projectile is a translating rigid body: its nodes share one
// velocity and rotation is suppressed.
#pragma once

#include <cstdint>
#include <vector>

#include "core/vec3.hpp"

namespace perikon {

struct ProjectileSpec {
    enum class Nose { Hemispherical, Ogive, Flat };
    double mass = 2.44;       // kg
    double speed = 333.0;     // m/s, along -z
    double radius = 0.026;    // m
    double length = 0.15;     // m, total including nose
    Nose nose = Nose::Hemispherical;
    double ogive_crh = 3.0;   // caliber-radius-head for ogive noses

    void validate() const;
};

struct RigidBody {
    std::vector<Vec3> offsets;  // node positions relative to the nose tip
    double mass = 0.0;          // kg
    Vec3 nose;                  // current nose tip position
    Vec3 vel;
    Vec3 force;                 // net contact force, N

    std::size_t size() const { return offsets.size(); }
    Vec3 node(std::size_t p) const { return nose + offsets[p]; }
    Vec3 centroid() const;
};

// Discretizes the projectile solid on spacing dx with the nose tip at the
// local origin pointing along -z; the configured mass is used directly.
RigidBody build_projectile(const ProjectileSpec& spec, double dx);

struct ContactParams {
    double stiffness = 0.0;  // c_sh = 15 c, c = 18 K / (pi delta^4)
    double horizon = 0.0;    // delta of the target discretization
    double d_cross = 0.0;    // critical distance for cross-body pairs, 1.35 dx

    static ContactParams from_target(double bulk_modulus, double delta, double dx);
};

// Critical distance for a pair with reference distance `ref_distance`;
// pairs without a reference bond use the grid term only.
double critical_distance(double ref_distance, double dx);

// Repulsive pair force density magnitude; zero at separation >= d_pi.
double short_range_force_magnitude(double separation, double d_pi, const ContactParams& p);

}  // namespace perikon
