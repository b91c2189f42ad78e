#include "contact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "core/error.hpp"

namespace perikon {

void ProjectileSpec::validate() const {
    if (!(mass > 0.0)) throw ConfigError("projectile mass must be positive");
    if (!(radius > 0.0 && length > 0.0))
        throw ConfigError("projectile dimensions must be positive");
    if (speed < 0.0) throw ConfigError("projectile speed must be non-negative");
    if (nose == Nose::Ogive && !(ogive_crh >= 0.5))
        throw ConfigError("ogive caliber-radius-head must be >= 0.5");
}

Vec3 RigidBody::centroid() const {
    Vec3 c;
    for (const Vec3& o : offsets) c += o;
    return nose + (offsets.empty() ? Vec3{} : c * (1.0 / static_cast<double>(offsets.size())));
}

namespace {

// Local body radius at axial distance z from the nose tip (z in [0, length]).
double body_radius_at(const ProjectileSpec& s, double z) {
    double nose_len = 0.0;
    switch (s.nose) {
        case ProjectileSpec::Nose::Flat:
            return s.radius;
        case ProjectileSpec::Nose::Hemispherical:
            nose_len = s.radius;
            if (z >= nose_len) return s.radius;
            return std::sqrt(std::max(0.0, s.radius * s.radius -
                                              (nose_len - z) * (nose_len - z)));
        case ProjectileSpec::Nose::Ogive: {
            const double rho = s.ogive_crh * 2.0 * s.radius;  // ogive arc radius
            nose_len = std::sqrt(rho * rho - (rho - s.radius) * (rho - s.radius));
            if (z >= nose_len) return s.radius;
            const double h = nose_len - z;
            return std::sqrt(std::max(0.0, rho * rho - h * h)) - (rho - s.radius);
        }
    }
    return s.radius;
}

}  // namespace

RigidBody build_projectile(const ProjectileSpec& spec, double dx) {
    spec.validate();
    RigidBody body;
    body.mass = spec.mass;
    body.vel = {0.0, 0.0, -spec.speed};

    // Nodes fill the solid on the target spacing; the tip points along -z,
    // so node offsets run from the tip upward into the body.
    const int nr = std::max(1, static_cast<int>(std::lround(2.0 * spec.radius / dx)));
    const int nz = std::max(1, static_cast<int>(std::lround(spec.length / dx)));
    for (int k = 0; k < nz; ++k) {
        const double z = (k + 0.5) * dx;  // axial distance from the tip
        const double rz = body_radius_at(spec, z);
        for (int j = 0; j < nr; ++j)
            for (int i = 0; i < nr; ++i) {
                const double x = (i + 0.5 - 0.5 * nr) * dx;
                const double y = (j + 0.5 - 0.5 * nr) * dx;
                if (x * x + y * y > rz * rz) continue;
                body.offsets.push_back({x, y, z});
            }
    }
    if (body.offsets.empty())
        // Sub-grid projectile: fall back to a single node at the tip.
        body.offsets.push_back({0.0, 0.0, 0.5 * dx});
    return body;
}

ContactParams ContactParams::from_target(double bulk_modulus, double delta, double dx) {
    if (!(bulk_modulus > 0.0 && delta > 0.0 && dx > 0.0))
        throw ConfigError("contact calibration needs positive modulus, horizon and spacing");
    const double c = 18.0 * bulk_modulus / (std::numbers::pi * delta * delta * delta * delta);
    return {15.0 * c, delta, 1.35 * dx};
}

double critical_distance(double ref_distance, double dx) {
    const double grid_term = 1.35 * dx;
    if (ref_distance <= 0.0) return grid_term;  // no reference bond
    return std::min(0.9 * ref_distance, grid_term);
}

double short_range_force_magnitude(double separation, double d_pi, const ContactParams& p) {
    if (separation >= d_pi) return 0.0;
    return p.stiffness / p.horizon * (d_pi - separation);
}

}  // namespace perikon
