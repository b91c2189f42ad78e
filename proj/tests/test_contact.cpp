#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "contact.hpp"
#include "support.hpp"

using namespace perikon;
using namespace perikon::test;

TEST_CASE("critical distance") {
    CHECK(critical_distance(0.010, 0.010) == doctest::Approx(0.009));
    CHECK(critical_distance(0.020, 0.010) == doctest::Approx(0.0135));
    // Cross-body pairs have no reference bond.
    CHECK(critical_distance(0.0, 0.010) == doctest::Approx(0.0135));
}

TEST_CASE("short range force magnitude") {
    const ContactParams p = ContactParams::from_target(17.78e9, 0.06, 0.015);
    const double d_pi = p.d_cross;
    CHECK(short_range_force_magnitude(d_pi, d_pi, p) == 0.0);
    CHECK(short_range_force_magnitude(2.0 * d_pi, d_pi, p) == 0.0);
    CHECK(short_range_force_magnitude(0.5 * d_pi, d_pi, p) ==
          doctest::Approx(p.stiffness / p.horizon * 0.5 * d_pi).epsilon(1e-12));
    // Repulsive only, and linear to zero at the cutoff.
    for (int i = 0; i <= 100; ++i) {
        const double r = d_pi * i / 100.0;
        CHECK(short_range_force_magnitude(r, d_pi, p) >= 0.0);
    }
    const double eps = 1e-9 * d_pi;
    CHECK(short_range_force_magnitude(d_pi - eps, d_pi, p) ==
          doctest::Approx(p.stiffness / p.horizon * eps).epsilon(1e-6));
}

TEST_CASE("projectile discretization") {
    ProjectileSpec spec;
    spec.radius = 0.026;
    spec.length = 0.15;
    const RigidBody hemi = build_projectile(spec, 0.007);
    CHECK(hemi.size() > 50);
    CHECK(hemi.mass == doctest::Approx(2.44));
    for (const Vec3& o : hemi.offsets) {
        CHECK(o.x * o.x + o.y * o.y <= spec.radius * spec.radius * 1.0001);
        CHECK(o.z >= 0.0);
        CHECK(o.z <= spec.length);
    }

    spec.nose = ProjectileSpec::Nose::Flat;
    const RigidBody flat = build_projectile(spec, 0.007);
    CHECK(flat.size() > hemi.size());  // flat nose keeps the full cylinder

    spec.nose = ProjectileSpec::Nose::Ogive;
    const RigidBody ogive = build_projectile(spec, 0.007);
    CHECK(ogive.size() > 0);
    CHECK(ogive.size() < flat.size());

    // Sub-grid body falls back to a tip node.
    ProjectileSpec tiny;
    tiny.radius = 1e-4;
    tiny.length = 1e-4;
    CHECK(build_projectile(tiny, 0.01).size() == 1);

    ProjectileSpec bad;
    bad.mass = -1.0;
    CHECK_THROWS(build_projectile(bad, 0.01));
}

TEST_CASE("pair forces are equal and opposite at rest") {
    BlockSpec bs;
    bs.nx = bs.ny = 10;
    bs.nz = 6;
    bs.dx = 0.01;
    bs.m_ratio = 3.0;
    Simulation sim = make_block(bs);
    const double z_top = sim.lattice().origin.z + sim.lattice().nz * sim.lattice().dx;

    ProjectileSpec spec;
    spec.mass = 0.1;
    spec.speed = 0.0;
    spec.radius = 0.02;
    spec.length = 0.05;
    RigidBody body = build_projectile(spec, 0.01);
    const ContactParams params = ContactParams::from_target(17.78e9, sim.lattice().delta, 0.01);
    // First node plane sits half a spacing above the nose reference, and
    // the top point layer half a spacing below the face: overlap them.
    body.nose = {0.0, 0.0, z_top - 0.5 * params.d_cross};
    sim.attach_projectile(std::move(body), params);

    sim.refresh_forces();
    // The lattice is undeformed, so the only forces are contact forces.
    Vec3 target_total{};
    for (const Vec3& f : sim.forces()) target_total += f * sim.lattice().volume();
    const Vec3 proj = sim.projectile()->force;
    CHECK(norm(proj) > 0.0);
    CHECK(norm(target_total + proj) <= 1e-10 * norm(proj));
    // Net push on the projectile points away from the target.
    CHECK(proj.z > 0.0);
}

TEST_CASE("rigid body integration") {
    BlockSpec bs;
    bs.nx = bs.ny = 8;
    bs.nz = 6;
    bs.dx = 0.01;
    bs.m_ratio = 3.0;

    SUBCASE("no contact: uniform motion") {
        Simulation sim = make_block(bs);
        ProjectileSpec spec;
        spec.speed = 10.0;
        spec.radius = 0.02;
        spec.length = 0.04;
        RigidBody body = build_projectile(spec, 0.01);
        body.nose = {0.0, 0.0, 1.0};  // far away
        sim.attach_projectile(std::move(body),
                              ContactParams::from_target(17.78e9, sim.lattice().delta, 0.01));
        const Vec3 v0 = sim.projectile()->vel;
        for (int s = 0; s < 50; ++s) sim.step(1e-6);
        CHECK(sim.projectile()->vel.z == doctest::Approx(v0.z).epsilon(1e-14));
        CHECK(sim.projectile()->nose.z ==
              doctest::Approx(1.0 + v0.z * sim.time()).epsilon(1e-12));
    }

    SUBCASE("free impact conserves momentum") {
        Simulation sim = make_block(bs);  // no pinned points
        ProjectileSpec spec;
        spec.mass = 0.5;
        spec.speed = 40.0;
        spec.radius = 0.015;
        spec.length = 0.03;
        RigidBody body = build_projectile(spec, 0.01);
        const double z_top = sim.lattice().origin.z + sim.lattice().nz * sim.lattice().dx;
        const ContactParams params =
            ContactParams::from_target(17.78e9, sim.lattice().delta, 0.01);
        body.nose = {0.0, 0.0, z_top + 1.05 * params.d_cross};
        sim.attach_projectile(std::move(body), params);

        auto momentum = [&] {
            Vec3 p = sim.projectile()->vel * sim.projectile()->mass;
            for (std::size_t i = 0; i < sim.lattice().size(); ++i)
                p += sim.velocities()[i] * (2400.0 * sim.lattice().volume());
            return p;
        };
        const Vec3 p0 = momentum();
        const double dt = sim.stable_timestep(0.5);
        for (int s = 0; s < 400; ++s) sim.step(dt);
        const Vec3 p1 = momentum();
        CHECK(norm(p1 - p0) <= 1e-8 * norm(p0));
        // Momentum actually transferred into the target.
        CHECK(sim.projectile()->vel.z > -40.0);
    }
}
