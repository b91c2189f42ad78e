#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"
#include "support.hpp"

using namespace perikon;
using namespace perikon::test;

TEST_CASE("lattice point counts") {
    GeometrySpec unit;
    unit.size_x = unit.size_y = unit.size_z = 1.0;
    unit.dx = 0.5;
    unit.m_ratio = 3.0;
    CHECK(build_lattice(unit).size() == 8);

    // Wave-test slab: 101 x 101 x 6 points.
    GeometrySpec slab;
    slab.size_x = slab.size_y = 1.01;
    slab.size_z = 0.06;
    slab.dx = 0.01;
    slab.m_ratio = 4.0;
    CHECK(build_lattice(slab).size() == 61206);

    // Perforation target at full resolution: about 580k points.
    GeometrySpec target;
    target.size_x = target.size_y = 0.812;
    target.size_z = 0.3;
    target.dx = 0.007;
    target.m_ratio = 4.0;
    const double n = static_cast<double>(build_lattice(target).size());
    CHECK(std::abs(n - 579872.0) / 579872.0 < 0.01);

    GeometrySpec bad = unit;
    bad.m_ratio = 2.0;
    CHECK_THROWS_AS(build_lattice(bad), ConfigError);
}

TEST_CASE("cylinder lattice stays inside the radius") {
    GeometrySpec cyl;
    cyl.shape = GeometrySpec::Shape::Cylinder;
    cyl.size_x = cyl.size_y = 0.2;
    cyl.size_z = 0.1;
    cyl.dx = 0.01;
    cyl.m_ratio = 3.0;
    const Lattice lat = build_lattice(cyl);
    CHECK(lat.size() > 0);
    CHECK(lat.size() <
          build_lattice(GeometrySpec{GeometrySpec::Shape::Box, 0.2, 0.2, 0.1, 0.01, 3.0}).size());
    for (const Vec3& p : lat.ref) CHECK(p.x * p.x + p.y * p.y <= 0.01 * 1.0001);
}

TEST_CASE("neighbor lists match the brute-force oracle") {
    for (auto [nx, ny, nz, m] : {std::tuple{10, 8, 6, 3.0}, {7, 7, 7, 4.0}, {16, 4, 4, 3.5}}) {
        GeometrySpec g;
        g.size_x = nx * 0.01;
        g.size_y = ny * 0.01;
        g.size_z = nz * 0.01;
        g.dx = 0.01;
        g.m_ratio = m;
        const Lattice lat = build_lattice(g);
        REQUIRE(lat.size() <= 5000);
        const BondSystem b = build_bonds(lat, {}, {});
        const auto oracle = brute_force_neighbors(lat.ref, lat.delta);
        for (std::size_t i = 0; i < lat.size(); ++i) {
            REQUIRE(b.end(i) - b.begin(i) ==
                    static_cast<std::int64_t>(oracle[i].size()));
            for (std::int64_t s = b.begin(i); s < b.end(i); ++s)
                CHECK(b.nbr[static_cast<std::size_t>(s)] ==
                      oracle[i][static_cast<std::size_t>(s - b.begin(i))]);
        }
        // Symmetry: j in H_i iff i in H_j.
        for (std::size_t i = 0; i < lat.size(); ++i)
            for (std::int64_t s = b.begin(i); s < b.end(i); ++s)
                CHECK(b.find_slot(b.nbr[static_cast<std::size_t>(s)],
                                  static_cast<std::uint32_t>(i)) >= 0);
    }
}

TEST_CASE("partial volume factor") {
    const double delta = 0.04, dx = 0.01;
    CHECK(partial_volume_factor(0.02, delta, dx) == 1.0);
    CHECK(partial_volume_factor(delta - 0.5 * dx, delta, dx) == 1.0);
    CHECK(partial_volume_factor(delta, delta, dx) == doctest::Approx(0.5));
    CHECK(partial_volume_factor(delta + 0.4 * dx, delta, dx) ==
          doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("weighted volume of a single bond") {
    // Two points one spacing apart, horizon covering only each other.
    Lattice lat;
    lat.dx = 0.01;
    lat.delta = 0.015;
    lat.nx = 2;
    lat.ny = lat.nz = 1;
    lat.origin = {0.0, 0.0, 0.0};
    lat.ref = {{0.005, 0.005, 0.005}, {0.015, 0.005, 0.005}};
    lat.grid = {0, 1};
    const BondSystem b = build_bonds(lat, {}, {});
    REQUIRE(b.count() == 2);
    // m = xi^2 V for the one-term sum (full partial-volume factor).
    const double xi = 0.01, vol = lat.volume();
    SimulationSetup setup;
    setup.lattice = lat;
    for (auto& mat : setup.material) mat = {moduli_from_youngs(32.0e9, 0.2), 2400.0};
    setup.failure.enabled = false;
    for (auto& s : setup.failure.s0) s = {1.0, 1.0};
    Simulation sim(std::move(setup));
    CHECK(sim.weighted_volume()[0] == doctest::Approx(xi * xi * vol).epsilon(1e-14));
    CHECK(sim.weighted_volume()[1] == doctest::Approx(xi * xi * vol).epsilon(1e-14));
}

TEST_CASE("weighted volume matches the horizon quadrature and converges") {
    // Reference ratios m_discrete / (4 pi delta^5 / 5) from an independent
    // enumeration of the lattice quadrature with the linear rim taper. The
    // deficit shrinks as the horizon is refined (about 2.7% at m = 24).
    struct Row {
        int n;
        double m_ratio;
        double quadrature_ratio;
    };
    const Row rows[] = {{7, 3.0, 0.8866027320799363},
                        {9, 4.0, 0.8333386384822421},
                        {13, 6.0, 0.9234534327731481}};
    double err_m4 = 0.0, err_m6 = 0.0;
    for (const Row& row : rows) {
        BlockSpec bs;
        bs.nx = bs.ny = bs.nz = row.n;
        bs.dx = 0.01;
        bs.m_ratio = row.m_ratio;
        Simulation sim = make_block(bs);
        const Lattice& lat = sim.lattice();
        const Vec3 mid{0.0, 0.0, 0.5 * row.n * 0.01};
        std::size_t center = 0;
        double best = 1e9;
        for (std::size_t i = 0; i < lat.size(); ++i) {
            const double d = norm(lat.ref[i] - mid);
            if (d < best) {
                best = d;
                center = i;
            }
        }
        const double analytic = 4.0 * std::numbers::pi * std::pow(lat.delta, 5) / 5.0;
        const double ratio = sim.weighted_volume()[center] / analytic;
        CHECK(ratio == doctest::Approx(row.quadrature_ratio).epsilon(1e-8));
        if (row.m_ratio == 4.0) err_m4 = std::abs(1.0 - ratio);
        if (row.m_ratio == 6.0) err_m6 = std::abs(1.0 - ratio);
    }
    CHECK(err_m6 < err_m4);

    // Fixed m-ratio, doubled spacing: all neighbor volumes scale by 8 and
    // reference lengths by 2, so m scales by 32.
    BlockSpec a;
    a.nx = a.ny = a.nz = 9;
    a.dx = 0.01;
    a.m_ratio = 4.0;
    BlockSpec b = a;
    b.dx = 0.02;
    const double ma = make_block(a).weighted_volume()[0];
    const double mb = make_block(b).weighted_volume()[0];
    CHECK(mb == doctest::Approx(32.0 * ma).epsilon(1e-9));
}

TEST_CASE("dilatation identities") {
    BlockSpec bs;
    bs.nx = bs.ny = 8;
    bs.nz = 6;
    bs.dx = 0.01;
    bs.m_ratio = 4.0;
    Simulation sim = make_block(bs);
    const Lattice& lat = sim.lattice();

    SUBCASE("uniform isotropic extension gives 3 eps everywhere") {
        const double eps = 1e-4;
        for (std::size_t i = 0; i < lat.size(); ++i)
            sim.positions()[i] = lat.ref[i] * (1.0 + eps);
        sim.compute_dilatation();
        for (double th : sim.dilatation())
            CHECK(th == doctest::Approx(3.0 * eps).epsilon(1e-12));
    }

    SUBCASE("rigid translation gives zero") {
        for (std::size_t i = 0; i < lat.size(); ++i)
            sim.positions()[i] = lat.ref[i] + Vec3{0.3, -0.2, 0.9};
        sim.compute_dilatation();
        for (double th : sim.dilatation()) CHECK(std::abs(th) < 1e-12);
    }

    SUBCASE("linearized rotation is second order in the angle") {
        const double a = 1e-3;
        for (std::size_t i = 0; i < lat.size(); ++i) {
            const Vec3& x = lat.ref[i];
            sim.positions()[i] = x + Vec3{-a * x.y, a * x.x, 0.0};
        }
        sim.compute_dilatation();
        for (double th : sim.dilatation()) {
            CHECK(std::abs(th) < 10.0 * a * a);
            CHECK(std::abs(th) > 0.0);  // not identically zero, O(a^2)
        }
    }
}

TEST_CASE("force density identities") {
    BlockSpec bs;
    bs.nx = bs.ny = 8;
    bs.nz = 6;
    bs.dx = 0.01;
    bs.m_ratio = 4.0;
    Simulation sim = make_block(bs);
    const Lattice& lat = sim.lattice();

    SUBCASE("uniform translation leaves zero internal force") {
        for (std::size_t i = 0; i < lat.size(); ++i)
            sim.positions()[i] = lat.ref[i] + Vec3{0.1, 0.05, -0.2};
        sim.refresh_forces();
        // Round-off on the positions is amplified by the stiffness; any
        // physical loading produces force densities above 1e6 N/m^3, so a
        // 1e-2 floor is "zero" here.
        for (const Vec3& f : sim.forces()) CHECK(norm(f) < 1e-2);
    }

    SUBCASE("linear momentum balance under a rough deformation") {
        for (std::size_t i = 0; i < lat.size(); ++i) {
            const Vec3& x = lat.ref[i];
            const double ux = 1e-4 * std::sin(40.0 * x.x) + 2e-5 * x.y;
            const double uy = -7e-5 * std::cos(35.0 * x.z);
            const double uz = 5e-5 * x.x * x.x / lat.dx;
            sim.positions()[i] = x + Vec3{ux, uy, uz};
        }
        sim.refresh_forces();
        Vec3 total{};
        double scale = 0.0;
        for (const Vec3& f : sim.forces()) {
            total += f * lat.volume();
            scale += norm(f) * lat.volume();
        }
        CHECK(norm(total) <= 1e-10 * scale);
    }
}

TEST_CASE("strain energy density") {
    BlockSpec bs;
    bs.nx = bs.ny = bs.nz = 9;
    bs.dx = 0.01;
    bs.m_ratio = 4.0;
    bs.youngs = 32.0e9;
    bs.poisson = 0.2;
    Simulation sim = make_block(bs);
    const Lattice& lat = sim.lattice();
    const double k = 32.0e9 / 1.8, g = 32.0e9 / 2.4;

    std::size_t center = 0;
    double best = 1e9;
    for (std::size_t i = 0; i < lat.size(); ++i) {
        const double d = norm(lat.ref[i] - Vec3{0.0, 0.0, 0.045});
        if (d < best) {
            best = d;
            center = i;
        }
    }

    SUBCASE("zero deformation") {
        sim.compute_dilatation();
        CHECK(sim.strain_energy_density(center) == 0.0);
    }

    SUBCASE("pure dilatation matches 9 k eps^2 / 2 exactly") {
        const double eps = 1e-4;
        for (std::size_t i = 0; i < lat.size(); ++i)
            sim.positions()[i] = lat.ref[i] * (1.0 + eps);
        sim.compute_dilatation();
        const double expected = 4.5 * k * eps * eps;
        for (std::size_t i = 0; i < lat.size(); ++i)
            CHECK(sim.strain_energy_density(i) == doctest::Approx(expected).epsilon(1e-10));
    }

    SUBCASE("simple shear matches G gamma^2 / 2 within 5 percent on a bulk point") {
        const double gamma = 1e-4;
        for (std::size_t i = 0; i < lat.size(); ++i) {
            const Vec3& x = lat.ref[i];
            sim.positions()[i] = x + Vec3{gamma * x.y, 0.0, 0.0};
        }
        sim.compute_dilatation();
        const double expected = 0.5 * g * gamma * gamma;
        CHECK(std::abs(sim.strain_energy_density(center) - expected) / expected < 0.05);
    }
}

TEST_CASE("stable timestep") {
    BlockSpec bs;
    bs.nx = bs.ny = bs.nz = 5;
    bs.dx = 0.007;
    bs.m_ratio = 3.0;
    bs.youngs = 32.0e9;
    bs.poisson = 0.2;
    bs.density = 2400.0;
    Simulation sim = make_block(bs);
    CHECK(sim.stable_timestep(0.5) == doctest::Approx(9.093e-7).epsilon(1e-3));

    BlockSpec coarse = bs;
    coarse.dx = 0.014;
    CHECK(make_block(coarse).stable_timestep(0.5) ==
          doctest::Approx(2.0 * sim.stable_timestep(0.5)).epsilon(1e-12));

    BlockSpec stiff = bs;
    stiff.youngs = 64.0e9;
    CHECK(make_block(stiff).stable_timestep(0.5) < sim.stable_timestep(0.5));
}

TEST_CASE("free body moves linearly under zero force") {
    BlockSpec bs;
    bs.nx = bs.ny = bs.nz = 6;
    bs.dx = 0.01;
    bs.m_ratio = 3.0;
    Simulation sim = make_block(bs);
    for (std::size_t i = 0; i < sim.lattice().size(); ++i)
        sim.velocities()[i] = {1.0, -2.0, 0.5};
    const double dt = sim.stable_timestep(0.5);
    for (int s = 0; s < 100; ++s) sim.step(dt);
    for (std::size_t i = 0; i < sim.lattice().size(); ++i) {
        const Vec3 expected = sim.lattice().ref[i] + Vec3{1.0, -2.0, 0.5} * sim.time();
        CHECK(norm(sim.positions()[i] - expected) < 1e-12);
    }
}

TEST_CASE("elastic pulse conserves energy within 1 percent over 1000 steps") {
    BlockSpec bs;
    bs.nx = 60;
    bs.ny = bs.nz = 5;
    bs.dx = 0.01;
    bs.m_ratio = 3.0;
    Simulation sim = make_block(bs);
    const Lattice& lat = sim.lattice();
    // Smooth velocity pulse near one end of the bar.
    for (std::size_t i = 0; i < lat.size(); ++i) {
        const double x = lat.ref[i].x - lat.origin.x;
        sim.velocities()[i] = {2.0 * std::exp(-x * x / (2.0 * 0.03 * 0.03)), 0.0, 0.0};
    }
    sim.refresh_forces();
    const double e0 = sim.energy().kinetic;
    const double dt = sim.stable_timestep(0.5);
    for (int s = 0; s < 1000; ++s) sim.step(dt);
    const EnergyReport e = sim.energy();
    CHECK(std::abs(e.kinetic + e.strain - e0) / e0 < 0.01);
}

TEST_CASE("trajectories are bit-identical across thread counts") {
    auto run = [](int threads) {
        par::set_threads(threads);
        BlockSpec bs;
        bs.nx = bs.ny = 10;
        bs.nz = 8;
        bs.dx = 0.01;
        bs.m_ratio = 3.0;
        bs.failure_enabled = true;
        // Tight thresholds so the break-commit path is exercised.
        bs.s0_tensile = 2e-4;
        bs.s0_compressive = 4e-4;
        Simulation sim = make_block(bs);
        for (std::size_t i = 0; i < sim.lattice().size(); ++i) {
            const Vec3& x = sim.lattice().ref[i];
            sim.velocities()[i] = {3.0 * std::sin(30.0 * x.y), 2.0 * std::cos(25.0 * x.x),
                                   -3.0 * std::sin(20.0 * x.z)};
        }
        const double dt = sim.stable_timestep(0.5);
        for (int s = 0; s < 60; ++s) sim.step(dt);
        par::set_threads(0);
        return sim.positions();
    };
    const auto p1 = run(1);
    const auto p2 = run(2);
    const auto p3 = run(3);
    REQUIRE(p1.size() == p2.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
        CHECK(p1[i].x == p2[i].x);
        CHECK(p1[i].y == p2[i].y);
        CHECK(p1[i].z == p2[i].z);
        CHECK(p1[i].x == p3[i].x);
    }
}

TEST_CASE("damage accounting") {
    BlockSpec bs;
    bs.nx = bs.ny = bs.nz = 6;
    bs.dx = 0.01;
    bs.m_ratio = 3.0;
    Simulation sim = make_block(bs);
    std::vector<double> raw, rel;

    sim.compute_damage(raw, rel);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        CHECK(raw[i] == 0.0);
        CHECK(rel[i] == 0.0);
    }

    // Break everything: both measures saturate at 1.
    for (auto& s : sim.bonds().state) s = kBondBroken;
    sim.compute_damage(raw, rel);
    for (std::size_t i = 0; i < raw.size(); ++i) {
        CHECK(raw[i] == 1.0);
        CHECK(rel[i] == 1.0);
    }

    // Partial breakage: volume-weighted ratio on an arbitrary point.
    for (auto& s : sim.bonds().state) s = kBondIntact;
    const BondSystem& b = sim.bonds();
    const std::size_t pt = sim.lattice().size() / 2;
    double total_w = 0.0, broken_w = 0.0;
    for (std::int64_t s = b.begin(pt); s < b.end(pt); ++s) {
        const std::size_t t = static_cast<std::size_t>(s);
        total_w += b.volw[t];
        if ((s - b.begin(pt)) % 2 == 0) {
            sim.bonds().state[t] = kBondBroken;
            broken_w += b.volw[t];
        }
    }
    sim.compute_damage(raw, rel);
    CHECK(raw[pt] == doctest::Approx(broken_w / total_w).epsilon(1e-12));
}

TEST_CASE("half of equal-volume bonds broken gives damage one half") {
    // Three collinear points; the middle one carries two identical bonds.
    Lattice lat;
    lat.dx = 0.01;
    lat.delta = 0.015;
    lat.nx = 3;
    lat.ny = lat.nz = 1;
    lat.origin = {0.0, 0.0, 0.0};
    lat.ref = {{0.005, 0.005, 0.005}, {0.015, 0.005, 0.005}, {0.025, 0.005, 0.005}};
    lat.grid = {0, 1, 2};
    SimulationSetup setup;
    setup.lattice = lat;
    for (auto& mat : setup.material) mat = {moduli_from_youngs(32.0e9, 0.2), 2400.0};
    setup.failure.enabled = false;
    for (auto& s : setup.failure.s0) s = {1.0, 1.0};
    Simulation sim(std::move(setup));
    REQUIRE(sim.bonds().end(1) - sim.bonds().begin(1) == 2);
    sim.bonds().state[static_cast<std::size_t>(sim.bonds().begin(1))] = kBondBroken;
    std::vector<double> raw, rel;
    sim.compute_damage(raw, rel);
    CHECK(raw[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rel[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("checkpoint restart continues bit-identically") {
    auto make = [] {
        BlockSpec bs;
        bs.nx = bs.ny = 8;
        bs.nz = 6;
        bs.dx = 0.01;
        bs.m_ratio = 3.0;
        bs.failure_enabled = true;
        bs.s0_tensile = 2e-4;
        bs.s0_compressive = 4e-4;
        Simulation sim = make_block(bs);
        for (std::size_t i = 0; i < sim.lattice().size(); ++i) {
            const Vec3& x = sim.lattice().ref[i];
            sim.velocities()[i] = {4.0 * std::sin(50.0 * x.z), -3.0 * std::cos(40.0 * x.y),
                                   2.0 * std::sin(45.0 * x.x)};
        }
        return sim;
    };
    const std::string path = "checkpoint_test.pkc";

    Simulation a = make();
    const double dt = a.stable_timestep(0.5);
    for (int s = 0; s < 60; ++s) a.step(dt);
    a.save_checkpoint(path);
    for (int s = 0; s < 60; ++s) a.step(dt);

    Simulation b = make();
    b.load_checkpoint(path);
    CHECK(b.step_count() == 60);
    for (int s = 0; s < 60; ++s) b.step(dt);

    REQUIRE(a.positions().size() == b.positions().size());
    for (std::size_t i = 0; i < a.positions().size(); ++i) {
        CHECK(a.positions()[i].x == b.positions()[i].x);
        CHECK(a.positions()[i].y == b.positions()[i].y);
        CHECK(a.positions()[i].z == b.positions()[i].z);
    }
    CHECK(a.broken_bond_count() == b.broken_bond_count());
    std::remove(path.c_str());

    Simulation c = make();
    CHECK_THROWS_AS(c.load_checkpoint("missing_file.pkc"), IoError);
}

TEST_CASE("bond state updates at rate-scaled thresholds") {
    // Uniaxial pull on a small block, failure thresholds tuned so the
    // outcome flips with the loading rate.
    auto run = [](double pull_speed, double s0_tensile) {
        BlockSpec bs;
        bs.nx = bs.ny = 4;
        bs.nz = 8;
        bs.dx = 0.01;
        bs.m_ratio = 3.0;
        bs.failure_enabled = true;
        bs.eos_enabled = false;
        bs.s0_tensile = s0_tensile;
        bs.s0_compressive = 1.0;
        Simulation sim = make_block(bs);
        const double z_mid = 0.04;
        for (std::size_t i = 0; i < sim.lattice().size(); ++i)
            sim.velocities()[i] = {0.0, 0.0,
                                   sim.lattice().ref[i].z > z_mid ? pull_speed : -pull_speed};
        const double dt = sim.stable_timestep(0.5);
        for (int s = 0; s < 120; ++s) sim.step(dt);
        return sim.broken_bond_count();
    };
    // Same displacement history per step count at both speeds; the faster
    // pull carries a higher frozen rate, hence a higher threshold, so with
    // a threshold between the two DIF-scaled values only the slow pull
    // breaks within the same stretch budget.
    CHECK(run(4.0, 2e-4) > 0);
    CHECK(run(4.0, 0.9) == 0);  // threshold far above any reached stretch

    // Intact at zero deformation.
    BlockSpec bs;
    bs.nx = bs.ny = bs.nz = 4;
    bs.dx = 0.01;
    bs.m_ratio = 3.0;
    bs.failure_enabled = true;
    Simulation sim = make_block(bs);
    const double dt = sim.stable_timestep(0.5);
    for (int s = 0; s < 20; ++s) sim.step(dt);
    CHECK(sim.broken_bond_count() == 0);
}

TEST_CASE("bond flags stay symmetric through breakage") {
    BlockSpec bs;
    bs.nx = bs.ny = 8;
    bs.nz = 6;
    bs.dx = 0.01;
    bs.m_ratio = 3.0;
    bs.failure_enabled = true;
    bs.s0_tensile = 2e-4;
    bs.s0_compressive = 4e-4;
    Simulation sim = make_block(bs);
    for (std::size_t i = 0; i < sim.lattice().size(); ++i) {
        const Vec3& x = sim.lattice().ref[i];
        sim.velocities()[i] = {2.0 * std::sin(60.0 * x.y), -2.0 * std::cos(50.0 * x.z),
                               2.0 * std::sin(40.0 * x.x)};
    }
    const double dt = sim.stable_timestep(0.5);
    for (int s = 0; s < 80; ++s) sim.step(dt);
    REQUIRE(sim.broken_bond_count() > 0);
    const BondSystem& b = sim.bonds();
    for (std::size_t i = 0; i < sim.lattice().size(); ++i)
        for (std::int64_t s = b.begin(i); s < b.end(i); ++s) {
            const std::int64_t mirror =
                b.find_slot(b.nbr[static_cast<std::size_t>(s)], static_cast<std::uint32_t>(i));
            REQUIRE(mirror >= 0);
            CHECK(b.state[static_cast<std::size_t>(s)] ==
                  b.state[static_cast<std::size_t>(mirror)]);
        }
}

TEST_CASE("surface load releases exactly at its end time") {
    BlockSpec bs;
    bs.nx = bs.ny = bs.nz = 6;
    bs.dx = 0.01;
    bs.m_ratio = 3.0;
    Simulation sim = make_block(bs);
    SurfaceLoad load;
    load.force_density = {0.0, 0.0, -1.0e8};  // 1 MPa over a 10 mm layer
    const double dt = sim.stable_timestep(0.5);
    load.t_end = 3.5 * dt;
    for (std::uint32_t i = 0; i < sim.lattice().size(); ++i) load.points.push_back(i);
    sim.surface_loads().push_back(load);

    // Uniformly loaded free body: rigid acceleration, no deformation
    // beyond the translation round-off floor.
    for (int s = 0; s < 3; ++s) sim.step(dt);
    CHECK(sim.forces()[0].z == doctest::Approx(-1.0e8).epsilon(1e-9));
    CHECK(sim.velocities()[0].z < 0.0);

    // After release the applied force is exactly zero; only round-off
    // noise remains and the velocity freezes to within it.
    for (int s = 0; s < 3; ++s) sim.step(dt);
    CHECK(sim.time() > load.t_end);
    CHECK(std::abs(sim.forces()[0].z) < 1e-2);
    const double vz_after = sim.velocities()[0].z;
    for (int s = 0; s < 5; ++s) sim.step(dt);
    CHECK(sim.velocities()[0].z == doctest::Approx(vz_after).epsilon(1e-12));
}

TEST_CASE("breakage dissipates rather than creates energy") {
    BlockSpec bs;
    bs.nx = bs.ny = 12;
    bs.nz = 8;
    bs.dx = 0.01;
    bs.m_ratio = 3.0;
    bs.failure_enabled = true;
    bs.s0_tensile = 1.5e-4;
    bs.s0_compressive = 3e-4;
    Simulation sim = make_block(bs);
    // Opposing velocity ramp splits the block and breaks bonds.
    for (std::size_t i = 0; i < sim.lattice().size(); ++i)
        sim.velocities()[i] = {sim.lattice().ref[i].x > 0 ? 2.0 : -2.0, 0.0, 0.0};
    sim.refresh_forces();
    const double e0 = sim.energy().kinetic;
    const double dt = sim.stable_timestep(0.5);
    double max_total = 0.0;
    for (int s = 0; s < 400; ++s) {
        sim.step(dt);
        if (s % 20 == 0) {
            const EnergyReport e = sim.energy();
            max_total = std::max(max_total, e.kinetic + e.strain + e.dissipated);
        }
    }
    CHECK(sim.broken_bond_count() > 0);
    const EnergyReport e = sim.energy();
    // Tracked energy stays within 5% of the injected kinetic energy.
    CHECK(max_total <= 1.05 * e0);
    CHECK(e.kinetic + e.strain <= 1.05 * e0);
    CHECK(e.dissipated > 0.0);
}

TEST_CASE("state finiteness check") {
    BlockSpec bs;
    bs.nx = bs.ny = bs.nz = 4;
    bs.dx = 0.01;
    bs.m_ratio = 3.0;
    Simulation sim = make_block(bs);
    CHECK(sim.state_finite());
    sim.velocities()[7] = {std::nan(""), 0.0, 0.0};
    CHECK_FALSE(sim.state_finite());
}

TEST_CASE("pinned points never move") {
    GeometrySpec g;
    g.size_x = g.size_y = 0.08;
    g.size_z = 0.06;
    g.dx = 0.01;
    g.m_ratio = 3.0;
    SimulationSetup setup;
    setup.lattice = build_lattice(g);
    const Moduli m = moduli_from_youngs(32.0e9, 0.2);
    for (auto& mat : setup.material) mat = {m, 2400.0};
    setup.failure.enabled = false;
    for (auto& s : setup.failure.s0) s = {1.0, 1.0};
    setup.pinned.assign(setup.lattice.size(), 0);
    for (std::size_t i = 0; i < setup.lattice.size(); ++i)
        if (setup.lattice.ref[i].z < 0.01) setup.pinned[i] = 1;
    Simulation sim(std::move(setup));

    for (std::size_t i = 0; i < sim.lattice().size(); ++i)
        sim.velocities()[i] = {0.0, 0.0, -1.0};
    const double dt = sim.stable_timestep(0.5);
    for (int s = 0; s < 50; ++s) sim.step(dt);
    for (std::size_t i = 0; i < sim.lattice().size(); ++i) {
        if (sim.lattice().ref[i].z < 0.01) {
            CHECK(sim.positions()[i].x == sim.lattice().ref[i].x);
            CHECK(sim.positions()[i].z == sim.lattice().ref[i].z);
            CHECK(norm(sim.velocities()[i]) == 0.0);
        }
    }
}
