#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <string>

#include "perikon/perikon.h"

#include "output.hpp"
#include "support.hpp"

namespace {

const char* kImpactText =
    "scenario = impact\n"
    "geometry.size_x = 0.12\n"
    "geometry.size_y = 0.12\n"
    "geometry.size_z = 0.09\n"
    "geometry.dx = 0.015\n"
    "geometry.m_ratio = 3\n"
    "material.porosity = 0.06\n"
    "water.saturation = 1\n"
    "meso.seed = 11\n"
    "projectile.mass = 0.3\n"
    "projectile.velocity = 120\n"
    "projectile.radius = 0.02\n"
    "projectile.length = 0.05\n"
    "solver.duration = 4.5e-4\n"
    "output.log_every_steps = 10\n";

}  // namespace

TEST_CASE("version and error text") {
    CHECK(std::string(perikon_version()).find("perikon") != std::string::npos);
    CHECK(perikon_last_error() != nullptr);
}

TEST_CASE("config lifecycle") {
    perikon_config* cfg = nullptr;
    REQUIRE(perikon_config_parse(kImpactText, &cfg) == PERIKON_OK);
    REQUIRE(cfg != nullptr);

    char buf[64];
    CHECK(perikon_config_get(cfg, "scenario", buf, sizeof(buf)) == PERIKON_OK);
    CHECK(std::string(buf) == "impact");
    CHECK(perikon_config_get(cfg, "material.poisson", buf, sizeof(buf)) == PERIKON_OK);
    CHECK(std::string(buf) == "0.2");  // default materialized

    CHECK(perikon_config_set(cfg, "meso.seed", "42") == PERIKON_OK);
    CHECK(perikon_config_get(cfg, "meso.seed", buf, sizeof(buf)) == PERIKON_OK);
    CHECK(std::string(buf) == "42");

    CHECK(perikon_config_set(cfg, "bogus.key", "1") == PERIKON_ERR_CONFIG);
    CHECK(std::string(perikon_last_error()).find("bogus.key") != std::string::npos);

    const char* path = "capi_config_roundtrip.cfg";
    CHECK(perikon_config_write(cfg, path) == PERIKON_OK);
    perikon_config* reloaded = nullptr;
    CHECK(perikon_config_load(path, &reloaded) == PERIKON_OK);
    CHECK(perikon_config_get(reloaded, "meso.seed", buf, sizeof(buf)) == PERIKON_OK);
    CHECK(std::string(buf) == "42");
    perikon_config_free(reloaded);
    perikon_config_free(cfg);
    std::remove(path);

    CHECK(perikon_config_load("no_such_file.cfg", &cfg) == PERIKON_ERR_IO);
    CHECK(perikon_config_parse("scenario impact\n", &cfg) == PERIKON_ERR_CONFIG);
    CHECK(perikon_config_parse(nullptr, &cfg) == PERIKON_ERR_INVALID);
}

TEST_CASE("validation maps to status codes") {
    perikon_config* cfg = nullptr;
    REQUIRE(perikon_config_parse("scenario = orbit\n", &cfg) == PERIKON_OK);
    CHECK(perikon_validate(cfg) == PERIKON_ERR_CONFIG);
    perikon_config_free(cfg);

    REQUIRE(perikon_config_parse(kImpactText, &cfg) == PERIKON_OK);
    CHECK(perikon_validate(cfg) == PERIKON_OK);
    perikon_config_free(cfg);

    CHECK(perikon_validate(nullptr) == PERIKON_ERR_INVALID);
}

TEST_CASE("effective moduli kernel") {
    double k = 0.0, mu = 0.0;
    REQUIRE(perikon_effective_moduli(15.0e9, 0.2, 2.2e9, 0, 0, 0.0, 1.0, &k, &mu) == PERIKON_OK);
    CHECK(k == doctest::Approx(15.0e9 / 1.8).epsilon(1e-12));
    CHECK(mu == doctest::Approx(15.0e9 / 2.4).epsilon(1e-12));
    CHECK(perikon_effective_moduli(15.0e9, 0.2, 2.2e9, 0, 0, 2.0, 1.0, &k, &mu) ==
          PERIKON_ERR_INVALID);
    CHECK(perikon_effective_moduli(15.0e9, 0.2, 2.2e9, 0, 0, 0.1, 0.5, nullptr, &mu) ==
          PERIKON_ERR_INVALID);
}

TEST_CASE("homogenize run produces files") {
    perikon_config* cfg = nullptr;
    REQUIRE(perikon_config_parse("scenario = homogenize\nhomogenize.phi_steps = 3\n"
                                 "homogenize.w_steps = 2\n",
                                 &cfg) == PERIKON_OK);
    const char* dir = "capi_homog_out";
    CHECK(perikon_run_homogenize(cfg, dir) == PERIKON_OK);
    std::size_t rows = 0;
    CHECK(perikon::test::validate_csv(perikon::join_path(dir, "homogenize.csv"), &rows) == "");
    CHECK(rows == 7);
    perikon_config_free(cfg);
    std::filesystem::remove_all(dir);
}

TEST_CASE("small impact run end to end") {
    perikon_config* cfg = nullptr;
    REQUIRE(perikon_config_parse(kImpactText, &cfg) == PERIKON_OK);
    const char* dir = "capi_impact_out";
    perikon_impact_result result{};
    REQUIRE(perikon_run_impact(cfg, dir, &result) == PERIKON_OK);
    CHECK(result.residual_velocity >= 0.0);
    CHECK(result.residual_velocity < 120.0);  // it hit something
    CHECK(result.peak_acceleration > 0.0);
    CHECK(perikon::test::validate_csv(perikon::join_path(dir, "projectile.csv")) == "");
    CHECK(perikon::test::validate_csv(perikon::join_path(dir, "runlog.csv")) == "");
    CHECK(perikon::test::validate_vtk(perikon::join_path(dir, "frame_final.vtk")) == "");
    CHECK(perikon::test::read_file(perikon::join_path(dir, "summary.txt"))
              .find("residual_velocity") != std::string::npos);
    perikon_config_free(cfg);
    std::filesystem::remove_all(dir);
}
