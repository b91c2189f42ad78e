#include "homogenization.hpp"

#include <stdexcept>
#include <string>

namespace perikon {

namespace {

void check_porosity(double phi) {
    if (!(phi >= 0.0 && phi <= 1.0))
        throw std::domain_error("porosity must be in [0,1], got " + std::to_string(phi));
}

void check_matrix(const Moduli& m) {
    if (!(m.bulk > 0.0 && m.shear > 0.0))
        throw std::domain_error("matrix moduli must be positive");
}

}  // namespace

Moduli moduli_from_youngs(double youngs, double poisson) {
    if (!(youngs > 0.0) || !(poisson > -1.0 && poisson < 0.5))
        throw std::domain_error("invalid (E, nu) pair");
    return {youngs / (3.0 * (1.0 - 2.0 * poisson)), youngs / (2.0 * (1.0 + poisson))};
}

double youngs_modulus(const Moduli& m) {
    return 9.0 * m.bulk * m.shear / (3.0 * m.bulk + m.shear);
}

double poisson_ratio(const Moduli& m) {
    return (3.0 * m.bulk - 2.0 * m.shear) / (2.0 * (3.0 * m.bulk + m.shear));
}

Moduli dry_porous_moduli(const Moduli& matrix, double porosity) {
    check_matrix(matrix);
    check_porosity(porosity);
    const double km = matrix.bulk, mm = matrix.shear;
    return {4.0 * km * mm * (1.0 - porosity) / (4.0 * mm + 3.0 * km * porosity),
            mm * (1.0 - porosity * porosity)};
}

double water_equivalent_porosity(const Moduli& matrix, double k_water) {
    check_matrix(matrix);
    if (!(k_water > 0.0) || k_water > matrix.bulk)
        throw std::domain_error("water bulk modulus must lie in (0, K_matrix]");
    const double km = matrix.bulk, mm = matrix.shear;
    return 4.0 * mm * (km - k_water) / (km * (3.0 * k_water + 4.0 * mm));
}

Moduli saturated_moduli(const Moduli& matrix, const WaterProperties& water, double porosity) {
    check_porosity(porosity);
    const double phi1 = water_equivalent_porosity(matrix, water.bulk);
    const Moduli base = dry_porous_moduli(matrix, porosity * phi1);
    const double visc = 1.0 + water.f1 * porosity * porosity + water.f2 * porosity;
    return {base.bulk, visc * (1.0 - porosity * porosity) * matrix.shear};
}

Moduli unsaturated_moduli(const Moduli& matrix, const WaterProperties& water, double porosity,
                          double saturation, bool consistent_viscous_shear) {
    check_porosity(porosity);
    if (!(saturation >= 0.0 && saturation <= 1.0))
        throw std::domain_error("saturation must be in [0,1]");

    const double phi_w = porosity * saturation;  // water-filled pore fraction
    const double denom = 1.0 - phi_w;
    if (denom <= 0.0) return {0.0, 0.0};  // fully porous, fully wet: no matrix left
    const double phi1p = (porosity - phi_w) / denom;

    // Body A: matrix plus the dry (and half-counted unsaturated) pores.
    const Moduli body_a = dry_porous_moduli(matrix, phi1p);
    if (!(body_a.bulk > 0.0 && body_a.shear > 0.0)) return {0.0, 0.0};

    // Remaining water folded into body A via the matrix-equivalent porosity.
    const double phi1 = water_equivalent_porosity(matrix, water.bulk);
    const double phi2 = phi_w * phi1;
    const double ka = body_a.bulk, ma = body_a.shear;
    Moduli out;
    out.bulk = 4.0 * ka * ma * (1.0 - phi2) / (4.0 * ma + 3.0 * ka * phi2);
    out.shear = ma * (1.0 - phi_w * phi_w);
    if (consistent_viscous_shear)
        out.shear *= 1.0 + water.f1 * porosity * porosity + water.f2 * porosity;
    return out;
}

}  // namespace perikon
