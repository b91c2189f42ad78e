// Effective bulk and shear moduli of cement mortar as a two-phase medium:
// dry pores, water-filled pores, and partially saturated pores. The pore
// water is mapped onto an equivalent porosity of the mortar matrix, which
// keeps every state on the same two-phase formula.
#pragma once

namespace perikon {

struct Moduli {
    double bulk = 0.0;   // Pa
    double shear = 0.0;  // Pa
};

struct WaterProperties {
    double bulk = 2.2e9;  // Pa, pore water bulk modulus
    double f1 = 0.0;      // viscous shear enhancement, quadratic coefficient
    double f2 = 0.0;      // viscous shear enhancement, linear coefficient
};

// Standard isotropic conversions.
Moduli moduli_from_youngs(double youngs, double poisson);
double youngs_modulus(const Moduli& m);
double poisson_ratio(const Moduli& m);

// Two-phase medium of mortar matrix and empty pores.
//   K* = 4 K_m mu_m (1 - phi) / (4 mu_m + 3 K_m phi),  mu* = mu_m (1 - phi^2)
Moduli dry_porous_moduli(const Moduli& matrix, double porosity);

// Porosity phi1 such that a matrix with that many empty pores has bulk
// modulus k_water; exact inverse of the dry bulk formula:
//   phi1 = 4 mu_m (K_m - K_w) / (K_m (3 K_w + 4 mu_m))
double water_equivalent_porosity(const Moduli& matrix, double k_water);

// Fully saturated mortar: pore water replaced by equivalent matrix porosity
// phi2 = phi * phi1; shear picks up the viscous enhancement factor
//   mu_w* = (1 + f1 phi^2 + f2 phi)(1 - phi^2) mu_m
Moduli saturated_moduli(const Moduli& matrix, const WaterProperties& water, double porosity);

// Partially saturated mortar. Dry and half-weighted unsaturated pores are
// first folded into an equivalent body A,
//   phi1' = (phi - phi w) / (1 - phi w)
// and the remaining water is folded into body A with porosity phi w phi1.
// `consistent_viscous_shear` additionally applies the f1/f2 factor so the
// shear branch matches the saturated formula at w = 1.
Moduli unsaturated_moduli(const Moduli& matrix, const WaterProperties& water, double porosity,
                          double saturation, bool consistent_viscous_shear = false);

}  // namespace perikon
