// Bond failure criteria: quasi-static critical stretches per bond class,
// saturation-dependent strength reduction, and rate-dependent dynamic
// increase factors (DIF) with a saturation amplification above 1e-5 1/s.
#pragma once

#include <utility>

namespace perikon {

struct DifParams {
    bool enabled = true;
    double compressive_c = 0.03;         // C in DIF_c = 1 + C ln(rate/ref_c)
    double tensile_zeta = 0.0312;        // low-rate tensile exponent
    double ref_rate_tension = 3.0e-6;    // 1/s, power-law anchor
    double ref_rate_compression = 3.0e-5;  // 1/s
    double saturation_c = 0.15;          // C in A = 1 + C w
    double branch_rate = 30.0;           // 1/s, tensile branch switch
    double rate_floor = 1.0e-6;          // 1/s, avoids log singularities

    // Cube-root branch coefficient, fixed by continuity at branch_rate.
    double beta() const;
    void validate() const;  // throws ConfigError
};

struct CriticalStretch {
    double tensile = 0.0;
    double compressive = 0.0;
};

// Quasi-static critical stretches: tensile from fracture energy,
//   s0_ft = sqrt(5 G0 / (9 k delta)),
// compressive from strength, s0_fc = sigma_c / E.
CriticalStretch static_critical_stretches(double bulk_modulus, double horizon, double youngs,
                                          double fracture_energy, double sigma_c);

// Quasi-static wet strength, f^w = (1 - 0.2 w) f for both senses.
std::pair<double, double> wet_static_strength(double f_c, double f_t, double saturation);

// Dry DIFs, clamped to >= 1. Non-positive rates return 1 (quasi-static).
double dif_dry_tension(double rate, const DifParams& p);
double dif_dry_compression(double rate, const DifParams& p);

// Wet-to-dry DIF ratio in tension:
//   g_t = 1 for rate <= 1e-5, else 2 - A^(-lg(rate) - 5), A = 1 + 0.15 w.
double saturation_gain_tension(double rate, double saturation, const DifParams& p);

// Wet DIFs. Tension applies the three-branch form (no gain at or below
// 1e-5 1/s); compression applies the ratio built from the tensile DIFs and
// the dry strength ratio ft/fc.
double dif_wet_tension(double rate, double saturation, const DifParams& p);
double dif_wet_compression(double rate, double saturation, double ft_over_fc,
                           const DifParams& p);

}  // namespace perikon
