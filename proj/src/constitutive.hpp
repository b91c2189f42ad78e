// Volumetric pressure law for wet concrete under strong compression: a
// polynomial pore-collapse branch for the solid skeleton plus a
// Mie-Gruneisen water branch weighted by the Biot coefficient and the
// saturation. Below the crush strain the response is linear elastic in the
// point's own bulk modulus; the two branches are blended smoothly over a
// narrow band so pressure is continuous through the transition. Tension is
// always linear elastic.
#pragma once

namespace perikon {

struct EosParams {
    bool enabled = true;

    // Solid skeleton polynomial, P = k1 mb + k2 mb^2 + k3 mb^3 with
    // mb = (mu - mu_crush) / (mu_lock - mu_crush).
    double k1 = 15.7e9;
    double k2 = -30.8e9;
    double k3 = 10.8e9;
    double p_crush = 14.0e6;
    double mu_crush = 8.1e-4;
    double p_lock = 3.0e9;
    double mu_lock = 0.16;

    // Pore water Mie-Gruneisen constants.
    double water_rho0 = 1000.0;  // kg/m^3
    double water_c0 = 1480.0;    // m/s
    double s1 = 2.56;
    double s2 = 1.986;
    double s3 = 1.2268;
    double gamma0 = 0.35;
    double alpha = 0.0;
    double e0 = 1.89e6;  // J/m^3 internal energy

    // Fractional width of the elastic-to-crush blending band, relative to
    // mu_crush.
    double blend_width = 0.05;

    void validate() const;  // throws ConfigError
};

// b = 1 - (1 - phi)^3.
double biot_coefficient(double porosity);

// Skeleton polynomial at normalized volumetric strain mu_bar.
double dry_pressure(double mu_bar, const EosParams& eos);

// Water pressure at volumetric compression mu_p (positive in compression).
// If the rational denominator leaves the fit range, mu_p is clamped and
// *clamped is set so the run diagnostics can record the event.
double water_pressure(double mu_p, const EosParams& eos, bool* clamped = nullptr);

// Combined pressure P = P_dry + w * b * P_w at volumetric compression mu_v.
double wet_pressure(double mu_v, double porosity, double saturation, const EosParams& eos,
                    bool* clamped = nullptr);

// Full pressure insertion used by the force state: linear elastic response
// -k*theta outside the crush regime, the wet crush curve beyond it,
// C1-blended over [mu_crush, mu_crush*(1+blend_width)] and anchored to the
// elastic pressure at the crush strain. theta is the dilatation; the
// return value is positive in compression. The fitted skeleton polynomial
// peaks and then falls, so past its peak the curve continues at the
// initial crush slope: compaction never has negative stiffness.
double point_pressure(double theta, double bulk_modulus, double porosity, double saturation,
                      const EosParams& eos, bool* clamped = nullptr);

}  // namespace perikon
