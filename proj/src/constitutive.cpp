#include "constitutive.hpp"

#include <cmath>

#include "core/error.hpp"

namespace perikon {

void EosParams::validate() const {
    if (!(mu_lock > mu_crush))
        throw ConfigError("EOS requires mu_lock > mu_crush");
    if (!(mu_crush > 0.0))
        throw ConfigError("EOS requires mu_crush > 0");
    if (!(water_rho0 > 0.0 && water_c0 > 0.0))
        throw ConfigError("EOS water reference density and sound speed must be positive");
    if (!(blend_width > 0.0))
        throw ConfigError("EOS blend width must be positive");
}

double biot_coefficient(double porosity) {
    if (porosity < 0.0 || porosity > 1.0)
        throw std::domain_error("porosity must be in [0,1]");
    const double c = 1.0 - porosity;
    return 1.0 - c * c * c;
}

double dry_pressure(double mu_bar, const EosParams& eos) {
    return mu_bar * (eos.k1 + mu_bar * (eos.k2 + mu_bar * eos.k3));
}

namespace {

double mg_denominator(double mu, const EosParams& eos) {
    const double m1 = mu + 1.0;
    return 1.0 - (eos.s1 - 1.0) * mu - eos.s2 * mu * mu / m1 - eos.s3 * mu * mu * mu / (m1 * m1);
}

double mg_pressure(double mu, const EosParams& eos) {
    const double num = eos.water_rho0 * eos.water_c0 * eos.water_c0 * mu *
                       (1.0 + (1.0 - 0.5 * eos.gamma0) * mu - 0.5 * eos.alpha * mu * mu);
    const double den = mg_denominator(mu, eos);
    return num / (den * den) + (eos.gamma0 + eos.alpha * mu) * eos.e0;
}

constexpr double kDenomFloor = 0.05;

}  // namespace

double water_pressure(double mu_p, const EosParams& eos, bool* clamped) {
    // Expansion is not modeled; at and below zero compression only the
    // thermal term remains.
    if (mu_p <= 0.0) return mg_pressure(0.0, eos);
    if (mg_denominator(mu_p, eos) > kDenomFloor) return mg_pressure(mu_p, eos);

    // Beyond the Hugoniot fit range: clamp to the largest compression the
    // fit supports and flag the event.
    if (clamped) *clamped = true;
    double lo = 0.0, hi = mu_p;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (mg_denominator(mid, eos) > kDenomFloor ? lo : hi) = mid;
    }
    return mg_pressure(lo, eos);
}

double wet_pressure(double mu_v, double porosity, double saturation, const EosParams& eos,
                    bool* clamped) {
    const double mu_bar = (mu_v - eos.mu_crush) / (eos.mu_lock - eos.mu_crush);
    double p = dry_pressure(mu_bar, eos);
    if (saturation > 0.0 && porosity > 0.0)
        p += saturation * biot_coefficient(porosity) * water_pressure(mu_v, eos, clamped);
    return p;
}

namespace {

// Normalized strain at the polynomial's interior maximum, if any. The
// fitted coefficients make the cubic peak and then fall, which would give
// the crush zone negative stiffness; past the peak the pressure continues
// at the initial crush slope k1 instead.
double poly_peak(const EosParams& eos) {
    const double a = 3.0 * eos.k3, b = 2.0 * eos.k2, c = eos.k1;
    if (a == 0.0) return b < 0.0 ? -c / b : 1e300;
    const double disc = b * b - 4.0 * a * c;
    if (disc <= 0.0) return 1e300;
    const double r1 = (-b - std::sqrt(disc)) / (2.0 * a);
    const double r2 = (-b + std::sqrt(disc)) / (2.0 * a);
    const double lo = std::min(r1, r2), hi = std::max(r1, r2);
    if (lo > 0.0) return lo;
    if (hi > 0.0) return hi;
    return 1e300;
}

double skeleton_pressure_monotone(double mu_bar, const EosParams& eos) {
    const double peak = poly_peak(eos);
    if (mu_bar <= peak) return dry_pressure(mu_bar, eos);
    return dry_pressure(peak, eos) + eos.k1 * (mu_bar - peak);
}

}  // namespace

double point_pressure(double theta, double bulk_modulus, double porosity, double saturation,
                      const EosParams& eos, bool* clamped) {
    const double elastic = -bulk_modulus * theta;
    if (!eos.enabled || theta >= 0.0) return elastic;

    const double mu_v = -theta;  // volumetric compression
    const double lo = eos.mu_crush;
    if (mu_v <= lo) return elastic;

    // Crush branch, anchored to the elastic pressure at the crush strain so
    // the transition is continuous and monotone for every point stiffness.
    auto crush_curve = [&](double mu) {
        const double mu_bar = (mu - eos.mu_crush) / (eos.mu_lock - eos.mu_crush);
        double p = skeleton_pressure_monotone(mu_bar, eos);
        if (saturation > 0.0 && porosity > 0.0)
            p += saturation * biot_coefficient(porosity) * water_pressure(mu, eos, clamped);
        return p;
    };
    const double anchor = bulk_modulus * eos.mu_crush - crush_curve(lo);
    const double p_eos = anchor + crush_curve(mu_v);

    const double hi = lo * (1.0 + eos.blend_width);
    if (mu_v >= hi) return p_eos;

    const double x = (mu_v - lo) / (hi - lo);
    const double s = x * x * (3.0 - 2.0 * x);
    return (1.0 - s) * elastic + s * p_eos;
}

}  // namespace perikon
