#include "failure.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace perikon {

namespace {
constexpr double kGainBranchRate = 1.0e-5;  // 1/s
}

double DifParams::beta() const {
    const double r = branch_rate / ref_rate_tension;
    return std::pow(r, tensile_zeta - 1.0 / 3.0);
}

void DifParams::validate() const {
    if (!(compressive_c > 0.0 && tensile_zeta > 0.0))
        throw ConfigError("DIF constants must be positive");
    if (!(ref_rate_tension > 0.0 && ref_rate_compression > 0.0))
        throw ConfigError("DIF reference rates must be positive");
    if (!(saturation_c >= 0.0))
        throw ConfigError("DIF saturation sensitivity must be non-negative");
    if (!(branch_rate > kGainBranchRate))
        throw ConfigError("tensile branch rate must exceed 1e-5 1/s");
}

CriticalStretch static_critical_stretches(double bulk_modulus, double horizon, double youngs,
                                          double fracture_energy, double sigma_c) {
    if (!(bulk_modulus > 0.0 && horizon > 0.0 && youngs > 0.0 && fracture_energy > 0.0 &&
          sigma_c > 0.0))
        throw std::domain_error("critical stretch inputs must be positive");
    return {std::sqrt(5.0 * fracture_energy / (9.0 * bulk_modulus * horizon)),
            sigma_c / youngs};
}

std::pair<double, double> wet_static_strength(double f_c, double f_t, double saturation) {
    const double factor = 1.0 - 0.2 * saturation;
    return {factor * f_c, factor * f_t};
}

double dif_dry_tension(double rate, const DifParams& p) {
    if (!p.enabled || rate <= 0.0) return 1.0;
    rate = std::max(rate, p.rate_floor);
    double dif;
    if (rate <= p.branch_rate)
        dif = std::pow(rate / p.ref_rate_tension, p.tensile_zeta);
    else
        dif = p.beta() * std::cbrt(rate / p.ref_rate_tension);
    return std::max(1.0, dif);
}

double dif_dry_compression(double rate, const DifParams& p) {
    if (!p.enabled || rate <= 0.0) return 1.0;
    rate = std::max(rate, p.rate_floor);
    return std::max(1.0, 1.0 + p.compressive_c * std::log(rate / p.ref_rate_compression));
}

double saturation_gain_tension(double rate, double saturation, const DifParams& p) {
    if (rate <= kGainBranchRate || saturation <= 0.0) return 1.0;
    const double a = 1.0 + p.saturation_c * saturation;
    return 2.0 - std::pow(a, -std::log10(rate) - 5.0);
}

double dif_wet_tension(double rate, double saturation, const DifParams& p) {
    const double dry = dif_dry_tension(rate, p);
    if (!p.enabled || rate <= kGainBranchRate) return dry;
    return dry * saturation_gain_tension(rate, saturation, p);
}

double dif_wet_compression(double rate, double saturation, double ft_over_fc,
                           const DifParams& p) {
    const double dry = dif_dry_compression(rate, p);
    if (!p.enabled || rate <= kGainBranchRate || saturation <= 0.0) return dry;
    const double dif_t_dry = dif_dry_tension(rate, p);
    const double dif_t_wet = dif_t_dry * saturation_gain_tension(rate, saturation, p);
    const double gain = (dif_t_wet * ft_over_fc + 1.0) / (dif_t_dry * ft_over_fc + 1.0);
    return dry * gain;
}

}  // namespace perikon
