#include "mesostructure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace perikon {

void MesoModel::validate() const {
    const double sum = fraction_aggregate + fraction_mortar + fraction_itz;
    if (std::abs(sum - 1.0) > 1e-12)
        throw ConfigError("meso volume fractions must sum to 1, got " + std::to_string(sum));
    if (fraction_aggregate < 0.0 || fraction_mortar < 0.0 || fraction_itz < 0.0)
        throw ConfigError("meso volume fractions must be non-negative");
    if (!(critical_porosity > 0.0))
        throw ConfigError("critical porosity must be positive");
    if (porosity < 0.0 || porosity > critical_porosity)
        throw ConfigError("porosity must lie in [0, critical_porosity]");
}

BondClass classify_bond(Phase a, Phase b) {
    if (a == b) {
        switch (a) {
            case Phase::Aggregate: return BondClass::AA;
            case Phase::Mortar: return BondClass::CC;
            case Phase::Itz: return BondClass::II;
        }
    }
    // Order-independent mixed pairs.
    const bool has_agg = (a == Phase::Aggregate) || (b == Phase::Aggregate);
    const bool has_mortar = (a == Phase::Mortar) || (b == Phase::Mortar);
    if (has_agg && has_mortar) return BondClass::AC;
    if (has_agg) return BondClass::AI;
    return BondClass::CI;
}

BondKind effective_class(BondClass c) {
    switch (c) {
        case BondClass::AA: return BondKind::Aggregate;
        case BondClass::CC: return BondKind::Mortar;
        case BondClass::II:
        case BondClass::AI:
        case BondClass::CI: return BondKind::Interface;
        case BondClass::AC: return BondKind::Concrete;
    }
    return BondKind::Concrete;
}

double pre_damage_index(double porosity, double critical_porosity) {
    if (!(critical_porosity > 0.0) || porosity < 0.0 || porosity > critical_porosity)
        throw ConfigError("pre-damage index requires 0 <= porosity <= critical_porosity");
    return porosity / critical_porosity;
}

std::vector<Phase> assign_phases(std::size_t n_points, const MesoModel& meso) {
    meso.validate();
    std::vector<Phase> phase(n_points, Phase::Mortar);
    const double f_agg = meso.fraction_aggregate;
    const double f_agg_mortar = f_agg + meso.fraction_mortar;
    par::for_each(static_cast<std::int64_t>(n_points), [&](std::int64_t i) {
        const double u = rng::uniform01(meso.seed, rng::kPhaseAssignment,
                                        static_cast<std::uint64_t>(i));
        phase[static_cast<std::size_t>(i)] =
            u < f_agg ? Phase::Aggregate : (u < f_agg_mortar ? Phase::Mortar : Phase::Itz);
    });
    return phase;
}

std::vector<std::uint8_t> draw_pore_points(std::size_t n_points, double pre_damage,
                                           std::uint64_t seed) {
    if (pre_damage < 0.0 || pre_damage > 1.0)
        throw ConfigError("pre-damage index must be in [0,1]");
    std::vector<std::uint8_t> pore(n_points, 0);
    if (pre_damage == 0.0) return pore;
    par::for_each(static_cast<std::int64_t>(n_points), [&](std::int64_t i) {
        const double u = rng::uniform01(seed, rng::kPoreDraw, static_cast<std::uint64_t>(i));
        pore[static_cast<std::size_t>(i)] = u < pre_damage ? 1 : 0;
    });
    return pore;
}

}  // namespace perikon
