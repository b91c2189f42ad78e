// Stochastic three-phase concrete mesostructure: per-point phase labels
// drawn from volume fractions, bond classes derived from endpoint phases,
// and pore bonds pre-broken by a per-endpoint pore draw. All randomness is
// counter-based on (seed, index), so assignments are reproducible for a
// fixed seed and point ordering on any thread count.
#pragma once

#include <cstdint>
#include <vector>

namespace perikon {

enum class Phase : std::uint8_t { Aggregate = 0, Mortar = 1, Itz = 2 };

// Raw class of a bond from its two endpoint phases.
enum class BondClass : std::uint8_t { AA, CC, II, AC, AI, CI };

// Effective behavior class: mixed aggregate/ITZ and mortar/ITZ bonds act as
// interface bonds; aggregate/mortar bonds act as homogenized concrete.
enum class BondKind : std::uint8_t { Aggregate = 0, Mortar = 1, Interface = 2, Concrete = 3 };
inline constexpr int kBondKindCount = 4;

struct MesoModel {
    double fraction_aggregate = 0.4;
    double fraction_mortar = 0.55;
    double fraction_itz = 0.05;
    double porosity = 0.0;           // drives pore pre-breaking
    double critical_porosity = 1.0;  // porosity at which a point is fully broken
    std::uint64_t seed = 0;

    void validate() const;  // throws ConfigError
};

BondClass classify_bond(Phase a, Phase b);
BondKind effective_class(BondClass c);

// d = phi / phi_c in [0,1].
double pre_damage_index(double porosity, double critical_porosity);

// I.i.d. labels by volume fraction; pure function of (seed, index).
std::vector<Phase> assign_phases(std::size_t n_points, const MesoModel& meso);

// Per-point pore draws with probability d; a bond touching a pore endpoint
// is pre-broken, giving the bond-level pre-break probability 1-(1-d)^2.
std::vector<std::uint8_t> draw_pore_points(std::size_t n_points, double pre_damage,
                                           std::uint64_t seed);

}  // namespace perikon
