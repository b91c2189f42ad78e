// Post-processing: wave arrival timing and crater/scabbing extraction from
// the damage field.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lattice.hpp"

namespace perikon {

// First time |signal| exceeds `fraction` of its own peak magnitude,
// linearly interpolated between samples. Empty when the signal never
// crosses the threshold.
std::optional<double> first_arrival(const std::vector<double>& times,
                                    const std::vector<double>& signal, double fraction);

struct CraterMetrics {
    double crater_radius = 0.0;    // entry face
    double crater_depth = 0.0;
    double scabbing_radius = 0.0;  // exit face
    double scabbing_depth = 0.0;
};

// Damaged region = connected set (26-connectivity on the lattice grid) of
// points with damage >= threshold touching the entry (z max) or exit
// (z min) face. Radius is the maximal radial extent from the z axis within
// the face layer; depth is the maximal axial extent of the connected set.
CraterMetrics crater_metrics(const Lattice& lat, const std::vector<double>& damage,
                             double threshold);

}  // namespace perikon
