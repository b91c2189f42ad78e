#include "metrics.hpp"

#include <algorithm>
#include <cmath>

namespace perikon {

std::optional<double> first_arrival(const std::vector<double>& times,
                                    const std::vector<double>& signal, double fraction) {
    if (times.size() != signal.size() || times.empty()) return std::nullopt;
    double peak = 0.0;
    for (double s : signal) peak = std::max(peak, std::abs(s));
    if (peak <= 0.0) return std::nullopt;
    const double thr = fraction * peak;
    for (std::size_t k = 0; k < signal.size(); ++k) {
        const double a = std::abs(signal[k]);
        if (a < thr) continue;
        if (k == 0) return times[0];
        const double prev = std::abs(signal[k - 1]);
        const double f = (thr - prev) / (a - prev);
        return times[k - 1] + f * (times[k] - times[k - 1]);
    }
    return std::nullopt;
}

namespace {

// Flood fill over damaged lattice points starting from one face layer.
std::vector<std::uint8_t> face_connected(const Lattice& lat, const std::vector<char>& damaged,
                                         int face_k) {
    std::vector<std::uint8_t> in_set(lat.size(), 0);
    std::vector<std::int32_t> stack;
    for (std::size_t i = 0; i < lat.size(); ++i) {
        int ci, cj, ck;
        lat.ijk_of(i, ci, cj, ck);
        if (ck == face_k && damaged[i]) {
            in_set[i] = 1;
            stack.push_back(static_cast<std::int32_t>(i));
        }
    }
    while (!stack.empty()) {
        const std::int32_t id = stack.back();
        stack.pop_back();
        int ci, cj, ck;
        lat.ijk_of(static_cast<std::size_t>(id), ci, cj, ck);
        for (int dk = -1; dk <= 1; ++dk)
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0 && dk == 0) continue;
                    const std::int32_t nb = lat.point_at(ci + di, cj + dj, ck + dk);
                    if (nb < 0 || in_set[static_cast<std::size_t>(nb)]) continue;
                    if (!damaged[static_cast<std::size_t>(nb)]) continue;
                    in_set[static_cast<std::size_t>(nb)] = 1;
                    stack.push_back(nb);
                }
    }
    return in_set;
}

}  // namespace

CraterMetrics crater_metrics(const Lattice& lat, const std::vector<double>& damage,
                             double threshold) {
    CraterMetrics out;
    std::vector<char> damaged(lat.size());
    for (std::size_t i = 0; i < lat.size(); ++i) damaged[i] = damage[i] >= threshold ? 1 : 0;

    const double z_entry = lat.origin.z + lat.nz * lat.dx;
    const double z_exit = lat.origin.z;

    auto measure = [&](int face_k, bool entry, double& radius, double& depth) {
        const std::vector<std::uint8_t> set = face_connected(lat, damaged, face_k);
        for (std::size_t i = 0; i < lat.size(); ++i) {
            if (!set[i]) continue;
            const Vec3 p = lat.ref[i];
            int ci, cj, ck;
            lat.ijk_of(i, ci, cj, ck);
            if (ck == face_k)
                radius = std::max(radius, std::sqrt(p.x * p.x + p.y * p.y));
            depth = std::max(depth, entry ? z_entry - p.z : p.z - z_exit);
        }
    };
    measure(lat.nz - 1, true, out.crater_radius, out.crater_depth);
    measure(0, false, out.scabbing_radius, out.scabbing_depth);
    return out;
}

}  // namespace perikon
