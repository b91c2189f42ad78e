#include "lattice.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/parallel.hpp"

namespace perikon {

void GeometrySpec::validate() const {
    if (!(size_x > 0.0 && size_y > 0.0 && size_z > 0.0))
        throw ConfigError("geometry dimensions must be positive");
    if (!(dx > 0.0)) throw ConfigError("grid spacing dx must be positive");
    if (!(m_ratio >= 3.0))
        throw ConfigError("horizon must be at least 3 grid spacings (m_ratio >= 3)");
}

void Lattice::ijk_of(std::size_t id, int& i, int& j, int& k) const {
    // Recover grid coordinates from the reference position; points are at
    // cell centers.
    const Vec3 p = ref[id];
    i = static_cast<int>(std::lround((p.x - origin.x) / dx - 0.5));
    j = static_cast<int>(std::lround((p.y - origin.y) / dx - 0.5));
    k = static_cast<int>(std::lround((p.z - origin.z) / dx - 0.5));
}

Lattice build_lattice(const GeometrySpec& geom) {
    geom.validate();
    Lattice lat;
    lat.dx = geom.dx;
    lat.delta = geom.horizon();
    auto count = [](double len, double dx) {
        return std::max(1, static_cast<int>(std::lround(len / dx)));
    };
    lat.nx = count(geom.size_x, geom.dx);
    lat.ny = count(geom.size_y, geom.dx);
    lat.nz = count(geom.size_z, geom.dx);
    // x/y centered on the axis, z from 0.
    lat.origin = {-0.5 * lat.nx * lat.dx, -0.5 * lat.ny * lat.dx, 0.0};
    lat.grid.assign(static_cast<std::size_t>(lat.nx) * lat.ny * lat.nz, -1);

    const bool cyl = geom.shape == GeometrySpec::Shape::Cylinder;
    const double r2 = 0.25 * geom.size_x * geom.size_x;
    for (int k = 0; k < lat.nz; ++k)
        for (int j = 0; j < lat.ny; ++j)
            for (int i = 0; i < lat.nx; ++i) {
                const Vec3 p{lat.origin.x + (i + 0.5) * lat.dx,
                             lat.origin.y + (j + 0.5) * lat.dx,
                             lat.origin.z + (k + 0.5) * lat.dx};
                if (cyl && p.x * p.x + p.y * p.y > r2) continue;
                lat.grid[static_cast<std::size_t>(lat.cell_index(i, j, k))] =
                    static_cast<std::int32_t>(lat.ref.size());
                lat.ref.push_back(p);
            }
    if (lat.ref.empty()) throw ConfigError("geometry produced no material points");
    return lat;
}

void CellList::build(std::span<const Vec3> points, double cell_size) {
    points_.assign(points.begin(), points.end());
    cell_ = cell_size;
    if (points_.empty()) {
        cells_.clear();
        return;
    }
    Vec3 lo = points_[0], hi = points_[0];
    for (const Vec3& p : points_) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
    }
    min_ = lo;
    cx_ = static_cast<int>((hi.x - lo.x) / cell_) + 1;
    cy_ = static_cast<int>((hi.y - lo.y) / cell_) + 1;
    cz_ = static_cast<int>((hi.z - lo.z) / cell_) + 1;
    const std::size_t ncells = static_cast<std::size_t>(cx_) * cy_ * cz_;

    cells_.resize(points_.size());
    std::vector<std::int64_t> counts(ncells + 1, 0);
    for (std::size_t p = 0; p < points_.size(); ++p) {
        int i, j, k;
        cell_of(points_[p], i, j, k);
        cells_[p] = cell_id(i, j, k);
        ++counts[cells_[p] + 1];
    }
    for (std::size_t c = 1; c <= ncells; ++c) counts[c] += counts[c - 1];
    start_ = counts;
    ids_.resize(points_.size());
    std::vector<std::int64_t> cursor(start_.begin(), start_.end() - 1);
    for (std::size_t p = 0; p < points_.size(); ++p)
        ids_[static_cast<std::size_t>(cursor[cells_[p]]++)] = static_cast<std::uint32_t>(p);
}

void CellList::cell_of(const Vec3& p, int& i, int& j, int& k) const {
    i = std::clamp(static_cast<int>((p.x - min_.x) / cell_), 0, cx_ - 1);
    j = std::clamp(static_cast<int>((p.y - min_.y) / cell_), 0, cy_ - 1);
    k = std::clamp(static_cast<int>((p.z - min_.z) / cell_), 0, cz_ - 1);
}

std::int64_t BondSystem::find_slot(std::size_t i, std::uint32_t j) const {
    auto lo = nbr.begin() + begin(i);
    auto hi = nbr.begin() + end(i);
    auto it = std::lower_bound(lo, hi, j);
    if (it == hi || *it != j) return -1;
    return it - nbr.begin();
}

std::size_t BondSystem::owner_of(std::int64_t slot) const {
    auto it = std::upper_bound(row.begin(), row.end(), slot);
    return static_cast<std::size_t>(it - row.begin() - 1);
}

double partial_volume_factor(double xi, double delta, double dx) {
    if (xi <= delta - 0.5 * dx) return 1.0;
    return std::clamp((delta + 0.5 * dx - xi) / dx, 0.0, 1.0);
}

BondSystem build_bonds(const Lattice& lat, std::span<const Phase> phases,
                       std::span<const std::uint8_t> pore) {
    const std::size_t n = lat.size();
    const double delta = lat.delta;
    const double search = horizon_search_radius(delta);
    const double vol = lat.volume();

    CellList cells;
    cells.build(lat.ref, delta);

    BondSystem b;
    b.row.assign(n + 1, 0);

    // Count pass.
    std::vector<std::int64_t> deg(n, 0);
    par::for_each(static_cast<std::int64_t>(n), [&](std::int64_t i) {
        std::int64_t c = 0;
        cells.for_neighbors(lat.ref[static_cast<std::size_t>(i)], search,
                            [&](std::uint32_t j) { c += (j != static_cast<std::uint32_t>(i)); });
        deg[static_cast<std::size_t>(i)] = c;
    });
    for (std::size_t i = 0; i < n; ++i) b.row[i + 1] = b.row[i] + deg[i];

    const std::int64_t total = b.row[n];
    if (total == 0) throw ModelError("no bonds: horizon smaller than point spacing");
    b.nbr.resize(static_cast<std::size_t>(total));
    b.xi.resize(static_cast<std::size_t>(total));
    b.volw.resize(static_cast<std::size_t>(total));
    b.kind.assign(static_cast<std::size_t>(total), static_cast<std::uint8_t>(BondKind::Mortar));
    b.state.assign(static_cast<std::size_t>(total), kBondIntact);
    b.dif_rate.assign(static_cast<std::size_t>(total), -1.0f);
    b.crushed.assign(static_cast<std::size_t>(total), 0);

    par::for_each(static_cast<std::int64_t>(n), [&](std::int64_t ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        std::int64_t s = b.row[i];
        cells.for_neighbors(lat.ref[i], search, [&](std::uint32_t j) {
            if (j == static_cast<std::uint32_t>(ii)) return;
            b.nbr[static_cast<std::size_t>(s++)] = j;
        });
        std::sort(b.nbr.begin() + b.row[i], b.nbr.begin() + b.row[i + 1]);
        for (std::int64_t t = b.row[i]; t < b.row[i + 1]; ++t) {
            const std::size_t slot = static_cast<std::size_t>(t);
            const std::uint32_t j = b.nbr[slot];
            const double len = norm(lat.ref[j] - lat.ref[i]);
            b.xi[slot] = len;
            b.volw[slot] = vol * partial_volume_factor(len, delta, lat.dx);
            if (!phases.empty())
                b.kind[slot] = static_cast<std::uint8_t>(
                    effective_class(classify_bond(phases[i], phases[j])));
            if (!pore.empty() && (pore[i] || pore[j])) b.state[slot] = kBondPreBroken;
        }
    });
    return b;
}

}  // namespace perikon
