// Uniform cubic lattice discretization of the target, generic cell-list
// neighbor search, and the bond storage built from it. Bonds are stored
// directed (each appears in both endpoint rows, sorted by neighbor id);
// the state byte of the two directions is kept in sync by the solver.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/vec3.hpp"
#include "mesostructure.hpp"

namespace perikon {

struct GeometrySpec {
    enum class Shape { Box, Cylinder };
    Shape shape = Shape::Box;
    double size_x = 0.0;  // m; cylinder: diameter in x/y
    double size_y = 0.0;
    double size_z = 0.0;  // impact / propagation axis
    double dx = 0.0;
    double m_ratio = 4.0;  // horizon / dx, must be >= 3

    double horizon() const { return m_ratio * dx; }
    void validate() const;
};

struct Lattice {
    double dx = 0.0;
    double delta = 0.0;
    int nx = 0, ny = 0, nz = 0;
    Vec3 origin;                    // min corner of the cell grid
    std::vector<Vec3> ref;          // reference positions (cell centers)
    std::vector<std::int32_t> grid;  // (i,j,k) -> point id, -1 if empty

    std::size_t size() const { return ref.size(); }
    std::int64_t cell_index(int i, int j, int k) const {
        return (static_cast<std::int64_t>(k) * ny + j) * nx + i;
    }
    std::int32_t point_at(int i, int j, int k) const {
        if (i < 0 || j < 0 || k < 0 || i >= nx || j >= ny || k >= nz) return -1;
        return grid[static_cast<std::size_t>(cell_index(i, j, k))];
    }
    void ijk_of(std::size_t id, int& i, int& j, int& k) const;
    double volume() const { return dx * dx * dx; }
};

Lattice build_lattice(const GeometrySpec& geom);

// Uniform-grid spatial hash over arbitrary point clouds; used for bond
// construction and for projectile/target contact search.
class CellList {
public:
    void build(std::span<const Vec3> points, double cell_size);

    // Calls fn(id) for every stored point with |p - q| <= radius; candidates
    // are visited in increasing id order within each cell scan.
    template <typename Fn>
    void for_neighbors(const Vec3& q, double radius, Fn fn) const {
        if (cells_.empty()) return;
        const double r2 = radius * radius;
        int ci, cj, ck;
        cell_of(q, ci, cj, ck);
        const int reach = static_cast<int>(std::ceil(radius / cell_)) ;
        for (int k = ck - reach; k <= ck + reach; ++k)
            for (int j = cj - reach; j <= cj + reach; ++j)
                for (int i = ci - reach; i <= ci + reach; ++i) {
                    if (i < 0 || j < 0 || k < 0 || i >= cx_ || j >= cy_ || k >= cz_) continue;
                    const std::size_t c = cell_id(i, j, k);
                    for (std::int64_t s = start_[c]; s < start_[c + 1]; ++s) {
                        const std::uint32_t id = ids_[static_cast<std::size_t>(s)];
                        if (norm2(points_[id] - q) <= r2) fn(id);
                    }
                }
    }

private:
    void cell_of(const Vec3& p, int& i, int& j, int& k) const;
    std::size_t cell_id(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * cy_ + j) * cx_ + i;
    }

    std::vector<Vec3> points_;
    std::vector<std::int64_t> start_;
    std::vector<std::uint32_t> ids_;
    std::vector<std::size_t> cells_;
    Vec3 min_;
    double cell_ = 0.0;
    int cx_ = 0, cy_ = 0, cz_ = 0;
};

// Bond state byte.
inline constexpr std::uint8_t kBondBroken = 0;
inline constexpr std::uint8_t kBondIntact = 1;
inline constexpr std::uint8_t kBondPreBroken = 2;

struct BondSystem {
    std::vector<std::int64_t> row;    // size n+1, CSR row offsets
    std::vector<std::uint32_t> nbr;   // neighbor point id per directed bond
    std::vector<double> xi;           // reference bond length
    std::vector<double> volw;         // neighbor volume * partial-volume factor
    std::vector<std::uint8_t> kind;   // BondKind per bond
    std::vector<std::uint8_t> state;
    // Stretch rate at which the bond first exceeded a static threshold;
    // negative while unset. Fixes the DIF argument to the driving rate so
    // a momentary rate reversal cannot collapse the dynamic threshold.
    std::vector<float> dif_rate;
    // Sticky flag: the pair has been compressed beyond the crush pressure,
    // so its compaction damage belongs to the EOS and compressive
    // severance no longer applies (unloading must not sever it either).
    std::vector<std::uint8_t> crushed;

    std::int64_t count() const { return static_cast<std::int64_t>(nbr.size()); }
    std::int64_t begin(std::size_t i) const { return row[i]; }
    std::int64_t end(std::size_t i) const { return row[i + 1]; }

    // Directed slot of bond (i -> j); rows are sorted by neighbor id.
    std::int64_t find_slot(std::size_t i, std::uint32_t j) const;
    // Point owning a directed slot.
    std::size_t owner_of(std::int64_t slot) const;
};

// Partial-volume factor for a neighbor cell straddling the horizon
// surface: full volume inside delta - dx/2, linear taper to delta.
double partial_volume_factor(double xi, double delta, double dx);

// Search radius with a relative snap so lattice points sitting exactly on
// the horizon surface are kept regardless of coordinate round-off. Points
// any physical distance beyond delta stay excluded.
inline double horizon_search_radius(double delta) { return delta * (1.0 + 1e-12); }

// Builds bonds over all pairs with 0 < |x'-x| <= delta via the cell list.
// Bond kinds come from endpoint phases; bonds touching a pore point are
// pre-broken. `phases`/`pore` may be empty (all mortar, no pores).
BondSystem build_bonds(const Lattice& lat, std::span<const Phase> phases,
                       std::span<const std::uint8_t> pore);

}  // namespace perikon
