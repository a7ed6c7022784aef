#pragma once

#include "nlcap/vec.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nlcap {

// Boolean cell raster on a uniform grid. Row-major storage, index j*nx + i;
// cell (i,j) covers [origin.x + i*h, origin.x + (i+1)*h) x [... j ...).
struct GridMask {
    int nx = 0, ny = 0;
    double h = 1.0;
    Vec2 origin{0.0, 0.0};
    std::vector<std::uint8_t> cells;

    bool in_range(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + i;
    }
    bool at(int i, int j) const { return in_range(i, j) && cells[idx(i, j)] != 0; }
    void set(int i, int j, bool v);
    Vec2 cell_center(int i, int j) const;
    long count() const;
    bool same_grid(const GridMask& o) const;
    // Positive-area overlap with another mask on the same grid.
    bool overlaps(const GridMask& o) const;
};

GridMask make_grid_mask(int nx, int ny, double h = 1.0, const Vec2& origin = Vec2{0.0, 0.0});

// Text raster: header "P1-like: <width> <height>", then 0/1 cells row-major
// (row j = 0 first). Spacing and origin are not stored; supply them on load.
void write_mask_raster(const GridMask& m, const std::string& path);
GridMask read_mask_raster(const std::string& path, double h = 1.0,
                          const Vec2& origin = Vec2{0.0, 0.0});

// Container domain: cells of omega form the vessel, g_field is the per-cell
// potential (energy density; empty vector means g == 0).
struct GridDomain {
    GridMask omega;
    std::vector<double> g_field;

    int width() const { return omega.nx; }
    int height() const { return omega.ny; }
    double spacing() const { return omega.h; }
    double g_at(int i, int j) const;
    void validate() const;
};

} // namespace nlcap
