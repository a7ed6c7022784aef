#include "nlcap/grid.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nlcap {

void GridMask::set(int i, int j, bool v) {
    if (!in_range(i, j)) throw std::out_of_range("GridMask::set: cell outside grid");
    cells[idx(i, j)] = v ? 1 : 0;
}

Vec2 GridMask::cell_center(int i, int j) const {
    return Vec2{origin.x + (i + 0.5) * h, origin.y + (j + 0.5) * h};
}

long GridMask::count() const {
    long c = 0;
    for (auto v : cells) c += v != 0;
    return c;
}

bool GridMask::same_grid(const GridMask& o) const {
    return nx == o.nx && ny == o.ny && h == o.h && origin.x == o.origin.x &&
           origin.y == o.origin.y;
}

bool GridMask::overlaps(const GridMask& o) const {
    if (!same_grid(o)) throw std::invalid_argument("GridMask::overlaps: different grids");
    for (std::size_t k = 0; k < cells.size(); ++k)
        if (cells[k] && o.cells[k]) return true;
    return false;
}

GridMask make_grid_mask(int nx, int ny, double h, const Vec2& origin) {
    if (nx <= 0 || ny <= 0) throw std::invalid_argument("make_grid_mask: empty grid");
    if (!(h > 0.0)) throw std::invalid_argument("make_grid_mask: spacing must be positive");
    GridMask m;
    m.nx = nx;
    m.ny = ny;
    m.h = h;
    m.origin = origin;
    m.cells.assign(static_cast<std::size_t>(nx) * ny, 0);
    return m;
}

void write_mask_raster(const GridMask& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_mask_raster: cannot open " + path);
    out << "P1-like: " << m.nx << ' ' << m.ny << '\n';
    for (int j = 0; j < m.ny; ++j) {
        for (int i = 0; i < m.nx; ++i) {
            if (i) out << ' ';
            out << (m.at(i, j) ? 1 : 0);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_mask_raster: write failed for " + path);
}

GridMask read_mask_raster(const std::string& path, double h, const Vec2& origin) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_mask_raster: cannot open " + path);
    std::string magic;
    in >> magic;
    if (magic != "P1-like:")
        throw std::runtime_error("read_mask_raster: bad header in " + path);
    int nx = 0, ny = 0;
    if (!(in >> nx >> ny) || nx <= 0 || ny <= 0)
        throw std::runtime_error("read_mask_raster: bad dimensions in " + path);
    GridMask m = make_grid_mask(nx, ny, h, origin);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            int v = 0;
            if (!(in >> v) || (v != 0 && v != 1))
                throw std::runtime_error("read_mask_raster: bad cell data in " + path);
            m.cells[m.idx(i, j)] = static_cast<std::uint8_t>(v);
        }
    return m;
}

double GridDomain::g_at(int i, int j) const {
    if (g_field.empty()) return 0.0;
    if (!omega.in_range(i, j)) throw std::out_of_range("GridDomain::g_at: cell outside grid");
    return g_field[omega.idx(i, j)];
}

void GridDomain::validate() const {
    if (omega.count() == 0) throw std::invalid_argument("GridDomain: empty container mask");
    if (!g_field.empty()) {
        if (g_field.size() != omega.cells.size())
            throw std::invalid_argument("GridDomain: g_field size mismatch");
        for (double v : g_field)
            if (!std::isfinite(v)) throw std::invalid_argument("GridDomain: g_field not finite");
    }
}

} // namespace nlcap
