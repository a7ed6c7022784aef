#include "nlcap/capillary.hpp"

#include "nlcap/errors.hpp"
#include "nlcap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nlcap {

void CapillaryProblem::validate() const {
    domain.validate();
    if (K1.n != 2 || K2.n != 2)
        throw std::invalid_argument("CapillaryProblem: planar kernels required");
    const long cells = domain.omega.count();
    if (!(m > 0 && m < cells))
        throw std::invalid_argument("CapillaryProblem: need 0 < m < |Omega| cells");
    if (wall && wall->window < 2)
        throw std::invalid_argument("CapillaryProblem: wall window must be at least 2");
}

namespace {

std::vector<std::size_t> mask_cells(const GridMask& m) {
    std::vector<std::size_t> out;
    out.reserve(m.cells.size());
    for (std::size_t k = 0; k < m.cells.size(); ++k)
        if (m.cells[k]) out.push_back(k);
    return out;
}

void require_subset(const GridMask& E, const GridMask& omega, const char* who) {
    if (!E.same_grid(omega))
        throw std::invalid_argument(std::string(who) + ": mask grids differ");
    for (std::size_t k = 0; k < E.cells.size(); ++k)
        if (E.cells[k] && !omega.cells[k])
            throw std::invalid_argument(std::string(who) + ": mask leaves the container");
}

} // namespace

CapillaryEvaluator::CapillaryEvaluator(const CapillaryProblem& p) : p_(&p) {
    p.validate();
    const GridMask& om = p.domain.omega;
    const int nx = om.nx, ny = om.ny;
    const double h = om.h;

    v1_ = build_offset_table(p.K1, nx, ny, h);
    const auto ocells = mask_cells(om);

    u_omega_.assign(om.cells.size(), 0.0);
    for (std::size_t e : ocells) {
        const int ie = static_cast<int>(e % nx), je = static_cast<int>(e / nx);
        double sum = 0.0;
        for (std::size_t c : ocells) {
            const int ic = static_cast<int>(c % nx), jc = static_cast<int>(c / nx);
            sum += v1_.at(ic - ie, jc - je);
        }
        u_omega_[e] = sum;
    }

    // Wall potential: everything inside a large square window that is not a
    // container cell, plus a constant far-field completion. The completion
    // shifts I_2 by the same amount per cell, so shapes and the duality
    // identity are unaffected.
    const int K = std::max(nx, ny) + 64;
    const OffsetTable v2 = build_offset_table(p.K2, K + 1, K + 1, h);
    double window_total = 0.0;
    for (int dj = -K; dj <= K; ++dj)
        for (int di = -K; di <= K; ++di) window_total += v2.at(di, dj);
    const auto& ang2 = p.K2.anisotropy;
    const double a2_mean =
        integrate_gl([&](double psi) { return ang2.angular(psi); }, 0.0, 2.0 * M_PI, 64);
    const double far_tail = a2_mean * std::pow((K + 0.5) * h, -p.K2.s) / p.K2.s;

    w2_.assign(om.cells.size(), 0.0);
    for (std::size_t e : ocells) {
        const int ie = static_cast<int>(e % nx), je = static_cast<int>(e / nx);
        double inside = 0.0;
        for (std::size_t c : ocells) {
            const int ic = static_cast<int>(c % nx), jc = static_cast<int>(c / nx);
            inside += v2.at(ic - ie, jc - je);
        }
        w2_[e] = window_total - inside + far_tail;
    }

    gval_.assign(om.cells.size(), 0.0);
    if (!p.domain.g_field.empty())
        for (std::size_t e : ocells) gval_[e] = h * h * p.domain.g_field[e];

    i2_omega_ = 0.0;
    for (std::size_t e : ocells) i2_omega_ += w2_[e];
}

CapillaryEvaluator::Parts CapillaryEvaluator::energy_parts(const GridMask& E) const {
    require_subset(E, p_->domain.omega, "energy_parts");
    const int nx = E.nx;
    const auto ecells = mask_cells(E);
    Parts parts;
    double pair_sum = 0.0;
    for (std::size_t e : ecells) {
        const int ie = static_cast<int>(e % nx), je = static_cast<int>(e / nx);
        parts.i1 += u_omega_[e];
        parts.i2 += w2_[e];
        parts.grav += gval_[e];
        for (std::size_t c : ecells) {
            const int ic = static_cast<int>(c % nx), jc = static_cast<int>(c / nx);
            pair_sum += v1_.at(ic - ie, jc - je);
        }
    }
    parts.i1 -= pair_sum;
    return parts;
}

double CapillaryEvaluator::energy(const GridMask& E) const {
    const Parts parts = energy_parts(E);
    return parts.i1 + p_->sigma * parts.i2 + parts.grav;
}

void CapillaryEvaluator::build_field(const GridMask& E, std::vector<double>& S) const {
    const int nx = E.nx;
    S.assign(E.cells.size(), 0.0);
    const auto ecells = mask_cells(E);
    for (std::size_t x = 0; x < S.size(); ++x) {
        const int ix = static_cast<int>(x % nx), jx = static_cast<int>(x / nx);
        double sum = 0.0;
        for (std::size_t e : ecells) {
            const int ie = static_cast<int>(e % nx), je = static_cast<int>(e / nx);
            sum += v1_.at(ie - ix, je - jx);
        }
        S[x] = sum;
    }
}

void CapillaryEvaluator::shift_field(std::vector<double>& S, std::size_t cell_out,
                                     std::size_t cell_in) const {
    const int nx = p_->domain.omega.nx;
    const int io = static_cast<int>(cell_out % nx), jo = static_cast<int>(cell_out / nx);
    const int ii = static_cast<int>(cell_in % nx), ji = static_cast<int>(cell_in / nx);
    for (std::size_t x = 0; x < S.size(); ++x) {
        const int ix = static_cast<int>(x % nx), jx = static_cast<int>(x / nx);
        S[x] += v1_.at(ii - ix, ji - jx) - v1_.at(io - ix, jo - jx);
    }
}

double CapillaryEvaluator::move_delta(const GridMask& E, const std::vector<double>& S,
                                      std::size_t cell_out, std::size_t cell_in) const {
    if (cell_in == cell_out) return 0.0;
    const int nx = E.nx;
    const int io = static_cast<int>(cell_out % nx), jo = static_cast<int>(cell_out / nx);
    const int ii = static_cast<int>(cell_in % nx), ji = static_cast<int>(cell_in / nx);
    const double d_i1 = u_omega_[cell_in] - u_omega_[cell_out] -
                        2.0 * (S[cell_in] - S[cell_out]) + 2.0 * v1_.at(ii - io, ji - jo);
    return d_i1 + p_->sigma * (w2_[cell_in] - w2_[cell_out]) + gval_[cell_in] -
           gval_[cell_out];
}

double energy_eval(const CapillaryProblem& p, const GridMask& E) {
    CapillaryEvaluator ev(p);
    if (E.count() != p.m)
        throw std::invalid_argument("energy_eval: mask volume differs from m");
    return ev.energy(E);
}

double delta_energy(const CapillaryProblem& p, const GridMask& E, std::size_t cell_out,
                    std::size_t cell_in) {
    CapillaryEvaluator ev(p);
    require_subset(E, p.domain.omega, "delta_energy");
    if (cell_out >= E.cells.size() || !E.cells[cell_out])
        throw std::invalid_argument("delta_energy: cell_out not in the droplet");
    if (cell_in >= E.cells.size() ||
        (cell_in != cell_out &&
         (!p.domain.omega.cells[cell_in] || E.cells[cell_in])))
        throw std::invalid_argument("delta_energy: cell_in not free in the container");
    std::vector<double> S;
    ev.build_field(E, S);
    return ev.move_delta(E, S, cell_out, cell_in);
}

namespace {

GridMask initial_mask(const CapillaryProblem& p) {
    const GridMask& om = p.domain.omega;
    const int nx = om.nx, ny = om.ny;
    Vec2 anchor;
    if (p.wall) {
        const double cx = om.origin.x + 0.5 * nx * om.h;
        const double cy = om.origin.y + 0.5 * ny * om.h;
        switch (p.wall->side) {
            case WallSide::Bottom: anchor = Vec2{cx, om.origin.y}; break;
            case WallSide::Top: anchor = Vec2{cx, om.origin.y + ny * om.h}; break;
            case WallSide::Left: anchor = Vec2{om.origin.x, cy}; break;
            case WallSide::Right: anchor = Vec2{om.origin.x + nx * om.h, cy}; break;
        }
    } else {
        anchor = Vec2{0.0, 0.0};
        long n = 0;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i)
                if (om.at(i, j)) {
                    const Vec2 c = om.cell_center(i, j);
                    anchor = anchor + c;
                    ++n;
                }
        anchor = anchor * (1.0 / n);
    }
    std::vector<std::size_t> order = mask_cells(om);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Vec2 ca = om.cell_center(static_cast<int>(a % nx), static_cast<int>(a / nx));
        const Vec2 cb = om.cell_center(static_cast<int>(b % nx), static_cast<int>(b / nx));
        const double da = dot(ca - anchor, ca - anchor);
        const double db = dot(cb - anchor, cb - anchor);
        if (da != db) return da < db;
        return a < b;
    });
    GridMask E = make_grid_mask(nx, ny, om.h, om.origin);
    for (long k = 0; k < p.m; ++k) E.cells[order[static_cast<std::size_t>(k)]] = 1;
    return E;
}

} // namespace

MinimizeReport minimize(const CapillaryProblem& p, const AnnealSchedule& schedule) {
    CapillaryEvaluator ev(p);
    if (schedule.sweeps < 1 || !(schedule.cooling > 0.0 && schedule.cooling <= 1.0))
        throw std::invalid_argument("minimize: bad annealing schedule");

    GridMask E = initial_mask(p);
    std::vector<double> S;
    ev.build_field(E, S);

    const std::size_t ncells = E.cells.size();
    std::vector<std::size_t> e_list, free_list;
    std::vector<std::size_t> slot(ncells, SIZE_MAX);
    for (std::size_t k = 0; k < ncells; ++k) {
        if (E.cells[k]) {
            slot[k] = e_list.size();
            e_list.push_back(k);
        } else if (p.domain.omega.cells[k]) {
            slot[k] = free_list.size();
            free_list.push_back(k);
        }
    }

    double energy = ev.energy(E);
    double T = schedule.initial_temperature >= 0.0
                   ? schedule.initial_temperature
                   : std::abs(energy) / (10.0 * p.m) + 1e-12;

    std::mt19937_64 rng(schedule.seed);
    std::uniform_int_distribution<std::size_t> pick_e(0, e_list.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_f(0, free_list.size() - 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    const int nx = p.domain.omega.nx, ny = p.domain.omega.ny;
    const auto& omega_cells = p.domain.omega.cells;
    auto free_neighbors = [&](std::size_t c, std::size_t out[4]) {
        const int ci = static_cast<int>(c % nx), cj = static_cast<int>(c / nx);
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        int found = 0;
        for (int k = 0; k < 4; ++k) {
            const int qi = ci + di[k], qj = cj + dj[k];
            if (qi < 0 || qi >= nx || qj < 0 || qj >= ny) continue;
            const std::size_t q = static_cast<std::size_t>(qj) * nx + qi;
            if (omega_cells[q] && !E.cells[q]) out[found++] = q;
        }
        return found;
    };
    // Interface-biased proposals: peel a boundary cell of E and regrow at a
    // site touching E. Uniform droplet-to-anywhere moves have deltas far
    // above any useful temperature, so a pure uniform kernel freezes; a
    // small uniform fraction is kept so no configuration is unreachable.
    auto propose = [&](std::size_t& o, std::size_t& i) {
        if (unif(rng) >= 0.1) {
            std::size_t nbr[4];
            bool have_o = false;
            for (int attempt = 0; attempt < 64 && !have_o; ++attempt) {
                const std::size_t cand = e_list[pick_e(rng)];
                if (free_neighbors(cand, nbr) > 0) {
                    o = cand;
                    have_o = true;
                }
            }
            if (have_o) {
                for (int attempt = 0; attempt < 64; ++attempt) {
                    const std::size_t z = e_list[pick_e(rng)];
                    const int count = free_neighbors(z, nbr);
                    if (count == 0) continue;
                    i = nbr[count == 1
                                ? 0
                                : static_cast<int>(
                                      std::uniform_int_distribution<int>(0, count - 1)(rng))];
                    return;
                }
            }
        }
        o = e_list[pick_e(rng)];
        i = free_list[pick_f(rng)];
    };

    MinimizeReport rep;
    rep.energy_trace.reserve(schedule.sweeps + 1);
    rep.energy_trace.emplace_back(0, energy);
    GridMask best = E;
    double best_energy = energy;

    const int greedy_from = schedule.sweeps - std::max(1, schedule.sweeps / 10);
    for (int sweep = 1; sweep <= schedule.sweeps; ++sweep) {
        if (sweep > greedy_from) T = 0.0;
        for (long k = 0; k < p.m; ++k) {
            std::size_t o = 0, i = 0;
            propose(o, i);
            if (i == o || E.cells[i]) continue;
            const double d = ev.move_delta(E, S, o, i);
            const bool accept = d <= 0.0 || (T > 0.0 && unif(rng) < std::exp(-d / T));
            if (!accept) continue;
            E.cells[o] = 0;
            E.cells[i] = 1;
            const std::size_t so = slot[o], si = slot[i];
            e_list[so] = i;
            free_list[si] = o;
            std::swap(slot[o], slot[i]);
            ev.shift_field(S, o, i);
            energy += d;
            ++rep.accepted_moves;
            if (energy < best_energy) {
                best_energy = energy;
                best = E;
            }
        }
        if (T > 0.0) T *= schedule.cooling;
        rep.energy_trace.emplace_back(sweep, energy);
        if (E.count() != p.m) throw std::logic_error("minimize: volume constraint violated");
    }

    rep.final_mask = best;
    rep.final_energy = ev.energy(best);
    if (p.wall) {
        rep.wall_contact_fraction =
            wall_contact_fraction(best, p.domain.omega, p.wall->side);
        try {
            rep.measured_angle = measure_contact_angle(best, p.domain.omega, *p.wall);
        } catch (const std::exception&) {
            rep.measured_angle.reset();
        }
    }
    return rep;
}

namespace {

// Rotate a mask so the declared wall becomes the bottom edge. Pure rotations
// (never reflections), so measured angles are preserved.
GridMask rotate_to_bottom(const GridMask& m, WallSide side) {
    if (side == WallSide::Bottom) return m;
    GridMask out;
    if (side == WallSide::Top) {
        out = make_grid_mask(m.nx, m.ny, m.h, m.origin);
        for (int j = 0; j < m.ny; ++j)
            for (int i = 0; i < m.nx; ++i)
                if (m.at(i, j)) out.set(m.nx - 1 - i, m.ny - 1 - j, true);
    } else if (side == WallSide::Left) {
        out = make_grid_mask(m.ny, m.nx, m.h, m.origin);
        for (int j = 0; j < m.ny; ++j)
            for (int i = 0; i < m.nx; ++i)
                if (m.at(i, j)) out.set(m.ny - 1 - j, i, true);
    } else {
        out = make_grid_mask(m.ny, m.nx, m.h, m.origin);
        for (int j = 0; j < m.ny; ++j)
            for (int i = 0; i < m.nx; ++i)
                if (m.at(i, j)) out.set(j, m.nx - 1 - i, true);
    }
    return out;
}

struct FloorInfo {
    std::vector<int> floor_row; // per column, -1 if the container misses it
    std::vector<int> wet;       // columns whose floor cell belongs to E
    int columns = 0;
};

FloorInfo floor_contact(const GridMask& E, const GridMask& om) {
    FloorInfo info;
    info.floor_row.assign(om.nx, -1);
    for (int i = 0; i < om.nx; ++i)
        for (int j = 0; j < om.ny; ++j)
            if (om.at(i, j)) {
                info.floor_row[i] = j;
                break;
            }
    for (int i = 0; i < om.nx; ++i) {
        if (info.floor_row[i] < 0) continue;
        ++info.columns;
        if (E.at(i, info.floor_row[i])) info.wet.push_back(i);
    }
    return info;
}

bool interface_cell(const GridMask& E, const GridMask& om, int i, int j) {
    if (!E.at(i, j)) return false;
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
        const int ni = i + di[k], nj = j + dj[k];
        if (om.at(ni, nj) && !E.at(ni, nj)) return true;
    }
    return false;
}

std::vector<Vec2> interface_points_near(const GridMask& E, const GridMask& om, int ci,
                                        int cj, int window) {
    std::vector<Vec2> pts;
    for (int j = std::max(0, cj - window); j <= std::min(om.ny - 1, cj + window); ++j)
        for (int i = std::max(0, ci - window); i <= std::min(om.nx - 1, ci + window); ++i)
            if (interface_cell(E, om, i, j))
                pts.push_back(Vec2{i + 0.5, j + 0.5});
    return pts;
}

// Least-squares direction through the points; false when degenerate.
bool fit_line_dir(const std::vector<Vec2>& pts, Vec2& dir) {
    if (pts.size() < 2) return false;
    Vec2 mean{0.0, 0.0};
    for (const Vec2& p : pts) mean = mean + p;
    mean = mean * (1.0 / pts.size());
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const Vec2& p : pts) {
        const Vec2 d = p - mean;
        sxx += d.x * d.x;
        sxy += d.x * d.y;
        syy += d.y * d.y;
    }
    if (sxx == 0.0 && syy == 0.0) return false;
    const double ang = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    dir = unit_at(ang);
    if (dir.y < 0.0) dir = dir * -1.0;
    return true;
}

struct CircleFit {
    double cx = 0.0, cy = 0.0, r = 0.0;
};

// Algebraic least-squares circle (normal equations of |p-c|^2 = r^2);
// false when the points are too straight to determine a circle.
bool fit_circle(const std::vector<Vec2>& pts, CircleFit& fit) {
    if (pts.size() < 5) return false;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    double sxz = 0, syz = 0, sz = 0;
    for (const Vec2& p : pts) {
        const double z = p.x * p.x + p.y * p.y;
        sx += p.x;
        sy += p.y;
        sxx += p.x * p.x;
        sxy += p.x * p.y;
        syy += p.y * p.y;
        sxz += p.x * z;
        syz += p.y * z;
        sz += z;
    }
    const double n = static_cast<double>(pts.size());
    // Solve [2sxx 2sxy sx; 2sxy 2syy sy; 2sx 2sy n] * [cx cy d]^T = [sxz syz sz]^T.
    const double a11 = 2 * sxx, a12 = 2 * sxy, a13 = sx;
    const double a21 = 2 * sxy, a22 = 2 * syy, a23 = sy;
    const double a31 = 2 * sx, a32 = 2 * sy, a33 = n;
    const double det = a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
                       a13 * (a21 * a32 - a22 * a31);
    // Scale-aware singularity test: collinear points give det ~ 0.
    const double scale = (sxx + syy) * n;
    if (std::abs(det) <= 1e-9 * std::max(scale, 1.0)) return false;
    const double d1 = sxz * (a22 * a33 - a23 * a32) - a12 * (syz * a33 - a23 * sz) +
                      a13 * (syz * a32 - a22 * sz);
    const double d2 = a11 * (syz * a33 - a23 * sz) - sxz * (a21 * a33 - a23 * a31) +
                      a13 * (a21 * sz - syz * a31);
    const double d3 = a11 * (a22 * sz - syz * a32) - a12 * (a21 * sz - syz * a31) +
                      sxz * (a21 * a32 - a22 * a31);
    fit.cx = d1 / det;
    fit.cy = d2 / det;
    const double r2 = d3 / det + fit.cx * fit.cx + fit.cy * fit.cy;
    if (!(r2 > 0.0) || !std::isfinite(r2)) return false;
    fit.r = std::sqrt(r2);
    return std::isfinite(fit.cx) && std::isfinite(fit.cy) && fit.r < 1e6;
}

} // namespace

double wall_contact_fraction(const GridMask& E, const GridMask& omega, WallSide side) {
    const GridMask Eb = rotate_to_bottom(E, side);
    const GridMask ob = rotate_to_bottom(omega, side);
    const FloorInfo info = floor_contact(Eb, ob);
    if (info.columns == 0) return 0.0;
    return static_cast<double>(info.wet.size()) / info.columns;
}

double measure_contact_angle(const GridMask& E, const GridMask& omega,
                             const WallSpec& wall) {
    if (!E.same_grid(omega))
        throw std::invalid_argument("measure_contact_angle: mask grids differ");
    if (wall.window < 2)
        throw std::invalid_argument("measure_contact_angle: window too small");
    const GridMask Eb = rotate_to_bottom(E, wall.side);
    const GridMask ob = rotate_to_bottom(omega, wall.side);
    const FloorInfo info = floor_contact(Eb, ob);
    if (info.columns == 0)
        throw std::runtime_error("measure_contact_angle: container has no such wall");
    const double fraction = static_cast<double>(info.wet.size()) / info.columns;
    if (fraction > 0.9) return 0.0;               // sticking signature
    if (fraction < 1.0 / wall.window) return M_PI; // detachment signature

    // Longest contiguous run of wet floor columns.
    int best_lo = -1, best_hi = -2, lo = 0;
    for (std::size_t k = 0; k < info.wet.size(); ++k) {
        if (k > 0 && info.wet[k] != info.wet[k - 1] + 1) lo = static_cast<int>(k);
        if (info.wet[k] - info.wet[lo] > best_hi - best_lo) {
            best_lo = info.wet[lo];
            best_hi = info.wet[k];
        }
    }

    // A droplet attached to a side of the container (e.g. settled into a
    // corner) has only one free contact point on this wall; measure there
    // alone, over a wider window to stabilise the arc fit.
    const bool lo_edge = best_lo == 0;
    const bool hi_edge = best_hi == Eb.nx - 1;
    if (lo_edge != hi_edge) {
        const int run = best_hi - best_lo + 1;
        const int wide = std::min(2 * wall.window, std::max(wall.window, run));
        const int ci = lo_edge ? best_hi : best_lo;
        const auto pts = interface_points_near(Eb, ob, ci, info.floor_row[ci], wide);
        CircleFit fit;
        if (fit_circle(pts, fit)) {
            const double wall_y = info.floor_row[ci];
            const double b = fit.cy - wall_y;
            if (std::abs(b) < fit.r) {
                const double x0 = std::sqrt(fit.r * fit.r - b * b);
                return M_PI - std::atan2(x0, b);
            }
        }
        Vec2 dir;
        if (fit_line_dir(pts, dir))
            return lo_edge ? M_PI - std::atan2(dir.y, dir.x) : std::atan2(dir.y, dir.x);
        throw std::runtime_error("measure_contact_angle: indeterminate contact geometry");
    }

    const auto pts_lo =
        interface_points_near(Eb, ob, best_lo, info.floor_row[best_lo], wall.window);
    const auto pts_hi =
        interface_points_near(Eb, ob, best_hi, info.floor_row[best_hi], wall.window);

    // Preferred estimate: one least-squares circle through both contact
    // windows, intersected with the wall plane. A straight interface leaves
    // the circle underdetermined; fall back to per-endpoint line fits, which
    // are exact in that case.
    if (info.floor_row[best_lo] == info.floor_row[best_hi]) {
        std::vector<Vec2> joint = pts_lo;
        joint.insert(joint.end(), pts_hi.begin(), pts_hi.end());
        CircleFit fit;
        if (fit_circle(joint, fit)) {
            const double wall_y = info.floor_row[best_lo]; // bottom face of the floor row
            const double b = fit.cy - wall_y;
            if (std::abs(b) < fit.r) {
                const double x0 = std::sqrt(fit.r * fit.r - b * b);
                return M_PI - std::atan2(x0, b);
            }
        }
    }

    double sum = 0.0;
    int found = 0;
    Vec2 dir;
    if (fit_line_dir(pts_lo, dir)) {
        sum += std::atan2(dir.y, dir.x); // droplet lies to the right
        ++found;
    }
    if (fit_line_dir(pts_hi, dir)) {
        sum += M_PI - std::atan2(dir.y, dir.x); // droplet lies to the left
        ++found;
    }
    if (found == 0)
        throw std::runtime_error("measure_contact_angle: indeterminate contact geometry");
    return sum / found;
}

DualityCheck complement_duality_check(const CapillaryProblem& p, const GridMask& F) {
    CapillaryEvaluator ev(p);
    require_subset(F, p.domain.omega, "complement_duality_check");

    GridMask comp = p.domain.omega;
    for (std::size_t k = 0; k < comp.cells.size(); ++k)
        comp.cells[k] = p.domain.omega.cells[k] && !F.cells[k];

    const auto lhs_parts = ev.energy_parts(comp);
    const auto rhs_parts = ev.energy_parts(F);
    DualityCheck out;
    out.lhs = lhs_parts.i1 + p.sigma * lhs_parts.i2;
    out.rhs = rhs_parts.i1 - p.sigma * rhs_parts.i2 + p.sigma * ev.container_wall_energy();
    out.defect = std::abs(out.lhs - out.rhs);
    return out;
}

} // namespace nlcap
