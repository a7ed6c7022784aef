#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlcap/capillary.hpp"
#include "nlcap/grid.hpp"
#include "nlcap/interaction.hpp"
#include "nlcap/kernel.hpp"
#include "nlcap/young.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace py = pybind11;
using namespace nlcap;

namespace {

PhiProfile make_phi(const std::optional<std::vector<double>>& values, double s) {
    if (!values) return PhiProfile::constant(1.0, s);
    return PhiProfile::from_samples(*values, s, true);
}

GridMask mask_from_rows(const std::vector<std::vector<int>>& rows, double h) {
    if (rows.empty() || rows.front().empty())
        throw std::invalid_argument("mask rows must be non-empty");
    const int ny = static_cast<int>(rows.size());
    const int nx = static_cast<int>(rows.front().size());
    GridMask m = make_grid_mask(nx, ny, h, Vec2{0.0, 0.0});
    for (int j = 0; j < ny; ++j) {
        if (static_cast<int>(rows[static_cast<std::size_t>(j)].size()) != nx)
            throw std::invalid_argument("mask rows must have equal length");
        for (int i = 0; i < nx; ++i)
            m.set(i, j, rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] != 0);
    }
    return m;
}

std::vector<std::vector<int>> rows_from_mask(const GridMask& m) {
    std::vector<std::vector<int>> rows(static_cast<std::size_t>(m.ny),
                                       std::vector<int>(static_cast<std::size_t>(m.nx), 0));
    for (int j = 0; j < m.ny; ++j)
        for (int i = 0; i < m.nx; ++i)
            rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                m.at(i, j) ? 1 : 0;
    return rows;
}

WallSide wall_from_name(const std::string& name) {
    if (name == "bottom") return WallSide::Bottom;
    if (name == "top") return WallSide::Top;
    if (name == "left") return WallSide::Left;
    if (name == "right") return WallSide::Right;
    throw std::invalid_argument("wall must be bottom|top|left|right");
}

} // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Nonlocal capillarity: contact angles, slab constants, droplet shapes";

    mod.def("c_star", &c_star, py::arg("n"), py::arg("s"),
            "Closed-form constant of the half-space slab interaction");

    mod.def(
        "solve_angle",
        [](double s1, double s2, double sigma,
           std::optional<std::vector<double>> phi1,
           std::optional<std::vector<double>> phi2) {
            YoungProblem p;
            p.s1 = s1;
            p.s2 = s2;
            p.sigma = sigma;
            p.phi1 = make_phi(phi1, s1);
            p.phi2 = make_phi(phi2, s1);
            const AngleSolution sol = solve_contact_angle(p);
            py::dict d;
            d["regime"] = to_string(sol.regime);
            d["theta"] = sol.theta;
            d["residual"] = sol.residual;
            d["unique"] = sol.unique && !sol.plateau;
            d["sigma_bound"] = sol.sigma_bound;
            d["plateau"] = sol.plateau;
            return d;
        },
        py::arg("s1"), py::arg("s2"), py::arg("sigma"),
        py::arg("phi1") = py::none(), py::arg("phi2") = py::none(),
        "Solve the nonlocal Young's-law angle; phi tables sample [0, 2*pi)");

    mod.def(
        "young_deficit",
        [](double theta, double s1, double s2, double sigma,
           std::optional<std::vector<double>> phi1,
           std::optional<std::vector<double>> phi2) {
            YoungProblem p;
            p.s1 = s1;
            p.s2 = s2;
            p.sigma = sigma;
            p.phi1 = make_phi(phi1, s1);
            p.phi2 = make_phi(phi2, s1);
            return young_deficit(p, theta);
        },
        py::arg("theta"), py::arg("s1"), py::arg("s2"), py::arg("sigma"),
        py::arg("phi1") = py::none(), py::arg("phi2") = py::none());

    mod.def(
        "sigma_bound",
        [](double s1, std::optional<std::vector<double>> phi1,
           std::optional<std::vector<double>> phi2) {
            return sigma_bound(make_phi(phi1, s1), make_phi(phi2, s1), s1);
        },
        py::arg("s1"), py::arg("phi1") = py::none(), py::arg("phi2") = py::none());

    mod.def(
        "dual_angle",
        [](double s1, double theta, double c,
           std::optional<std::vector<double>> phi1) {
            const DualAngleResult d = dual_angle(make_phi(phi1, s1), s1, theta, c);
            py::dict out;
            out["theta_hat"] = d.theta_hat;
            out["residual"] = d.residual;
            return out;
        },
        py::arg("s1"), py::arg("theta"), py::arg("c") = 0.0,
        py::arg("phi1") = py::none());

    mod.def(
        "slab_halfspace",
        [](int n, double s, double r, double t) {
            const SlabResult res = slab_halfspace_interaction(n, s, r, t, {});
            return py::make_tuple(res.numeric, res.reference);
        },
        py::arg("n"), py::arg("s"), py::arg("r"), py::arg("t"),
        "Returns (numeric, closed_form) for the slab/half-space interaction");

    mod.def(
        "slab_annulus",
        [](int n, double s, double r, double t) {
            const SlabResult res = slab_annulus_bound(n, s, r, t, {});
            return py::make_tuple(res.numeric, res.reference);
        },
        py::arg("n"), py::arg("s"), py::arg("r"), py::arg("t"));

    mod.def(
        "minimize_droplet",
        [](int nx, int ny, double h, double s1, double s2, double sigma, long m,
           const std::string& wall, int window, int sweeps, double cooling,
           double t0, unsigned long seed, double g) {
            CapillaryProblem p;
            p.domain.omega = make_grid_mask(nx, ny, h, Vec2{0.0, 0.0});
            for (auto& c : p.domain.omega.cells) c = 1;
            if (g != 0.0) p.domain.g_field.assign(p.domain.omega.cells.size(), g);
            p.K1 = KernelSpec::make_homogeneous(2, s1, AnisotropyFn::constant(2));
            p.K2 = KernelSpec::make_homogeneous(2, s2, AnisotropyFn::constant(2));
            p.sigma = sigma;
            p.m = m;
            if (!wall.empty() && wall != "none")
                p.wall = WallSpec{wall_from_name(wall), window};
            AnnealSchedule schedule;
            schedule.sweeps = sweeps;
            schedule.cooling = cooling;
            schedule.initial_temperature = t0;
            schedule.seed = seed;
            const MinimizeReport rep = minimize(p, schedule);
            py::dict d;
            d["mask"] = rows_from_mask(rep.final_mask);
            d["final_energy"] = rep.final_energy;
            d["trace"] = rep.energy_trace;
            d["accepted_moves"] = rep.accepted_moves;
            d["measured_angle"] =
                rep.measured_angle ? py::cast(*rep.measured_angle) : py::none();
            d["wall_contact_fraction"] = rep.wall_contact_fraction;
            return d;
        },
        py::arg("nx"), py::arg("ny"), py::arg("h"), py::arg("s1"), py::arg("s2"),
        py::arg("sigma"), py::arg("m"), py::arg("wall") = "bottom",
        py::arg("window") = 8, py::arg("sweeps") = 500, py::arg("cooling") = 0.995,
        py::arg("t0") = -1.0, py::arg("seed") = 1, py::arg("g") = 0.0,
        "Anneal a volume-constrained droplet in a box container");

    mod.def(
        "measure_angle",
        [](const std::vector<std::vector<int>>& e_rows,
           const std::vector<std::vector<int>>& omega_rows, const std::string& wall,
           int window) {
            const GridMask E = mask_from_rows(e_rows, 1.0);
            const GridMask om = mask_from_rows(omega_rows, 1.0);
            return measure_contact_angle(E, om, WallSpec{wall_from_name(wall), window});
        },
        py::arg("droplet"), py::arg("container"), py::arg("wall") = "bottom",
        py::arg("window") = 8);

    mod.def(
        "complement_duality",
        [](const std::vector<std::vector<int>>& omega_rows,
           const std::vector<std::vector<int>>& f_rows, double s1, double s2,
           double sigma) {
            CapillaryProblem p;
            p.domain.omega = mask_from_rows(omega_rows, 1.0);
            p.K1 = KernelSpec::make_homogeneous(2, s1, AnisotropyFn::constant(2));
            p.K2 = KernelSpec::make_homogeneous(2, s2, AnisotropyFn::constant(2));
            p.sigma = sigma;
            p.m = 1;
            const DualityCheck d = complement_duality_check(p, mask_from_rows(f_rows, 1.0));
            py::dict out;
            out["lhs"] = d.lhs;
            out["rhs"] = d.rhs;
            out["defect"] = d.defect;
            return out;
        },
        py::arg("container"), py::arg("droplet"), py::arg("s1"), py::arg("s2"),
        py::arg("sigma"));
}
