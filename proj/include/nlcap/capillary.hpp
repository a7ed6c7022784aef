#pragma once

#include "nlcap/grid.hpp"
#include "nlcap/interaction.hpp"
#include "nlcap/kernel.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace nlcap {

enum class WallSide { Bottom, Top, Left, Right };

struct WallSpec {
    WallSide side = WallSide::Bottom;
    int window = 8; // Chebyshev radius (cells) for the interface line fit
};

struct CapillaryProblem {
    GridDomain domain;
    KernelSpec K1;
    KernelSpec K2;
    double sigma = 0.0;
    long m = 0; // droplet volume in cells, 0 < m < |Omega|
    std::optional<WallSpec> wall;
    void validate() const;
};

struct AnnealSchedule {
    double initial_temperature = -1.0; // < 0: auto-scale to energy/(10 m)
    double cooling = 0.995;            // geometric factor per sweep
    int sweeps = 500;
    std::uint64_t seed = 1;
};

struct MinimizeReport {
    GridMask final_mask;
    double final_energy = 0.0;
    std::vector<std::pair<long, double>> energy_trace; // (sweep, energy)
    long accepted_moves = 0;
    std::optional<double> measured_angle; // radians, when a wall is declared
    double wall_contact_fraction = 0.0;
};

struct DualityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double defect = 0.0;
};

// Precomputed per-problem tables: pair energies by offset, container
// potential, wall potential. Shared by the energy/measure entry points and
// reusable across many masks on the same problem.
class CapillaryEvaluator {
public:
    explicit CapillaryEvaluator(const CapillaryProblem& p);

    struct Parts {
        double i1 = 0.0;   // I_1(E, E^c cap Omega)
        double i2 = 0.0;   // I_2(E, Omega^c)
        double grav = 0.0; // h^2 sum_E g
    };
    Parts energy_parts(const GridMask& E) const;
    double energy(const GridMask& E) const;
    double move_delta(const GridMask& E, const std::vector<double>& S,
                      std::size_t cell_out, std::size_t cell_in) const;

    const CapillaryProblem& problem() const { return *p_; }
    double container_wall_energy() const { return i2_omega_; } // I_2(Omega, Omega^c)
    double u_omega(std::size_t c) const { return u_omega_[c]; }
    double w2(std::size_t c) const { return w2_[c]; }
    double pair_value(int di, int dj) const { return v1_.at(di, dj); }
    void build_field(const GridMask& E, std::vector<double>& S) const;
    void shift_field(std::vector<double>& S, std::size_t cell_out,
                     std::size_t cell_in) const;

private:
    const CapillaryProblem* p_;
    OffsetTable v1_;
    std::vector<double> u_omega_; // sum over Omega cells of V1(e - c)
    std::vector<double> w2_;      // I_2 potential of Omega^c per cell
    std::vector<double> gval_;    // h^2 g per cell
    double i2_omega_ = 0.0;
};

double energy_eval(const CapillaryProblem& p, const GridMask& E);
double delta_energy(const CapillaryProblem& p, const GridMask& E, std::size_t cell_out,
                    std::size_t cell_in);
MinimizeReport minimize(const CapillaryProblem& p, const AnnealSchedule& schedule);

// Discrete contact angle from a least-squares interface fit near the contact
// points; 0 and pi encode the sticking/detachment signatures.
double measure_contact_angle(const GridMask& E, const GridMask& omega,
                             const WallSpec& wall);

double wall_contact_fraction(const GridMask& E, const GridMask& omega, WallSide side);

// lhs = C_sigma(Omega \ F), rhs = C_{-sigma}(F) + sigma I_2(Omega, Omega^c),
// both with g == 0; the identity is exact at the discrete level.
DualityCheck complement_duality_check(const CapillaryProblem& p, const GridMask& F);

} // namespace nlcap
