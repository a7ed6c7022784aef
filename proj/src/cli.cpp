#include "nlcap/cli.hpp"

#include "nlcap/capillary.hpp"
#include "nlcap/config.hpp"
#include "nlcap/errors.hpp"
#include "nlcap/grid.hpp"
#include "nlcap/interaction.hpp"
#include "nlcap/kernel.hpp"
#include "nlcap/young.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace nlcap {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double to_degrees(double rad) { return rad * 180.0 / M_PI; }

int worker_count() {
    const char* env = std::getenv("NLCAP_WORKERS");
    if (!env || !*env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1)
        throw std::invalid_argument("NLCAP_WORKERS must be a positive integer");
    return static_cast<int>(std::min(v, 64L));
}

// Runs fn(0..n-1), fanning out across `workers` threads; results must be
// written into per-index slots so output order never depends on scheduling.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t k = 0; k < n; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mtx;
    auto work = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= n) return;
            try {
                fn(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mtx);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = static_cast<int>(std::min<std::size_t>(workers, n));
    pool.reserve(count);
    for (int w = 0; w < count; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::filesystem::path prepare_outdir(const RunConfig& cfg) {
    const std::filesystem::path dir = cfg.get_string("out", std::string("out"));
    std::filesystem::create_directories(dir);
    write_text_file(dir / "config.txt", cfg.echo());
    return dir;
}

double checked_s(const RunConfig& cfg, const std::string& key, double fallback) {
    const double s = cfg.get_number(key, fallback);
    if (!(s > 0.0 && s < 1.0))
        throw std::invalid_argument("config: " + key + " must lie in (0,1)");
    return s;
}

double checked_lambda(const RunConfig& cfg) {
    const double lambda = cfg.get_number("lambda", 1.0);
    if (!(lambda >= 1.0))
        throw std::invalid_argument("config: lambda must be >= 1");
    return lambda;
}

// Profile settings: "const", "const:<value>", or "table:<path>".
PhiProfile load_profile(const RunConfig& cfg, const std::string& key, double s) {
    const std::string spec = cfg.get_string(key, std::string("const"));
    if (spec == "const") return PhiProfile::constant(1.0, s);
    if (spec.rfind("const:", 0) == 0) {
        const double v = std::stod(spec.substr(6));
        return PhiProfile::constant(v, s);
    }
    if (spec.rfind("table:", 0) == 0)
        return PhiProfile::load_table(spec.substr(6), s);
    throw std::invalid_argument("config: " + key +
                                " must be const, const:<v>, or table:<path>");
}

YoungProblem young_from_config(const RunConfig& cfg) {
    YoungProblem p;
    p.s1 = checked_s(cfg, "s1", 0.5);
    p.s2 = checked_s(cfg, "s2", p.s1);
    p.sigma = cfg.get_number("sigma", 0.0);
    p.phi1 = load_profile(cfg, "phi1", p.s1);
    p.phi2 = load_profile(cfg, "phi2", p.s1);
    return p;
}

const std::vector<std::string> kAngleKeys = {"s1",   "s2",  "sigma", "phi1",
                                             "phi2", "out", "seed"};

int cmd_solve_angle(RunConfig cfg, std::ostream& out) {
    cfg.restrict_keys(kAngleKeys);
    const YoungProblem p = young_from_config(cfg);
    cfg.set("s1", fmt(p.s1));
    cfg.set("s2", fmt(p.s2));
    cfg.set("sigma", fmt(p.sigma));
    const auto dir = prepare_outdir(cfg);

    AngleSolution sol;
    try {
        sol = solve_contact_angle(p);
    } catch (const no_interior_solution& e) {
        out << "no interior solution: " << e.what() << "\n";
        return 2;
    }

    const std::string unique = sol.unique && !sol.plateau ? "yes" : "no";
    out << "regime = " << to_string(sol.regime) << "\n"
        << "theta_rad = " << fmt(sol.theta) << "\n"
        << "theta_deg = " << fmt(to_degrees(sol.theta)) << "\n"
        << "residual = " << fmt(sol.residual) << "\n"
        << "sigma_bound = " << fmt(sol.sigma_bound) << "\n"
        << "unique = " << unique << "\n";
    if (sol.plateau)
        out << "plateau = [" << fmt(sol.plateau_lo) << ", " << fmt(sol.plateau_hi)
            << "]\n";

    std::ostringstream csv;
    csv << "regime,theta_rad,theta_deg,residual,sigma_bound,unique\n"
        << to_string(sol.regime) << ',' << fmt(sol.theta) << ','
        << fmt(to_degrees(sol.theta)) << ',' << fmt(sol.residual) << ','
        << fmt(sol.sigma_bound) << ',' << unique << "\n";
    write_text_file(dir / "angle.csv", csv.str());
    return sol.plateau ? 3 : 0;
}

const std::vector<std::string> kScanKeys = {"s1",   "s2",    "sigma", "phi1", "phi2",
                                            "out",  "seed",  "sweep", "from", "to",
                                            "steps"};

int cmd_scan(RunConfig cfg, std::ostream& out) {
    cfg.restrict_keys(kScanKeys);
    const std::string sweep = cfg.get_string("sweep", std::string("sigma"));
    if (sweep != "sigma" && sweep != "s1")
        throw std::invalid_argument("config: sweep must be sigma or s1");
    const double from = cfg.get_number("from");
    const double to = cfg.get_number("to");
    const long steps = cfg.get_integer("steps");
    if (steps < 1) throw std::invalid_argument("config: steps must be >= 1");
    if (steps > 100000) throw std::invalid_argument("config: steps too large");

    std::vector<double> values(static_cast<std::size_t>(steps));
    for (long k = 0; k < steps; ++k)
        values[static_cast<std::size_t>(k)] =
            steps == 1 ? from : from + (to - from) * k / double(steps - 1);
    if (sweep == "s1")
        for (double v : values)
            if (!(v > 0.0 && v < 1.0))
                throw std::invalid_argument("config: s1 sweep leaves (0,1)");

    const YoungProblem base = young_from_config(cfg);
    cfg.set("sweep", sweep);
    cfg.set("s1", fmt(base.s1));
    cfg.set("s2", fmt(base.s2));
    cfg.set("sigma", fmt(base.sigma));
    const auto dir = prepare_outdir(cfg);

    std::vector<std::string> rows(values.size());
    parallel_for(values.size(), worker_count(), [&](std::size_t k) {
        YoungProblem p = base;
        if (sweep == "sigma")
            p.sigma = values[k];
        else {
            p.s1 = values[k];
            p.phi1 = PhiProfile::from_samples(base.phi1.values(), p.s1, true);
            p.phi2 = PhiProfile::from_samples(base.phi2->values(), p.s1, true);
        }
        std::ostringstream row;
        row << fmt(values[k]) << ',';
        try {
            const AngleSolution sol = solve_contact_angle(p);
            row << fmt(sol.theta) << ',' << fmt(to_degrees(sol.theta)) << ','
                << fmt(sol.residual) << ',' << to_string(sol.regime);
        } catch (const no_interior_solution&) {
            row << ",,,NoInterior";
        }
        rows[k] = row.str();
    });

    std::ostringstream csv;
    csv << "parameter,theta_rad,theta_deg,residual,regime\n";
    for (const std::string& r : rows) csv << r << "\n";
    write_text_file(dir / "scan.csv", csv.str());
    out << csv.str();
    return 0;
}

struct CheckLog {
    std::ostream& out;
    bool all_pass = true;
    void check(const std::string& name, bool pass, const std::string& detail) {
        all_pass = all_pass && pass;
        out << (pass ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
    }
};

void verify_cstar(CheckLog& log) {
    QuadratureParams q;
    for (int n : {2, 3}) {
        const SlabResult base = slab_halfspace_interaction(n, 0.5, 1.0, 1.0, q);
        const double rel = std::abs(base.numeric - base.reference) / base.reference;
        log.check("slab-closed-form-n" + std::to_string(n), rel <= 0.02,
                  "numeric " + fmt(base.numeric) + " vs " + fmt(base.reference) +
                      ", rel " + fmt(rel));
        const SlabResult tt = slab_halfspace_interaction(n, 0.5, 1.0, 2.0, q);
        const double t_ratio = tt.numeric / base.numeric;
        const double t_expect = std::pow(2.0, 1.0 - 0.5);
        log.check("slab-t-scaling-n" + std::to_string(n),
                  std::abs(t_ratio / t_expect - 1.0) <= 0.02,
                  "ratio " + fmt(t_ratio) + " vs " + fmt(t_expect));
        const SlabResult rr = slab_halfspace_interaction(n, 0.5, 2.0, 1.0, q);
        const double r_ratio = rr.numeric / base.numeric;
        const double r_expect = std::pow(2.0, n - 1.0);
        log.check("slab-r-scaling-n" + std::to_string(n),
                  std::abs(r_ratio / r_expect - 1.0) <= 0.02,
                  "ratio " + fmt(r_ratio) + " vs " + fmt(r_expect));
    }
}

void verify_reduction(CheckLog& log) {
    for (double s1 : {0.3, 0.7})
        for (double theta : {M_PI / 6.0, M_PI / 2.0, 2.0 * M_PI / 3.0}) {
            YoungProblem p;
            p.s1 = p.s2 = s1;
            p.sigma = 0.3;
            p.phi1 = PhiProfile::constant(1.0, s1);
            p.phi2 = PhiProfile::constant(1.0, s1);
            const WedgeResidual r = wedge_young_residual(p, theta);
            const double scale = std::max(std::abs(r.reduced), std::abs(r.direct));
            const bool pass = std::abs(r.reduced - r.direct) <= 1e-4 * scale;
            log.check("reduction-s" + fmt(s1) + "-theta" + fmt(theta), pass,
                      "reduced " + fmt(r.reduced) + " vs direct " + fmt(r.direct));
        }
}

void verify_duality(CheckLog& log, unsigned long seed) {
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 4; ++trial) {
        GridMask omega = make_grid_mask(16, 16, 1.0, Vec2{0.0, 0.0});
        for (auto& c : omega.cells) c = 1;
        GridMask F = make_grid_mask(16, 16, 1.0, Vec2{0.0, 0.0});
        std::uniform_int_distribution<int> coin(0, 1);
        long count = 0;
        for (auto& c : F.cells) count += (c = static_cast<unsigned char>(coin(rng)));
        if (count == 0) F.cells[0] = 1;
        for (double sigma : {-1.0, -0.3, 0.5, 2.0}) {
            CapillaryProblem p;
            p.domain.omega = omega;
            p.K1 = KernelSpec::make_homogeneous(2, 0.5, AnisotropyFn::constant(2));
            p.K2 = KernelSpec::make_homogeneous(2, 0.4, AnisotropyFn::constant(2));
            p.sigma = sigma;
            p.m = 1; // irrelevant to the identity; must merely be feasible
            const DualityCheck d = complement_duality_check(p, F);
            const bool pass = d.defect <= 1e-9 * (1.0 + std::abs(d.lhs));
            log.check("duality-trial" + std::to_string(trial) + "-sigma" + fmt(sigma),
                      pass, "lhs " + fmt(d.lhs) + " rhs " + fmt(d.rhs) + " defect " +
                                fmt(d.defect));
        }
    }
}

void verify_dual_angle(CheckLog& log) {
    const AnisotropyFn iso = AnisotropyFn::constant(2);
    for (double s1 : {0.3, 0.6})
        for (double theta : {M_PI / 3.0, 3.0 * M_PI / 5.0}) {
            const DualAngleResult d = dual_angle(iso, s1, theta, 0.0);
            log.check("dual-angle-const-s" + fmt(s1) + "-theta" + fmt(theta),
                      std::abs(d.theta_hat - theta) <= 1e-6,
                      "theta_hat " + fmt(d.theta_hat) + " vs " + fmt(theta));
        }
    const AnisotropyFn aniso =
        AnisotropyFn::from_angular([](double psi) { return 1.0 + 0.3 * std::cos(2.0 * psi); });
    const double s1 = 0.5;
    YoungProblem p;
    p.s1 = p.s2 = s1;
    p.sigma = 0.0;
    p.phi1 = build_phi(aniso, 2, s1);
    const AngleSolution sol = solve_contact_angle(p);
    const DualAngleResult d = dual_angle(aniso, s1, sol.theta, 0.0);
    log.check("dual-angle-anisotropic",
              std::abs(d.theta_hat - (M_PI - sol.theta)) <= 1e-4,
              "theta_hat " + fmt(d.theta_hat) + " vs " + fmt(M_PI - sol.theta));
}

const std::vector<std::string> kVerifyKeys = {"suite", "out", "seed"};

int cmd_verify(RunConfig cfg, std::ostream& out, std::ostream& err) {
    cfg.restrict_keys(kVerifyKeys);
    const std::string suite = cfg.get_string("suite");
    const unsigned long seed = static_cast<unsigned long>(cfg.get_integer("seed", 1));
    CheckLog log{out};
    if (suite == "cstar")
        verify_cstar(log);
    else if (suite == "reduction")
        verify_reduction(log);
    else if (suite == "duality")
        verify_duality(log, seed);
    else if (suite == "dual-angle")
        verify_dual_angle(log);
    else {
        err << "unknown suite \"" << suite
            << "\" (expected cstar | reduction | duality | dual-angle)\n";
        return 1;
    }
    return log.all_pass ? 0 : 1;
}

WallSide parse_wall(const std::string& name) {
    if (name == "bottom") return WallSide::Bottom;
    if (name == "top") return WallSide::Top;
    if (name == "left") return WallSide::Left;
    if (name == "right") return WallSide::Right;
    throw std::invalid_argument("config: wall must be bottom|top|left|right|none");
}

const std::vector<std::string> kMinimizeKeys = {
    "nx", "ny", "h", "s1", "s2", "sigma", "lambda", "m", "wall",
    "window", "sweeps", "cooling", "t0", "seed", "g", "out"};

int cmd_minimize(RunConfig cfg, std::ostream& out) {
    cfg.restrict_keys(kMinimizeKeys);
    const long nx = cfg.get_integer("nx");
    const long ny = cfg.get_integer("ny");
    if (nx < 2 || ny < 2 || nx > 512 || ny > 512)
        throw std::invalid_argument("config: nx, ny must lie in [2, 512]");
    const double h = cfg.get_number("h", 1.0);
    if (!(h > 0.0)) throw std::invalid_argument("config: h must be positive");
    const double s1 = checked_s(cfg, "s1", 0.5);
    const double s2 = checked_s(cfg, "s2", s1);
    const double lambda = checked_lambda(cfg);
    const long m = cfg.get_integer("m");
    const double g = cfg.get_number("g", 0.0);
    const std::string wall_name = cfg.get_string("wall", std::string("bottom"));
    const long window = cfg.get_integer("window", 8);
    const std::vector<double> sigmas = cfg.get_number_list("sigma");

    AnnealSchedule schedule;
    schedule.sweeps = static_cast<int>(cfg.get_integer("sweeps", 500));
    schedule.cooling = cfg.get_number("cooling", 0.995);
    schedule.initial_temperature = cfg.get_number("t0", -1.0);
    schedule.seed = static_cast<unsigned long>(cfg.get_integer("seed", 1));

    GridDomain domain;
    domain.omega = make_grid_mask(static_cast<int>(nx), static_cast<int>(ny), h,
                                  Vec2{0.0, 0.0});
    for (auto& c : domain.omega.cells) c = 1;
    if (g != 0.0) domain.g_field.assign(domain.omega.cells.size(), g);

    cfg.set("h", fmt(h));
    cfg.set("s1", fmt(s1));
    cfg.set("s2", fmt(s2));
    cfg.set("lambda", fmt(lambda));
    cfg.set("g", fmt(g));
    cfg.set("wall", wall_name);
    cfg.set("window", std::to_string(window));
    cfg.set("sweeps", std::to_string(schedule.sweeps));
    cfg.set("cooling", fmt(schedule.cooling));
    cfg.set("t0", fmt(schedule.initial_temperature));
    cfg.set("seed", std::to_string(schedule.seed));
    const auto dir = prepare_outdir(cfg);

    struct Row {
        std::string angle_csv;
        std::string summary;
    };
    std::vector<Row> results(sigmas.size());
    parallel_for(sigmas.size(), worker_count(), [&](std::size_t k) {
        CapillaryProblem p;
        p.domain = domain;
        p.K1 = KernelSpec::make_homogeneous(2, s1, AnisotropyFn::constant(2), lambda);
        p.K2 = KernelSpec::make_homogeneous(2, s2, AnisotropyFn::constant(2), lambda);
        p.sigma = sigmas[k];
        p.m = m;
        if (wall_name != "none")
            p.wall = WallSpec{parse_wall(wall_name), static_cast<int>(window)};

        const MinimizeReport rep = minimize(p, schedule);

        const std::string suffix =
            sigmas.size() == 1 ? std::string() : "_" + std::to_string(k);
        write_mask_raster(rep.final_mask, (dir / ("mask" + suffix + ".pbm")).string());
        std::ostringstream trace;
        trace << "sweep,energy\n";
        for (const auto& [sweep, energy] : rep.energy_trace)
            trace << sweep << ',' << fmt(energy) << "\n";
        write_text_file(dir / ("trace" + suffix + ".csv"), trace.str());

        std::ostringstream row;
        if (p.wall) {
            double pred = std::numeric_limits<double>::quiet_NaN();
            try {
                YoungProblem yp;
                yp.s1 = s1;
                yp.s2 = s2;
                yp.sigma = sigmas[k];
                yp.phi1 = PhiProfile::constant(1.0, s1);
                yp.phi2 = PhiProfile::constant(1.0, s1);
                pred = solve_contact_angle(yp).theta;
            } catch (const no_interior_solution&) {
            }
            row << fmt(sigmas[k]) << ',' << fmt(pred) << ',' << fmt(to_degrees(pred))
                << ',';
            if (rep.measured_angle)
                row << fmt(*rep.measured_angle) << ','
                    << fmt(to_degrees(*rep.measured_angle));
            else
                row << ',';
            row << '\n';
        }
        results[k].angle_csv = row.str();

        std::ostringstream sum;
        sum << "sigma " << fmt(sigmas[k]) << ": energy " << fmt(rep.final_energy)
            << ", accepted " << rep.accepted_moves;
        if (rep.measured_angle)
            sum << ", theta_meas " << fmt(to_degrees(*rep.measured_angle)) << " deg";
        if (p.wall) sum << ", wall contact " << fmt(rep.wall_contact_fraction);
        results[k].summary = sum.str();
    });

    if (wall_name != "none") {
        std::ostringstream csv;
        csv << "sigma,theta_pred_rad,theta_pred_deg,theta_meas_rad,theta_meas_deg\n";
        for (const Row& r : results) csv << r.angle_csv;
        write_text_file(dir / "angle.csv", csv.str());
    }
    for (const Row& r : results) out << r.summary << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    static const char* usage =
        "usage: nlcap <solve-angle|scan|verify|minimize> <config-file | key=value> "
        "[key=value ...]\n";
    if (args.empty()) {
        err << usage;
        return 1;
    }
    const std::string& command = args[0];
    try {
        RunConfig cfg;
        std::size_t first_override = 1;
        if (args.size() > 1 && args[1].find('=') == std::string::npos) {
            // "verify cstar" names a suite, not a config file
            if (command == "verify") {
                cfg.set("suite", args[1]);
            } else {
                cfg = RunConfig::from_file(args[1]);
            }
            first_override = 2;
        }
        for (std::size_t k = first_override; k < args.size(); ++k)
            cfg.override_entry(args[k]);

        if (command == "solve-angle") return cmd_solve_angle(std::move(cfg), out);
        if (command == "scan") return cmd_scan(std::move(cfg), out);
        if (command == "verify") return cmd_verify(std::move(cfg), out, err);
        if (command == "minimize") return cmd_minimize(std::move(cfg), out);
        err << "unknown command \"" << command << "\"\n" << usage;
        return 1;
    } catch (const no_interior_solution& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace nlcap
