// Batch front-end: reads a JSON experiment configuration, runs the
// requested study, and emits CSV/JSON artifacts plus a checksum manifest.
//
// Exit codes: 0 success, 2 validation failure (bad config or violated
// model hypotheses), 3 numerical failure (non-convergence, drift).
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "oceanlab/oceanlab.hpp"

using json = nlohmann::json;
using namespace oceanlab;

namespace {

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

json load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open config file: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("config is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");
    return j;
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& ctx) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("unknown key \"" + it.key() + "\" in " + ctx);
}

double num(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw std::invalid_argument("missing or non-numeric \"" + key + "\" in " + ctx);
    return j.at(key).get<double>();
}

double num_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number())
        throw std::invalid_argument("non-numeric \"" + key + "\"");
    return j.at(key).get<double>();
}

int integer(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key) || !j.at(key).is_number_integer())
        throw std::invalid_argument("missing or non-integer \"" + key + "\" in " + ctx);
    return j.at(key).get<int>();
}

const json& section(const json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_object())
        throw std::invalid_argument("missing \"" + key + "\" section in config");
    return j.at(key);
}

Grid parse_grid(const json& cfg) {
    const json& j = section(cfg, "grid");
    check_keys(j, {"nx", "ny", "nz", "L"}, "grid");
    return Grid(integer(j, "nx", "grid"), integer(j, "ny", "grid"), integer(j, "nz", "grid"),
                num(j, "L", "grid"));
}

CoriolisProfile parse_coriolis(const json& cfg) {
    const json& j = section(cfg, "coriolis");
    check_keys(j, {"type", "beta"}, "coriolis");
    std::string type = j.value("type", "linear");
    if (type == "linear") return CoriolisProfile::linear(num_or(j, "beta", 1.0));
    if (type == "sine") return CoriolisProfile::sine();
    if (type == "quadratic") return CoriolisProfile::quadratic();
    throw std::invalid_argument("unknown coriolis type \"" + type + "\"");
}

WindStress parse_stress(const json& cfg) {
    const json& j = section(cfg, "stress");
    check_keys(j, {"type", "k", "q", "mode", "amplitude"}, "stress");
    std::string type = j.value("type", "zonal_curl");
    int k = j.contains("k") ? integer(j, "k", "stress") : 2;
    double q = num_or(j, "q", 1.0);
    int mode = j.contains("mode") ? integer(j, "mode", "stress") : 1;
    double amp = num_or(j, "amplitude", 1.0);
    if (type == "zero") return WindStress::zero();
    if (type == "zonal_curl") return WindStress::zonal_curl(k, q, mode, amp);
    if (type == "meridional_curl") return WindStress::meridional_curl(k, q, mode, amp);
    if (type == "incompatible") return WindStress::incompatible(k, q);
    if (type == "low_order") return WindStress::low_order();
    throw std::invalid_argument("unknown stress type \"" + type + "\"");
}

SurfaceTemperature parse_theta1(const json& cfg) {
    const json& j = section(cfg, "surface_temperature");
    check_keys(j, {"type", "value", "q"}, "surface_temperature");
    std::string type = j.value("type", "gaussian");
    if (type == "constant") return SurfaceTemperature::constant(num(j, "value", "surface_temperature"));
    if (type == "gaussian") return SurfaceTemperature::gaussian(num_or(j, "q", 1.0));
    throw std::invalid_argument("unknown surface_temperature type \"" + type + "\"");
}

Parameters parse_parameters(const json& cfg, double beta) {
    const json& j = section(cfg, "parameters");
    check_keys(j, {"epsilon", "nu_h", "delta", "alpha", "lambda_heat"}, "parameters");
    return Parameters::theorem_scaling(num(j, "epsilon", "parameters"), num_or(j, "nu_h", 0.0),
                                       num(j, "delta", "parameters"), num_or(j, "alpha", 0.7),
                                       beta, num_or(j, "lambda_heat", 1.0));
}

std::vector<double> parse_epsilons(const json& cfg) {
    if (!cfg.contains("epsilons") || !cfg.at("epsilons").is_array())
        throw std::invalid_argument("missing \"epsilons\" array in config");
    std::vector<double> eps;
    for (const auto& v : cfg.at("epsilons")) {
        if (!v.is_number()) throw std::invalid_argument("non-numeric entry in \"epsilons\"");
        eps.push_back(v.get<double>());
    }
    return eps;
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

struct Emitter {
    std::filesystem::path out;
    Manifest manifest;

    void file(const std::string& name, const std::string& bytes) {
        manifest.add(name, write_file(out / name, bytes));
    }
    void finish() { write_file(out / "manifest.json", manifest.json()); }
};

json clauses_to_json(const ValidationReport& rep) {
    json arr = json::array();
    for (const auto& c : rep.clauses)
        arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return arr;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_validate(const json& cfg, Emitter& em) {
    check_keys(cfg, {"experiment", "grid", "coriolis", "stress", "parameters", "margin"},
               "config");
    Grid g = parse_grid(cfg);
    CoriolisProfile profile = parse_coriolis(cfg);
    WindStress stress = parse_stress(cfg);
    Parameters par = parse_parameters(cfg, profile.beta);
    double margin = num_or(cfg, "margin", 0.1);

    auto rep_b = validate_coriolis(profile, g);
    auto rep_s = validate_windstress(stress, g);
    auto rep_d = check_delta_conditions(par.epsilon, par.nu_h, par.delta, margin);

    json window = json::array();
    for (const auto& e : rep_d.entries)
        window.push_back({{"name", e.name}, {"ratio", e.ratio}, {"passed", e.passed}});

    bool ok = rep_b.all_passed() && rep_s.all_passed() && rep_d.all_passed();
    json out = {{"schema", "validation-v1"},
                {"passed", ok},
                {"coriolis", clauses_to_json(rep_b)},
                {"stress", clauses_to_json(rep_s)},
                {"truncation_window", window}};
    em.file("validation.json", out.dump(2) + "\n");
    em.finish();
    if (!ok) {
        std::string first;
        for (const auto& c : rep_b.clauses)
            if (!c.passed && first.empty()) first = c.name;
        for (const auto& c : rep_s.clauses)
            if (!c.passed && first.empty()) first = c.name;
        for (const auto& e : rep_d.entries)
            if (!e.passed && first.empty()) first = e.name;
        throw std::invalid_argument("hypothesis violated: " + first);
    }
    return 0;
}

int cmd_scales(const json& cfg, Emitter& em) {
    check_keys(cfg, {"experiment", "scales"}, "config");
    const json& j = section(cfg, "scales");
    check_keys(j, {"U", "W", "H", "D", "T", "Omega0", "Az", "Ah", "sigma_mag", "kappa"},
               "scales");
    PhysicalScales s{num(j, "U", "scales"),      num(j, "W", "scales"),
                     num(j, "H", "scales"),      num(j, "D", "scales"),
                     num(j, "T", "scales"),      num(j, "Omega0", "scales"),
                     num(j, "Az", "scales"),     num(j, "Ah", "scales"),
                     num(j, "sigma_mag", "scales"), num(j, "kappa", "scales")};
    Parameters p = nondimensionalize(s);
    json out = {{"schema", "scales-v1"},
                {"epsilon", p.epsilon},
                {"eta", p.eta},
                {"nu_z", p.nu_z},
                {"nu_h", p.nu_h},
                {"gamma", p.gamma},
                {"lambda_heat", p.lambda_heat}};
    em.file("scales.json", out.dump(2) + "\n");
    em.finish();
    return 0;
}

int cmd_stationary(const json& cfg, Emitter& em, int threads) {
    check_keys(cfg, {"experiment", "grid", "coriolis", "stress", "parameters"}, "config");
    Grid g = parse_grid(cfg);
    CoriolisProfile profile = parse_coriolis(cfg);
    WindStress stress = parse_stress(cfg);
    Parameters par = parse_parameters(cfg, profile.beta);

    StationarySolution sol = assemble_stationary(par, profile, stress, g);

    // Sample the assembled fields; planes are independent, so the loop
    // parallelizes without any cross-thread reduction.
    Field v = Field::volumetric(g, 3);
    Field p = Field::volumetric(g, 1);
    parallel_for(g.Nz, threads, [&](int k) {
        double z = g.z(k);
        for (int j = 0; j < g.Ny; ++j)
            for (int i = 0; i < g.Nx; ++i) {
                for (int c = 0; c < 3; ++c) v.at(c, i, j, k) = sol.velocity_at(c, i, j, z);
                p.at(0, i, j, k) = sol.pressure_at(i, j, z);
            }
    });

    CsvWriter csv({"x", "y", "z", "u1", "u2", "u3", "p"});
    for (int k = 0; k < g.Nz; ++k)
        for (int j = 0; j < g.Ny; ++j)
            for (int i = 0; i < g.Nx; ++i)
                csv.row({g.x(i), g.y(j), g.z(k), v.at(0, i, j, k), v.at(1, i, j, k),
                         v.at(2, i, j, k), p.at(0, i, j, k)});
    em.file("velocity.csv", csv.str());

    ResidualReport rep = apply_stationary_operator(sol);
    auto terms_json = [](const std::vector<ResidualReport::Term>& terms) {
        json arr = json::array();
        for (const auto& t : terms)
            arr.push_back(
                {{"name", t.name}, {"l2", t.l2}, {"dual", t.dual}, {"viscous", t.viscous}});
        return arr;
    };
    json out = {{"schema", "residual-v1"},
                {"r1_h_l2", rep.r1_h_l2},
                {"r2_h_l2", rep.r2_h_l2},
                {"r2_h_dual", rep.r2_h_dual},
                {"r1_3_l2", rep.r1_3_l2},
                {"r2_3_l2", rep.r2_3_l2},
                {"r2_3_dual", rep.r2_3_dual},
                {"breakdown_defect", rep.breakdown_defect},
                {"horizontal_terms", terms_json(rep.horizontal)},
                {"vertical_terms", terms_json(rep.vertical)}};
    em.file("residual.json", out.dump(2) + "\n");
    em.finish();
    return 0;
}

int cmd_residual_study(const json& cfg, Emitter& em) {
    check_keys(cfg,
               {"experiment", "grid", "coriolis", "stress", "epsilons", "delta_power",
                "nu_h_power", "alpha", "slope_tol"},
               "config");
    Grid g = parse_grid(cfg);
    CoriolisProfile profile = parse_coriolis(cfg);
    WindStress stress = parse_stress(cfg);
    std::vector<double> eps = parse_epsilons(cfg);
    double dp = num_or(cfg, "delta_power", 1.0);
    double np = num_or(cfg, "nu_h_power", 3.0);
    double alpha = num_or(cfg, "alpha", 0.7);
    double slope_tol = num_or(cfg, "slope_tol", 0.1);

    ScalingStudy study = scaling_study(
        profile, stress, eps, [dp](double e) { return std::pow(e, dp); },
        [np](double e) { return std::pow(e, np); }, g, alpha, slope_tol);

    std::vector<std::string> names;
    for (const auto& [name, values] : study.norms) names.push_back(name);
    std::vector<std::string> cols = {"epsilon"};
    cols.insert(cols.end(), names.begin(), names.end());
    CsvWriter csv(cols);
    for (std::size_t n = 0; n < eps.size(); ++n) {
        std::vector<double> row = {eps[n]};
        for (const auto& name : names) row.push_back(study.norms.at(name)[n]);
        csv.row(row);
    }
    em.file("study.csv", csv.str());

    json slopes;
    for (const auto& [name, slope] : study.slopes)
        slopes[name] = std::isnan(slope) ? json() : json(slope);
    json out = {{"schema", "residual-study-v1"},
                {"epsilons", eps},
                {"slopes", slopes},
                {"bl_slope_ok", study.bl_slope_ok},
                {"int_slope_ok", study.int_slope_ok},
                {"r1_decaying", study.r1_decaying},
                {"r2_decaying", study.r2_decaying}};
    em.file("study.json", out.dump(2) + "\n");
    em.finish();
    return 0;
}

int cmd_rossby(const json& cfg, Emitter& em, int threads) {
    check_keys(cfg,
               {"experiment", "grid", "epsilon", "beta", "nu_h", "psi", "times", "window"},
               "config");
    Grid g = parse_grid(cfg);
    double eps = num(cfg, "epsilon", "config");
    double beta = num_or(cfg, "beta", 1.0);
    double nu_h = num_or(cfg, "nu_h", 0.0);

    const json& psi = section(cfg, "psi");
    check_keys(psi, {"type", "amplitude", "width", "k", "m", "xi"}, "psi");
    std::string type = psi.value("type", "gaussian_packet");

    // Streamfunction samples; the velocity (-d_y psi, d_x psi) is taken
    // spectrally so the state is divergence-free mode by mode.
    std::vector<std::complex<double>> psihat(g.horizontal_size());
    if (type == "gaussian_packet") {
        double amp = num_or(psi, "amplitude", 1.0);
        double width = num(psi, "width", "psi");
        int k = integer(psi, "k", "psi");
        double xi = num(psi, "xi", "psi");
        for (int j = 0; j < g.Ny; ++j)
            for (int i = 0; i < g.Nx; ++i) {
                double x = g.x(i), y = g.y(j);
                psihat[std::size_t(j) * g.Nx + i] =
                    amp * std::exp(-y * y / (2.0 * width * width)) * std::cos(k * x + xi * y);
            }
    } else if (type == "mode") {
        int k = integer(psi, "k", "psi");
        int m = integer(psi, "m", "psi");
        double amp = num_or(psi, "amplitude", 1.0);
        double xi = M_PI * m / g.L;
        for (int j = 0; j < g.Ny; ++j)
            for (int i = 0; i < g.Nx; ++i)
                psihat[std::size_t(j) * g.Nx + i] = amp * std::sin(k * g.x(i) + xi * g.y(j));
    } else {
        throw std::invalid_argument("unknown psi type \"" + type + "\"");
    }
    fft_2d(psihat, g.Nx, g.Ny, true);

    SpectralState s0;
    s0.grid = g;
    s0.epsilon = eps;
    s0.beta = beta;
    s0.nu_h = nu_h;
    s0.v1hat.resize(g.horizontal_size());
    s0.v2hat.resize(g.horizontal_size());
    for (int j = 0; j < g.Ny; ++j) {
        double xi = s0.xi_of(j);
        for (int i = 0; i < g.Nx; ++i) {
            auto ph = psihat[s0.idx(i, j)];
            s0.v1hat[s0.idx(i, j)] = std::complex<double>(0.0, -xi) * ph;
            s0.v2hat[s0.idx(i, j)] = std::complex<double>(0.0, double(s0.k_of(i))) * ph;
        }
    }

    if (!cfg.contains("times") || !cfg.at("times").is_array() || cfg.at("times").empty())
        throw std::invalid_argument("missing \"times\" array in config");
    std::vector<double> times;
    for (const auto& v : cfg.at("times")) {
        if (!v.is_number() || v.get<double>() < 0)
            throw std::invalid_argument("\"times\" entries must be non-negative numbers");
        times.push_back(v.get<double>());
    }

    bool windowed = cfg.contains("window");
    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    if (windowed) {
        const json& w = section(cfg, "window");
        check_keys(w, {"x0", "x1", "y0", "y1"}, "window");
        x0 = num(w, "x0", "window");
        x1 = num(w, "x1", "window");
        y0 = num(w, "y0", "window");
        y1 = num(w, "y1", "window");
    }

    // Each output time propagates independently from the initial state.
    std::vector<double> total(times.size()), local(times.size());
    std::vector<SpectralState> states(times.size());
    parallel_for(int(times.size()), threads, [&](int n) {
        states[n] = propagate(s0, times[n]);
        total[n] = total_energy(states[n]);
        if (windowed) local[n] = local_energy(states[n], x0, x1, y0, y1);
    });

    std::vector<std::string> cols = {"t", "total_energy"};
    if (windowed) cols.push_back("window_energy");
    CsvWriter csv(cols);
    for (std::size_t n = 0; n < times.size(); ++n) {
        std::vector<double> row = {times[n], total[n]};
        if (windowed) row.push_back(local[n]);
        csv.row(row);
    }
    em.file("energy.csv", csv.str());

    Field vf = to_physical(states.back());
    CsvWriter fcsv({"x", "y", "v1", "v2"});
    for (int j = 0; j < g.Ny; ++j)
        for (int i = 0; i < g.Nx; ++i)
            fcsv.row({g.x(i), g.y(j), vf.at(0, i, j), vf.at(1, i, j)});
    em.file("velocity_final.csv", fcsv.str());

    json out = {{"schema", "rossby-v1"},
                {"times", times},
                {"total_energy", total},
                {"initial_energy", total_energy(s0)}};
    if (windowed) out["window_energy"] = local;
    em.file("rossby.json", out.dump(2) + "\n");
    em.finish();
    return 0;
}

int cmd_poincare_rays(const json& cfg, Emitter& em, int threads) {
    check_keys(cfg,
               {"experiment", "rays", "beta", "epsilon", "nu_h", "t_end", "dt", "drift_tol",
                "store_every", "band"},
               "config");
    double beta = num_or(cfg, "beta", 1.0);
    double eps = num(cfg, "epsilon", "config");
    double nu_h = num_or(cfg, "nu_h", 0.0);
    double t_end = num(cfg, "t_end", "config");
    double dt = num(cfg, "dt", "config");
    double drift_tol = num_or(cfg, "drift_tol", 1e-6);
    int store_every = cfg.contains("store_every") ? integer(cfg, "store_every", "config") : 100;

    if (!cfg.contains("rays") || !cfg.at("rays").is_array() || cfg.at("rays").empty())
        throw std::invalid_argument("missing \"rays\" array in config");
    std::vector<RayState> initial;
    for (const auto& r : cfg.at("rays")) {
        check_keys(r, {"y0", "xi0", "mode", "k3"}, "rays entry");
        initial.push_back(RayState::make(num(r, "y0", "ray"), num(r, "xi0", "ray"),
                                         integer(r, "mode", "ray"), integer(r, "k3", "ray"),
                                         beta));
    }

    double band_lo = -2.0, band_hi = 2.0;
    if (cfg.contains("band")) {
        const json& b = section(cfg, "band");
        check_keys(b, {"y_min", "y_max"}, "band");
        band_lo = num(b, "y_min", "band");
        band_hi = num(b, "y_max", "band");
    }

    std::vector<RayTrajectory> trajs(initial.size());
    std::vector<std::string> errors(initial.size());
    parallel_for(int(initial.size()), threads, [&](int n) {
        try {
            trajs[n] = integrate_ray(initial[n], t_end, dt, drift_tol, store_every);
        } catch (const std::exception& e) {
            errors[n] = e.what();
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error(e);

    json rays = json::array();
    for (std::size_t n = 0; n < trajs.size(); ++n) {
        const auto& traj = trajs[n];
        auto weights = damping_weight(traj, nu_h, eps);
        CsvWriter csv({"t", "Y", "Xi", "h", "damping_integral", "weight"});
        for (std::size_t m = 0; m < traj.samples.size(); ++m) {
            const auto& s = traj.samples[m];
            csv.row({s.t, s.Y, s.Xi, s.h, s.damping_integral, weights[m]});
        }
        em.file("ray_" + std::to_string(n) + ".csv", csv.str());

        auto d = escape_diagnostics(traj, band_lo, band_hi, std::max(1.0, t_end / 10.0));
        rays.push_back({{"h0", initial[n].h0},
                        {"mode", initial[n].mode},
                        {"k3", initial[n].k3},
                        {"max_h_drift", traj.max_h_drift},
                        {"exited", d.exited},
                        {"exit_time", d.exit_time},
                        {"xi_growth_exponent", d.xi_growth_exponent},
                        {"min_abs_Y", d.min_abs_Y},
                        {"final_weight", weights.back()}});
    }
    json out = {{"schema", "poincare-rays-v1"},
                {"regime", regime_name(regime(nu_h, eps))},
                {"rays", rays}};
    em.file("rays.json", out.dump(2) + "\n");
    em.finish();
    return 0;
}

int cmd_thermocline(const json& cfg, Emitter& em) {
    check_keys(cfg,
               {"experiment", "grid", "coriolis", "stress", "surface_temperature", "lambda",
                "epsilons", "alpha"},
               "config");
    Grid g = parse_grid(cfg);
    CoriolisProfile profile = parse_coriolis(cfg);
    WindStress stress = parse_stress(cfg);
    SurfaceTemperature theta1 = parse_theta1(cfg);
    double lambda = num(cfg, "lambda", "config");
    std::vector<double> eps = parse_epsilons(cfg);
    double alpha = num_or(cfg, "alpha", 0.7);

    ThermoclineStudy study =
        thermocline_convergence_study(profile, stress, theta1, lambda, eps, g, alpha);

    CsvWriter csv({"epsilon", "l2_error", "dz_l2_error"});
    json errs = json::array();
    for (std::size_t n = 0; n < eps.size(); ++n) {
        csv.row({eps[n], study.errors[n].l2, study.errors[n].dz_l2});
        errs.push_back({{"epsilon", eps[n]},
                        {"l2", study.errors[n].l2},
                        {"dz_l2", study.errors[n].dz_l2}});
    }
    em.file("errors.csv", csv.str());
    json out = {{"schema", "thermocline-v1"},
                {"errors", errs},
                {"decreasing", study.decreasing}};
    em.file("thermocline.json", out.dump(2) + "\n");
    em.finish();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wind-driven rotating shallow-layer experiments"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    int threads = 1;
    app.add_option("--config", config_path, "JSON configuration file")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker thread count")->check(CLI::PositiveNumber);

    const std::vector<std::string> names = {"validate",      "stationary", "residual-study",
                                            "rossby",        "poincare-rays", "thermocline",
                                            "scales"};
    for (const auto& n : names) app.add_subcommand(n)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    auto emit_error = [&](const std::string& kind, const std::string& what) {
        json err = {{"schema", "error-v1"}, {"kind", kind}, {"message", what}};
        std::cout << err.dump(2) << "\n";
        try {
            write_file(std::filesystem::path(out_dir) / "error.json", err.dump(2) + "\n");
        } catch (...) {
        }
    };

    try {
        json cfg = load_config(config_path);
        if (cfg.contains("experiment") && cfg.at("experiment").get<std::string>() != cmd)
            throw std::invalid_argument("config \"experiment\" does not match subcommand");
        Emitter em{std::filesystem::path(out_dir), {}};
        if (cmd == "validate") return cmd_validate(cfg, em);
        if (cmd == "scales") return cmd_scales(cfg, em);
        if (cmd == "stationary") return cmd_stationary(cfg, em, threads);
        if (cmd == "residual-study") return cmd_residual_study(cfg, em);
        if (cmd == "rossby") return cmd_rossby(cfg, em, threads);
        if (cmd == "poincare-rays") return cmd_poincare_rays(cfg, em, threads);
        if (cmd == "thermocline") return cmd_thermocline(cfg, em);
        return 2;
    } catch (const json::exception& e) {
        emit_error("validation", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        emit_error("validation", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        emit_error("validation", e.what());
        return 2;
    } catch (const std::runtime_error& e) {
        emit_error("numerical", e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error("internal", e.what());
        return 1;
    }
}
