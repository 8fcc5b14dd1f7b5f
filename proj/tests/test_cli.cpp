// End-to-end checks of the command-line tool: exit codes, emitted files,
// config validation, and determinism of the artifacts.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string bin() {
    const char* b = std::getenv("OCEANLAB_BIN");
    REQUIRE(b != nullptr);
    return b;
}

fs::path workdir() {
    static fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / "oceanlab_cli_test";
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

fs::path write_config(const std::string& name, const json& j) {
    fs::path p = workdir() / name;
    std::ofstream os(p);
    os << j.dump(2);
    return p;
}

int run(const std::string& args) {
    std::string cmd = bin() + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

json grid16() {
    return {{"nx", 16}, {"ny", 32}, {"nz", 9}, {"L", 2.0}};
}

json stationary_config() {
    return {{"grid", grid16()},
            {"coriolis", {{"type", "linear"}}},
            {"stress", {{"type", "zonal_curl"}}},
            {"parameters", {{"epsilon", 0.05}, {"nu_h", 1e-4}, {"delta", 0.05}}}};
}

}  // namespace

TEST_CASE("flag errors and missing config exit with the validation code") {
    CHECK(run("stationary") == 2);
    CHECK(run("stationary --config /nonexistent/nope.json") == 2);
    CHECK(run("") == 2);  // missing subcommand
}

TEST_CASE("validate: passing hypotheses emit a report and exit zero") {
    json cfg = {{"experiment", "validate"},
                {"grid", grid16()},
                {"coriolis", {{"type", "linear"}, {"beta", 1.0}}},
                {"stress", {{"type", "zonal_curl"}}},
                {"parameters", {{"epsilon", 0.001}, {"nu_h", 1e-6}, {"delta", 0.001}}}};
    auto p = write_config("validate_ok.json", cfg);
    fs::path out = workdir() / "validate_ok";
    REQUIRE(run("validate --config " + p.string() + " --out " + out.string()) == 0);
    json rep = json::parse(slurp(out / "validation.json"));
    CHECK(rep.at("schema") == "validation-v1");
    CHECK(rep.at("passed") == true);
    CHECK(fs::exists(out / "manifest.json"));
}

TEST_CASE("validate: violated stress hypothesis exits 2 with an error report") {
    json cfg = {{"grid", grid16()},
                {"coriolis", {{"type", "linear"}}},
                {"stress", {{"type", "incompatible"}}},
                {"parameters", {{"epsilon", 0.001}, {"nu_h", 1e-6}, {"delta", 0.001}}}};
    auto p = write_config("validate_bad.json", cfg);
    fs::path out = workdir() / "validate_bad";
    CHECK(run("validate --config " + p.string() + " --out " + out.string()) == 2);
    json err = json::parse(slurp(out / "error.json"));
    CHECK(err.at("kind") == "validation");
    CHECK(err.at("message").get<std::string>().find("compatibility") != std::string::npos);
}

TEST_CASE("unknown config keys are rejected") {
    json cfg = stationary_config();
    cfg["grid"]["bogus"] = 1;
    auto p = write_config("unknown_key.json", cfg);
    CHECK(run("stationary --config " + p.string() + " --out " +
              (workdir() / "unk").string()) == 2);
}

TEST_CASE("experiment name mismatch is rejected") {
    json cfg = stationary_config();
    cfg["experiment"] = "rossby";
    auto p = write_config("mismatch.json", cfg);
    CHECK(run("stationary --config " + p.string() + " --out " +
              (workdir() / "mm").string()) == 2);
}

TEST_CASE("stationary: emits fields, residual report, and manifest") {
    auto p = write_config("stationary.json", stationary_config());
    fs::path out = workdir() / "stationary";
    REQUIRE(run("stationary --config " + p.string() + " --out " + out.string()) == 0);
    std::string csv = slurp(out / "velocity.csv");
    CHECK(csv.rfind("x,y,z,u1,u2,u3,p\n", 0) == 0);
    json rep = json::parse(slurp(out / "residual.json"));
    CHECK(rep.at("schema") == "residual-v1");
    CHECK(rep.at("r1_h_l2").get<double>() > 0.0);
    CHECK(rep.at("breakdown_defect").get<double>() < 1e-12);
    json man = json::parse(slurp(out / "manifest.json"));
    CHECK(man.at("schema") == "manifest-v1");
    CHECK(man.at("files").size() == 2);
}

TEST_CASE("determinism: thread count and re-runs leave the artifacts unchanged") {
    auto p = write_config("det.json", stationary_config());
    fs::path o1 = workdir() / "det1", o4 = workdir() / "det4", o1b = workdir() / "det1b";
    REQUIRE(run("stationary --config " + p.string() + " --out " + o1.string() +
                " --threads 1") == 0);
    REQUIRE(run("stationary --config " + p.string() + " --out " + o4.string() +
                " --threads 4") == 0);
    REQUIRE(run("stationary --config " + p.string() + " --out " + o1b.string() +
                " --threads 1") == 0);
    CHECK(slurp(o1 / "manifest.json") == slurp(o4 / "manifest.json"));
    CHECK(slurp(o1 / "manifest.json") == slurp(o1b / "manifest.json"));
    CHECK(slurp(o1 / "velocity.csv") == slurp(o4 / "velocity.csv"));
    CHECK(slurp(o1 / "residual.json") == slurp(o4 / "residual.json"));
}

TEST_CASE("residual-study: gates reported over the epsilon ladder") {
    json cfg = {{"grid", grid16()},
                {"coriolis", {{"type", "linear"}}},
                {"stress", {{"type", "zonal_curl"}}},
                {"epsilons", {0.1, 0.05, 0.025}}};
    auto p = write_config("study.json", cfg);
    fs::path out = workdir() / "study";
    REQUIRE(run("residual-study --config " + p.string() + " --out " + out.string()) == 0);
    json rep = json::parse(slurp(out / "study.json"));
    CHECK(rep.at("bl_slope_ok") == true);
    CHECK(rep.at("int_slope_ok") == true);
    CHECK(rep.at("r1_decaying") == true);
    CHECK(rep.at("r2_decaying") == true);
    std::string csv = slurp(out / "study.csv");
    CHECK(csv.rfind("epsilon,", 0) == 0);
}

TEST_CASE("rossby: inviscid energy column is constant; determinism across threads") {
    json cfg = {{"grid", {{"nx", 32}, {"ny", 64}, {"nz", 5}, {"L", 4.0}}},
                {"epsilon", 0.01},
                {"nu_h", 0.0},
                {"psi", {{"type", "gaussian_packet"}, {"width", 0.7}, {"k", 5}, {"xi", 3.0}}},
                {"times", {0.0, 0.5, 1.0}},
                {"window", {{"x0", 0.0}, {"x1", 6.28}, {"y0", -1.5}, {"y1", 1.5}}}};
    auto p = write_config("rossby.json", cfg);
    fs::path o1 = workdir() / "rossby1", o4 = workdir() / "rossby4";
    REQUIRE(run("rossby --config " + p.string() + " --out " + o1.string() + " --threads 1") ==
            0);
    REQUIRE(run("rossby --config " + p.string() + " --out " + o4.string() + " --threads 4") ==
            0);
    CHECK(slurp(o1 / "manifest.json") == slurp(o4 / "manifest.json"));
    json rep = json::parse(slurp(o1 / "rossby.json"));
    auto totals = rep.at("total_energy").get<std::vector<double>>();
    REQUIRE(totals.size() == 3);
    CHECK(totals[1] == Catch::Approx(totals[0]).epsilon(1e-12));
    CHECK(totals[2] == Catch::Approx(totals[0]).epsilon(1e-12));
}

TEST_CASE("poincare-rays: degenerate ray exits 2, drift violation exits 3") {
    json bad = {{"rays", {{{"y0", 0.0}, {"xi0", 0.0}, {"mode", 1}, {"k3", 1}}}},
                {"epsilon", 0.1},
                {"t_end", 1.0},
                {"dt", 0.001}};
    auto pb = write_config("ray_bad.json", bad);
    CHECK(run("poincare-rays --config " + pb.string() + " --out " +
              (workdir() / "rayb").string()) == 2);

    json drift = {{"rays", {{{"y0", 1.0}, {"xi0", 0.0}, {"mode", 1}, {"k3", 1}}}},
                  {"epsilon", 0.1},
                  {"t_end", 100.0},
                  {"dt", 0.5},
                  {"drift_tol", 1e-14}};
    auto pd = write_config("ray_drift.json", drift);
    fs::path out = workdir() / "rayd";
    CHECK(run("poincare-rays --config " + pd.string() + " --out " + out.string()) == 3);
    json err = json::parse(slurp(out / "error.json"));
    CHECK(err.at("kind") == "numerical");
}

TEST_CASE("poincare-rays: trajectories and diagnostics are emitted per ray") {
    json cfg = {{"rays",
                 {{{"y0", 1.0}, {"xi0", 0.0}, {"mode", 1}, {"k3", 1}},
                  {{"y0", 1.0}, {"xi0", 0.0}, {"mode", -1}, {"k3", 2}}}},
                {"epsilon", 0.1},
                {"nu_h", 0.01},
                {"t_end", 100.0},
                {"dt", 0.001},
                {"store_every", 1000}};
    auto p = write_config("rays.json", cfg);
    fs::path out = workdir() / "rays";
    REQUIRE(run("poincare-rays --config " + p.string() + " --out " + out.string()) == 0);
    CHECK(fs::exists(out / "ray_0.csv"));
    CHECK(fs::exists(out / "ray_1.csv"));
    json rep = json::parse(slurp(out / "rays.json"));
    REQUIRE(rep.at("rays").size() == 2);
    for (const auto& r : rep.at("rays")) {
        CHECK(r.at("max_h_drift").get<double>() < 1e-8);
        CHECK(r.at("exited") == true);
        CHECK(r.at("final_weight").get<double>() < 1.0);
    }
    // nu_h = eps^2 sits exactly on the balanced branch
    CHECK(rep.at("regime") == "mixed");
}

TEST_CASE("thermocline: study artifacts with decreasing errors") {
    json cfg = {{"grid", {{"nx", 16}, {"ny", 32}, {"nz", 17}, {"L", 2.0}}},
                {"coriolis", {{"type", "linear"}}},
                {"stress", {{"type", "zonal_curl"}, {"k", 4}}},
                {"surface_temperature", {{"type", "gaussian"}}},
                {"lambda", 20.0},
                {"epsilons", {0.1, 0.05, 0.025}}};
    auto p = write_config("thermo.json", cfg);
    fs::path out = workdir() / "thermo";
    REQUIRE(run("thermocline --config " + p.string() + " --out " + out.string()) == 0);
    json rep = json::parse(slurp(out / "thermocline.json"));
    CHECK(rep.at("decreasing") == true);
    std::string csv = slurp(out / "errors.csv");
    CHECK(csv.rfind("epsilon,l2_error,dz_l2_error\n", 0) == 0);
}

TEST_CASE("scales: dimensional input maps to the dimensionless parameters") {
    json cfg = {{"scales",
                 {{"U", 1e-2},
                  {"W", 4e-6},
                  {"H", 1e7},
                  {"D", 4e3},
                  {"T", 1e7},
                  {"Omega0", 7e-5},
                  {"Az", 1e-3},
                  {"Ah", 1e5},
                  {"sigma_mag", 1e-4},
                  {"kappa", 1e-1}}}};
    auto p = write_config("scales.json", cfg);
    fs::path out = workdir() / "scales";
    REQUIRE(run("scales --config " + p.string() + " --out " + out.string()) == 0);
    json rep = json::parse(slurp(out / "scales.json"));
    CHECK(rep.at("epsilon").get<double>() == Catch::Approx(1.0 / 700.0).epsilon(1e-12));
    CHECK(rep.at("eta").get<double>() == Catch::Approx(4e-4).epsilon(1e-12));
}
