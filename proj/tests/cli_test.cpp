#include "commands.hpp"
#include "config.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

using namespace absf;
using namespace absf::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result absf_run(std::initializer_list<std::string> args)
{
    std::vector<std::string> store{"absf"};
    store.insert(store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : store) {
        argv.push_back(s.c_str());
    }
    std::ostringstream out, err;
    Result r;
    r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class TempDir {
public:
    TempDir()
    {
        static int counter = 0;
        path_ = fs::temp_directory_path() / ("absf_cli_test_" + std::to_string(::getpid()) + "_" +
                                             std::to_string(counter++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& text) const
    {
        const auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* kSmallSim = R"({"scenario": "macro_pico", "sim_region_m": 2000, "sample_region_m": 1000,
  "snapshots": 3, "frames_per_snapshot": 2, "seed": 42})";

} // namespace

TEST_CASE("dB conversions round trip")
{
    for (double db : {-40.0, -5.0, 0.0, 7.0, 43.0}) {
        CHECK(std::abs(linear_to_db(db_to_linear(db)) - db) < 1e-12);
        CHECK(std::abs(watt_to_dbm(dbm_to_watt(db)) - db) < 1e-12);
    }
    CHECK(dbm_to_watt(43.0) == doctest::Approx(19.952623149688797).epsilon(1e-14));
}

TEST_CASE("defaults resolve to the reference deployment")
{
    for (const char* name : {"macro_femto", "macro_pico"}) {
        const auto cfg = resolve(default_values(name));
        const auto ref = reference_params(std::string(name) == "macro_femto" ? ScenarioKind::MacroFemto
                                                                             : ScenarioKind::MacroPico);
        CHECK(cfg.scenario.p_m == doctest::Approx(ref.p_m).epsilon(1e-14));
        CHECK(cfg.scenario.theta0 == doctest::Approx(ref.theta0).epsilon(1e-14));
        CHECK(cfg.scenario.rho_a == doctest::Approx(ref.rho_a).epsilon(1e-14));
        CHECK(cfg.scenario.lambda_s == doctest::Approx(ref.lambda_s).epsilon(1e-14));
    }
}

TEST_CASE("config round trips through JSON")
{
    auto v = default_values("macro_pico");
    v.seed = 123456789012345ULL;
    v.bias_db = 4.5;
    const auto back = values_from_json(to_json(v));
    CHECK(to_json(back) == to_json(v));
}

TEST_CASE("unknown keys and bad types are rejected")
{
    CHECK_THROWS_AS(values_from_json(Json::parse(R"({"scenario": "macro_femto", "lamda_m": 1})")), ConfigError);
    CHECK_THROWS_AS(values_from_json(Json::parse(R"({"scenario": "macro_femto", "load_s": "half"})")), ConfigError);
    CHECK_THROWS_AS(values_from_json(Json::parse(R"({"scenario": "macro_tiny"})")), ConfigError);
}

TEST_CASE("version and help")
{
    CHECK(absf_run({"--version"}).out == std::string(kToolVersion) + "\n");
    CHECK(absf_run({}).code == kConfigError);
}

TEST_CASE("plan command")
{
    TempDir dir;
    const auto mf = dir.write("mf.json", R"({"scenario": "macro_femto", "c_v_min_bps": 40000})");
    const auto r = absf_run({"plan", mf});
    REQUIRE(r.code == kOk);
    const auto doc = Json::parse(r.out);
    const int n = doc.at("plan").at("n_absf").get<int>();
    CHECK(n >= 1);
    CHECK(n <= 10);
    CHECK(doc.at("manifest").at("command") == "plan");
    CHECK(doc.at("manifest").at("config").at("load_s") == 0.5);

    const auto zero = dir.write("zero.json", R"({"scenario": "macro_femto", "c_v_min_bps": 0})");
    CHECK(Json::parse(absf_run({"plan", zero}).out).at("plan").at("n_absf") == 0);

    const auto inf = dir.write("inf.json", R"({"scenario": "macro_femto", "c_v_min_bps": 1e9})");
    CHECK(absf_run({"plan", inf}).code == kInfeasible);
}

TEST_CASE("invalid config names the field and bound")
{
    TempDir dir;
    const auto bad = dir.write("bad.json", R"({"scenario": "macro_femto", "load_s": 1.5})");
    const auto r = absf_run({"plan", bad});
    CHECK(r.code == kConfigError);
    CHECK(r.err.find("load_s") != std::string::npos);
    CHECK(r.err.find("[0, 1]") != std::string::npos);

    const auto garbage = dir.write("garbage.json", "{ not json");
    CHECK(absf_run({"plan", garbage}).code == kConfigError);
    CHECK(absf_run({"plan", dir.file("missing.json")}).code == kConfigError);
}

TEST_CASE("sweep command")
{
    TempDir dir;
    const auto mf = dir.write("mf.json", R"({"scenario": "macro_femto"})");
    const auto one = absf_run({"sweep", mf, "--param", "lambda_s", "--from", "1.2e-4", "--steps", "1"});
    REQUIRE(one.code == kOk);
    const auto plan = Json::parse(absf_run({"plan", mf}).out);
    std::istringstream lines(one.out);
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "param_value,n_absf,c_nsf_bps,c_absf_bps");
    CHECK_FALSE(std::getline(lines, extra));
    CHECK(row.substr(row.find(',') + 1, 1) == std::to_string(plan.at("plan").at("n_absf").get<int>()));

    CHECK(absf_run({"sweep", mf, "--param", "nope", "--from", "1"}).code == kConfigError);
    CHECK(absf_run({"sweep", mf, "--param", "bias", "--from", "0dB", "--to", "6dB"}).code == kConfigError);

    const auto csv = dir.file("rho.csv");
    const auto mp = dir.write("mp.json", R"({"scenario": "macro_pico"})");
    REQUIRE(absf_run({"sweep", mp, "--param", "rho_a", "--from", "-40dB", "--to", "0dB", "--steps", "9", "-o", csv})
                .code == kOk);
    const auto first = slurp(csv);
    CHECK(std::count(first.begin(), first.end(), '\n') == 10);
    REQUIRE(fs::exists(csv + ".manifest.json"));
    const auto replay = dir.file("replay.csv");
    REQUIRE(absf_run({"sweep", csv + ".manifest.json", "-o", replay}).code == kOk);
    CHECK(slurp(replay) == first);
}

TEST_CASE("simulate command")
{
    TempDir dir;
    const auto cfg = dir.write("sim.json", kSmallSim);
    CHECK(absf_run({"simulate", cfg, "--snapshots", "0"}).code == kConfigError);
    CHECK(absf_run({"simulate", cfg, "--scheduler", "fifo"}).code == kConfigError);
    CHECK(absf_run({"simulate", cfg, "--absf", "two"}).code == kConfigError);

    const auto a = dir.file("a.csv");
    const auto b = dir.file("b.csv");
    REQUIRE(absf_run({"simulate", cfg, "--absf", "plan", "--scheduler", "pf", "--csv", a}).code == kOk);
    REQUIRE(absf_run({"simulate", cfg, "--absf", "plan", "--scheduler", "pf", "--csv", b}).code == kOk);
    CHECK(slurp(a) == slurp(b));

    const auto c = dir.file("c.csv");
    const auto r = absf_run({"simulate", a + ".manifest.json", "--csv", c});
    REQUIRE(r.code == kOk);
    CHECK(slurp(c) == slurp(a));
    const auto summary = Json::parse(r.out).at("summary");
    CHECK(summary.at("scheduler") == "pf");
    CHECK(summary.at("classes").at("victim").at("count").get<long long>() > 0);

    const auto d = dir.file("d.csv");
    REQUIRE(absf_run({"simulate", cfg, "--seed", "43", "--csv", d}).code == kOk);
    CHECK(slurp(d) != slurp(a));
}

TEST_CASE("insufficient samples exit code")
{
    TempDir dir;
    const auto cfg = dir.write(
        "none.json",
        R"({"scenario": "macro_femto", "k": 0, "sim_region_m": 2000, "sample_region_m": 1000, "snapshots": 2, "mc_samples": 1000})");
    CHECK(absf_run({"validate", cfg}).code == kInsufficientSamples);
}

TEST_CASE("validate harness self-test flags a corrupted analytic path")
{
    TempDir dir;
    const auto cfg = dir.write("v.json", R"({"scenario": "macro_femto", "sim_region_m": 3000, "sample_region_m": 1500,
      "snapshots": 10, "mc_samples": 20000})");
    const auto bad = absf_run({"validate", cfg, "--corrupt-analytic", "1.5"});
    CHECK(bad.code == kValidationFailed);
    CHECK(bad.out.find("FAIL") != std::string::npos);
    CHECK(bad.out.find("success_nsf") != std::string::npos);
    const auto rows = validation_rows(resolve(values_from_json(Json::parse(slurp(cfg)))), 1.5);
    for (const auto& row : rows) {
        if (row.quantity.starts_with("success")) {
            CHECK_FALSE(row.pass);
            CHECK(row.deviation > 0.0);
        }
    }
}

TEST_CASE("validate with unit residue gives identical NSF and ABSF rows")
{
    auto v = default_values("macro_femto");
    v.rho_a_db = 0.0;
    v.sim_region_m = 3000;
    v.sample_region_m = 1500;
    v.snapshots = 4;
    v.mc_samples = 5000;
    const auto rows = validation_rows(resolve(v));
    REQUIRE(rows.size() >= 2);
    CHECK(rows[0].analytic == rows[1].analytic);
}
