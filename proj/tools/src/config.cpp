#include "config.hpp"

#include "absf/error.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>

namespace absf::cli {

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

double dbm_to_watt(double dbm)
{
    return db_to_linear(dbm - 30.0);
}

double watt_to_dbm(double watt)
{
    return linear_to_db(watt) + 30.0;
}

ConfigValues default_values(const std::string& scenario)
{
    ScenarioKind kind;
    if (scenario == "macro_femto") {
        kind = ScenarioKind::MacroFemto;
    } else if (scenario == "macro_pico") {
        kind = ScenarioKind::MacroPico;
    } else {
        throw ConfigError("config key 'scenario': expected \"macro_femto\" or \"macro_pico\", got \"" + scenario +
                          "\"");
    }
    const auto p = reference_params(kind);
    const sim::SimConfig sim;
    ConfigValues v;
    v.scenario = scenario;
    v.lambda_m_per_m2 = p.lambda_m;
    v.lambda_u_per_m2 = p.lambda_u;
    v.lambda_s_per_m2 = p.lambda_s;
    v.p_m_dbm = 43.0;
    v.p_s_dbm = kind == ScenarioKind::MacroFemto ? 20.0 : 30.0;
    v.alpha_m = p.alpha_m;
    v.alpha_s = p.alpha_s;
    v.load_m = p.load_m;
    v.load_s = p.load_s;
    v.k = p.k;
    v.k1 = p.k1;
    v.k2 = p.k2;
    v.bias_db = 7.0;
    v.rho_a_db = -20.0;
    v.theta0_db = -5.0;
    v.n_sf = p.n_sf;
    v.n_rb = p.n_rb;
    v.rb_bandwidth_hz = p.rb_bandwidth;
    v.c_v_min_bps = p.c_v_min;
    v.sim_region_m = sim.sim_region;
    v.sample_region_m = sim.sample_region;
    v.snapshots = sim.snapshots;
    v.frames_per_snapshot = sim.frames_per_snapshot;
    v.scheduler = "rr";
    v.absf_count = sim.absf_count;
    v.seed = sim.seed;
    v.near_interferers = sim.near_interferers;
    v.mc_samples = sim.mc_samples;
    return v;
}

namespace {

using Setter = std::function<void(ConfigValues&, const Json&, const std::string&)>;

void type_error(const std::string& key, const char* expected)
{
    throw ConfigError("config key '" + key + "': expected " + expected);
}

Setter number(double ConfigValues::*field)
{
    return [field](ConfigValues& v, const Json& j, const std::string& key) {
        if (!j.is_number()) {
            type_error(key, "a number");
        }
        v.*field = j.get<double>();
    };
}

template <class Int>
Setter integer(Int ConfigValues::*field)
{
    return [field](ConfigValues& v, const Json& j, const std::string& key) {
        if (!j.is_number_integer()) {
            type_error(key, "an integer");
        }
        if constexpr (std::is_unsigned_v<Int>) {
            if (j.is_number_unsigned()) {
                v.*field = j.get<Int>();
                return;
            }
            if (j.get<long long>() < 0) {
                type_error(key, "a non-negative integer");
            }
        }
        v.*field = static_cast<Int>(j.get<long long>());
    };
}

Setter text(std::string ConfigValues::*field, std::vector<std::string> allowed)
{
    return [field, allowed](ConfigValues& v, const Json& j, const std::string& key) {
        if (!j.is_string()) {
            type_error(key, "a string");
        }
        const auto s = j.get<std::string>();
        if (std::find(allowed.begin(), allowed.end(), s) == allowed.end()) {
            std::string list;
            for (const auto& a : allowed) {
                list += (list.empty() ? "" : ", ") + a;
            }
            throw ConfigError("config key '" + key + "': \"" + s + "\" is not one of " + list);
        }
        v.*field = s;
    };
}

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = {
        {"lambda_m_per_m2", number(&ConfigValues::lambda_m_per_m2)},
        {"lambda_u_per_m2", number(&ConfigValues::lambda_u_per_m2)},
        {"lambda_s_per_m2", number(&ConfigValues::lambda_s_per_m2)},
        {"p_m_dbm", number(&ConfigValues::p_m_dbm)},
        {"p_s_dbm", number(&ConfigValues::p_s_dbm)},
        {"alpha_m", number(&ConfigValues::alpha_m)},
        {"alpha_s", number(&ConfigValues::alpha_s)},
        {"load_m", number(&ConfigValues::load_m)},
        {"load_s", number(&ConfigValues::load_s)},
        {"k", number(&ConfigValues::k)},
        {"k1", number(&ConfigValues::k1)},
        {"k2", number(&ConfigValues::k2)},
        {"di_coefficients", text(&ConfigValues::di_coefficients, {"literal", "formula"})},
        {"bias_db", number(&ConfigValues::bias_db)},
        {"rho_a_db", number(&ConfigValues::rho_a_db)},
        {"theta0_db", number(&ConfigValues::theta0_db)},
        {"n_sf", integer(&ConfigValues::n_sf)},
        {"n_rb", integer(&ConfigValues::n_rb)},
        {"rb_bandwidth_hz", number(&ConfigValues::rb_bandwidth_hz)},
        {"c_v_min_bps", number(&ConfigValues::c_v_min_bps)},
        {"sim_region_m", number(&ConfigValues::sim_region_m)},
        {"sample_region_m", number(&ConfigValues::sample_region_m)},
        {"snapshots", integer(&ConfigValues::snapshots)},
        {"frames_per_snapshot", integer(&ConfigValues::frames_per_snapshot)},
        {"scheduler", text(&ConfigValues::scheduler, {"rr", "pf"})},
        {"absf_count", integer(&ConfigValues::absf_count)},
        {"seed", integer(&ConfigValues::seed)},
        {"near_interferers", integer(&ConfigValues::near_interferers)},
        {"mc_samples", integer(&ConfigValues::mc_samples)},
    };
    return table;
}

} // namespace

ConfigValues values_from_json(const Json& input)
{
    const Json* j = &input;
    if (input.is_object() && input.contains("tool") && input.contains("config")) {
        j = &input.at("config");
    }
    if (!j->is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    std::string scenario = "macro_femto";
    if (j->contains("scenario")) {
        if (!j->at("scenario").is_string()) {
            type_error("scenario", "a string");
        }
        scenario = j->at("scenario").get<std::string>();
    }
    auto v = default_values(scenario);
    const auto& table = setters();
    for (const auto& [key, value] : j->items()) {
        if (key == "scenario") {
            continue;
        }
        const auto it = table.find(key);
        if (it == table.end()) {
            throw ConfigError("unknown config key '" + key + "'");
        }
        it->second(v, value, key);
    }
    return v;
}

Json to_json(const ConfigValues& v)
{
    return Json{
        {"scenario", v.scenario},
        {"lambda_m_per_m2", v.lambda_m_per_m2},
        {"lambda_u_per_m2", v.lambda_u_per_m2},
        {"lambda_s_per_m2", v.lambda_s_per_m2},
        {"p_m_dbm", v.p_m_dbm},
        {"p_s_dbm", v.p_s_dbm},
        {"alpha_m", v.alpha_m},
        {"alpha_s", v.alpha_s},
        {"load_m", v.load_m},
        {"load_s", v.load_s},
        {"k", v.k},
        {"k1", v.k1},
        {"k2", v.k2},
        {"di_coefficients", v.di_coefficients},
        {"bias_db", v.bias_db},
        {"rho_a_db", v.rho_a_db},
        {"theta0_db", v.theta0_db},
        {"n_sf", v.n_sf},
        {"n_rb", v.n_rb},
        {"rb_bandwidth_hz", v.rb_bandwidth_hz},
        {"c_v_min_bps", v.c_v_min_bps},
        {"sim_region_m", v.sim_region_m},
        {"sample_region_m", v.sample_region_m},
        {"snapshots", v.snapshots},
        {"frames_per_snapshot", v.frames_per_snapshot},
        {"scheduler", v.scheduler},
        {"absf_count", v.absf_count},
        {"seed", v.seed},
        {"near_interferers", v.near_interferers},
        {"mc_samples", v.mc_samples},
    };
}

sim::SimConfig resolve(const ConfigValues& v)
{
    sim::SimConfig c;
    auto& p = c.scenario;
    p.kind = v.scenario == "macro_pico" ? ScenarioKind::MacroPico : ScenarioKind::MacroFemto;
    p.lambda_m = v.lambda_m_per_m2;
    p.lambda_u = v.lambda_u_per_m2;
    p.lambda_s = v.lambda_s_per_m2;
    p.p_m = dbm_to_watt(v.p_m_dbm);
    p.p_s = dbm_to_watt(v.p_s_dbm);
    p.alpha_m = v.alpha_m;
    p.alpha_s = v.alpha_s;
    p.load_m = v.load_m;
    p.load_s = v.load_s;
    p.k = v.k;
    p.k1 = v.k1;
    p.k2 = v.k2;
    p.bias = db_to_linear(v.bias_db);
    p.rho_a = db_to_linear(v.rho_a_db);
    p.theta0 = db_to_linear(v.theta0_db);
    p.n_sf = v.n_sf;
    p.n_rb = v.n_rb;
    p.rb_bandwidth = v.rb_bandwidth_hz;
    p.c_v_min = v.c_v_min_bps;
    if (v.di_coefficients == "formula") {
        p = with_formula_coefficients(p);
    }
    c.sim_region = v.sim_region_m;
    c.sample_region = v.sample_region_m;
    c.snapshots = v.snapshots;
    c.frames_per_snapshot = v.frames_per_snapshot;
    c.scheduler = v.scheduler == "pf" ? sim::Scheduler::ProportionalFair : sim::Scheduler::RoundRobin;
    c.absf_count = v.absf_count;
    c.seed = v.seed;
    c.near_interferers = v.near_interferers;
    c.mc_samples = v.mc_samples;
    c.validate();
    return c;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

} // namespace absf::cli
