#pragma once

#include "absf/hetnetsim.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>

namespace absf::cli {

using Json = nlohmann::ordered_json;

/// Bad config file: unreadable, malformed, unknown key or wrong type. Maps to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Config values in the units of their keys (dB, dBm, per m^2, ...). Kept verbatim so that a
/// resolved config written to a manifest reproduces the same linear values bit for bit.
struct ConfigValues {
    std::string scenario = "macro_femto";
    double lambda_m_per_m2 = 0.0;
    double lambda_u_per_m2 = 0.0;
    double lambda_s_per_m2 = 0.0;
    double p_m_dbm = 0.0;
    double p_s_dbm = 0.0;
    double alpha_m = 0.0;
    double alpha_s = 0.0;
    double load_m = 0.0;
    double load_s = 0.0;
    double k = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    std::string di_coefficients = "literal"; // or "formula"
    double bias_db = 0.0;
    double rho_a_db = 0.0;
    double theta0_db = 0.0;
    int n_sf = 0;
    int n_rb = 0;
    double rb_bandwidth_hz = 0.0;
    double c_v_min_bps = 0.0;
    double sim_region_m = 0.0;
    double sample_region_m = 0.0;
    int snapshots = 0;
    int frames_per_snapshot = 0;
    std::string scheduler = "rr";
    int absf_count = 0;
    std::uint64_t seed = 0;
    int near_interferers = 0;
    long long mc_samples = 0;
};

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// Defaults for a scenario name ("macro_femto" or "macro_pico"): the reference deployment and
/// the desk-scale simulation settings.
ConfigValues default_values(const std::string& scenario);

/// Reads a flat config object; keys absent from `j` keep their scenario defaults. A run manifest
/// (object with "tool" and "config") is accepted as well and its "config" member is used.
ConfigValues values_from_json(const Json& j);
Json to_json(const ConfigValues& v);

/// Converts to linear SI parameters and validates them. Throws DomainError naming the field.
sim::SimConfig resolve(const ConfigValues& v);

/// Loads a JSON file; throws ConfigError when it cannot be read or parsed.
Json read_json_file(const std::string& path);

} // namespace absf::cli
