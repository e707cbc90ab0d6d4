#include "commands.hpp"

#include "absf/error.hpp"
#include "absf/planner.hpp"
#include "absf/rrfrac.hpp"
#include "absf/success.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace absf::cli {

namespace {

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

Json manifest(const std::string& command, const ConfigValues& values, const Json& flags)
{
    return Json{
        {"tool", "absf"},
        {"version", kToolVersion},
        {"command", command},
        {"seed", values.seed},
        {"timestamp", utc_timestamp()},
        {"config", to_json(values)},
        {"flags", flags},
    };
}

void write_manifest(const std::string& data_path, const Json& m)
{
    std::ofstream out(data_path + ".manifest.json");
    out << m.dump(2) << '\n';
}

std::ofstream open_output(const std::string& path)
{
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write output file '" + path + "'");
    }
    return out;
}

// Loaded config plus the flags recorded by the manifest it came from, if any.
struct Loaded {
    ConfigValues values;
    Json flags = Json::object();
};

Loaded load(const std::string& path)
{
    const auto j = read_json_file(path);
    Loaded l;
    l.values = values_from_json(j);
    if (j.is_object() && j.contains("tool") && j.contains("flags") && j.at("flags").is_object()) {
        l.flags = j.at("flags");
    }
    return l;
}

Json plan_json(const planner::PlanResult& r)
{
    return Json{
        {"n_absf", r.n_absf},
        {"infeasible", r.infeasible},
        {"no_victims", r.no_victims},
        {"p_success_nsf", r.p_success_nsf},
        {"p_success_absf", r.p_success_absf},
        {"omega_nsf", r.omega_nsf},
        {"omega_absf", r.omega_absf},
        {"c_nsf_bps", r.c_nsf},
        {"c_absf_bps", r.c_absf},
        {"c_v_bps", r.c_v},
    };
}

std::string format_number(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

// "-40dB" -> {-40, true}; "4e-5" -> {4e-5, false}
std::pair<double, bool> parse_value(const std::string& text)
{
    std::string body = text;
    bool db = false;
    if (body.size() > 2 && (body.ends_with("dB") || body.ends_with("db"))) {
        body.resize(body.size() - 2);
        db = true;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(body, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != body.size()) {
        throw ConfigError("cannot parse sweep bound '" + text + "'");
    }
    return {v, db};
}

int cmd_plan(const std::string& path, const std::string& output, std::ostream& out)
{
    const auto loaded = load(path);
    const auto cfg = resolve(loaded.values);
    const auto result = planner::plan(cfg.scenario);
    Json doc{{"plan", plan_json(result)}, {"manifest", manifest("plan", loaded.values, Json::object())}};
    if (output.empty()) {
        out << doc.dump(2) << '\n';
    } else {
        open_output(output) << doc.dump(2) << '\n';
    }
    return result.infeasible ? kInfeasible : kOk;
}

struct SweepFlags {
    std::string param;
    std::string from;
    std::string to;
    int steps = 11;
    bool log = false;
    std::string output;
};

int cmd_sweep(const std::string& path, SweepFlags f, const CLI::App& sub, std::ostream& out)
{
    const auto loaded = load(path);
    // flags recorded in a manifest fill in whatever the command line leaves out
    const auto& mf = loaded.flags;
    if (sub.count("--param") == 0 && mf.contains("param")) {
        f.param = mf.at("param").get<std::string>();
    }
    if (sub.count("--from") == 0 && mf.contains("from")) {
        f.from = mf.at("from").get<std::string>();
    }
    if (sub.count("--to") == 0 && mf.contains("to")) {
        f.to = mf.at("to").get<std::string>();
    }
    if (sub.count("--steps") == 0 && mf.contains("steps")) {
        f.steps = mf.at("steps").get<int>();
    }
    if (sub.count("--log") == 0 && sub.count("--linear") == 0 && mf.contains("log")) {
        f.log = mf.at("log").get<bool>();
    }
    if (f.param.empty() || f.from.empty()) {
        throw ConfigError("sweep needs --param and --from");
    }
    if (f.to.empty()) {
        f.to = f.from;
    }
    planner::SweepParameter parameter;
    try {
        parameter = planner::parse_sweep_parameter(f.param);
    } catch (const UsageError& e) {
        throw ConfigError(e.what());
    }
    if (f.steps < 1) {
        throw ConfigError("--steps must be at least 1");
    }
    const auto [lo, lo_db] = parse_value(f.from);
    const auto [hi, hi_db] = parse_value(f.to);
    if (lo_db != hi_db) {
        throw ConfigError("--from and --to must both be in dB or both linear");
    }
    if (f.log && (!(lo > 0.0) || !(hi > 0.0))) {
        throw ConfigError("--log needs positive bounds");
    }
    std::vector<double> shown;
    for (int i = 0; i < f.steps; ++i) {
        const double t = f.steps == 1 ? 0.0 : static_cast<double>(i) / (f.steps - 1);
        shown.push_back(f.log ? lo * std::pow(hi / lo, t) : lo + (hi - lo) * t);
    }
    std::vector<double> grid;
    for (double v : shown) {
        grid.push_back(lo_db ? db_to_linear(v) : v);
    }
    const auto cfg = resolve(loaded.values);
    planner::SweepCurve curve;
    try {
        curve = planner::sweep(cfg.scenario, parameter, grid);
    } catch (const UsageError& e) {
        throw ConfigError(e.what());
    }
    std::ostringstream csv;
    csv << "param_value,n_absf,c_nsf_bps,c_absf_bps\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& r = curve.points[i];
        csv << format_number(shown[i]) << ',' << r.n_absf << ',' << format_number(r.c_nsf) << ','
            << format_number(r.c_absf) << '\n';
    }
    const Json flags{{"param", f.param}, {"from", f.from}, {"to", f.to}, {"steps", f.steps}, {"log", f.log}};
    if (f.output.empty()) {
        out << csv.str();
    } else {
        open_output(f.output) << csv.str();
        write_manifest(f.output, manifest("sweep", loaded.values, flags));
    }
    return kOk;
}

struct SimulateFlags {
    std::optional<int> snapshots;
    std::optional<int> frames;
    std::optional<std::string> scheduler;
    std::optional<std::string> absf;
    std::optional<std::uint64_t> seed;
    std::string csv;
};

Json class_json(const sim::ClassSummary& s)
{
    return Json{
        {"count", s.count},
        {"mean_bps", s.mean_throughput_bps},
        {"mean_outage_bps", s.mean_outage_bps},
        {"p5_bps", s.p5_bps},
        {"p50_bps", s.p50_bps},
        {"p95_bps", s.p95_bps},
        {"fraction_meeting_c_v_min", s.fraction_meeting_target},
    };
}

int cmd_simulate(const std::string& path, const SimulateFlags& f, std::ostream& out)
{
    auto loaded = load(path);
    auto& v = loaded.values;
    if (f.snapshots) {
        v.snapshots = *f.snapshots;
    }
    if (f.frames) {
        v.frames_per_snapshot = *f.frames;
    }
    if (f.scheduler) {
        if (*f.scheduler != "rr" && *f.scheduler != "pf") {
            throw ConfigError("--scheduler must be rr or pf");
        }
        v.scheduler = *f.scheduler;
    }
    if (f.seed) {
        v.seed = *f.seed;
    }
    if (f.absf) {
        if (*f.absf == "plan") {
            v.absf_count = planner::plan(resolve(v).scenario).n_absf;
        } else {
            try {
                std::size_t used = 0;
                v.absf_count = std::stoi(*f.absf, &used);
                if (used != f.absf->size()) {
                    throw std::invalid_argument("trailing characters");
                }
            } catch (const std::exception&) {
                throw ConfigError("--absf must be an integer or 'plan'");
            }
        }
    }
    const auto cfg = resolve(v);
    const auto study = sim::simulate(cfg);
    // the manifest carries the fully resolved config, so replaying it needs no flags
    const auto m = manifest("simulate", v, Json::object());
    if (!f.csv.empty()) {
        auto file = open_output(f.csv);
        sim::write_ue_csv(file, study, cfg.scenario.kind);
        write_manifest(f.csv, m);
    }
    const Json summary{
        {"absf_count", cfg.absf_count},
        {"scheduler", std::string(sim::to_string(cfg.scheduler))},
        {"victim_mean_outage_bps", study.victims.mean_outage_bps},
        {"excluded_ues", study.excluded_ues},
        {"classes",
         Json{{"victim", class_json(study.victims)},
              {"non_victim", class_json(study.non_victims)},
              {"all", class_json(study.all)},
              {"macro_ue", class_json(study.macro_ues)},
              {"small_ue", class_json(study.small_ues)}}},
    };
    out << Json{{"summary", summary}, {"manifest", m}}.dump(2) << '\n';
    return kOk;
}

std::string format_row(const ValidationRow& r)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::left << std::setw(18) << r.quantity << std::right << std::setprecision(6) << std::fixed
       << std::setw(12) << r.analytic << std::setw(12) << r.simulated << std::showpos << std::setw(12)
       << r.deviation << std::noshowpos << "  " << std::left << std::setw(22) << r.tolerance
       << (r.pass ? "PASS" : "FAIL");
    return os.str();
}

int cmd_validate(const std::string& path, double corrupt, std::ostream& out)
{
    const auto loaded = load(path);
    const auto cfg = resolve(loaded.values);
    const auto rows = validation_rows(cfg, corrupt);
    out << std::left << std::setw(18) << "quantity" << std::right << std::setw(12) << "analytic" << std::setw(12)
        << "simulated" << std::setw(12) << "deviation" << "  " << std::left << std::setw(22) << "tolerance"
        << "status\n";
    bool ok = true;
    for (const auto& r : rows) {
        out << format_row(r) << '\n';
        ok = ok && r.pass;
    }
    return ok ? kOk : kValidationFailed;
}

} // namespace

std::vector<ValidationRow> validation_rows(const sim::SimConfig& config, double analytic_scale)
{
    const auto& p = config.scenario;
    std::vector<ValidationRow> rows;
    const auto absolute = [&](std::string name, double a, double s, double tol) {
        a *= analytic_scale;
        std::ostringstream t;
        t << "|dev| <= " << tol;
        rows.push_back({std::move(name), a, s, a - s, t.str(), std::abs(a - s) <= tol});
    };
    const auto relative = [&](std::string name, double a, double s, double tol) {
        a *= analytic_scale;
        std::ostringstream t;
        t << "|dev|/sim <= " << tol;
        rows.push_back({std::move(name), a, s, a - s, t.str(), std::abs(a - s) <= tol * s});
    };
    const auto lower_bound = [&](std::string name, double a, double s, double tol) {
        a *= analytic_scale;
        std::ostringstream t;
        t << "ana <= sim*(1+" << tol << ")";
        rows.push_back({std::move(name), a, s, a - s, t.str(), a <= s * (1.0 + tol)});
    };
    for (auto kind : {SubframeKind::NSF, SubframeKind::ABSF}) {
        const auto mc = sim::estimate_success_probability(config, kind);
        absolute("success_" + std::string(kind == SubframeKind::NSF ? "nsf" : "absf"),
                 success::success_probability(p, kind), mc.value, 0.02);
    }
    const auto frac = sim::estimate_victim_fraction(config);
    {
        const double a = victim_probability(p) * analytic_scale;
        const double tol = 3.0 * frac.std_error;
        std::ostringstream t;
        t << "|dev| <= 3se = " << std::setprecision(3) << tol;
        rows.push_back({"victim_fraction", a, frac.value, a - frac.value, t.str(), std::abs(a - frac.value) <= tol});
    }
    const bool mf = p.kind == ScenarioKind::MacroFemto;
    const auto nsf = sim::estimate_rr_share(config, SubframeKind::NSF);
    const auto absf = sim::estimate_rr_share(config, SubframeKind::ABSF);
    if (mf) {
        relative("omega_nsf", rrfrac::omega_for(p, SubframeKind::NSF), nsf.mean, 0.05);
    } else {
        lower_bound("omega_nsf", rrfrac::omega_for(p, SubframeKind::NSF), nsf.mean, 0.02);
    }
    lower_bound("omega_absf", rrfrac::omega_for(p, SubframeKind::ABSF), absf.mean, 0.02);
    return rows;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"ABSF planning toolkit: analytic ABSF count and Monte Carlo cross-checks", "absf"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string config_path;
    std::string plan_output;
    auto* plan = app.add_subcommand("plan", "compute the required number of ABSFs");
    plan->add_option("config", config_path, "config or manifest JSON")->required();
    plan->add_option("-o,--output", plan_output, "write the result JSON here instead of stdout");

    SweepFlags sweep_flags;
    auto* sweep = app.add_subcommand("sweep", "required ABSFs over a parameter grid (CSV)");
    sweep->add_option("config", config_path, "config or manifest JSON")->required();
    sweep->add_option("--param", sweep_flags.param, "one of " + planner::sweep_parameter_names());
    sweep->add_option("--from", sweep_flags.from, "first grid value; suffix dB for logarithmic units");
    sweep->add_option("--to", sweep_flags.to, "last grid value");
    sweep->add_option("--steps", sweep_flags.steps, "number of grid points");
    auto* log_flag = sweep->add_flag("--log", sweep_flags.log, "geometric spacing");
    auto* linear_flag = sweep->add_flag("--linear", "arithmetic spacing (default)");
    log_flag->excludes(linear_flag);
    sweep->add_option("-o,--output", sweep_flags.output, "CSV path; a .manifest.json is written next to it");

    SimulateFlags sim_flags;
    auto* simulate = app.add_subcommand("simulate", "snapshot Monte Carlo throughput study");
    simulate->add_option("config", config_path, "config or manifest JSON")->required();
    simulate->add_option("--snapshots", sim_flags.snapshots, "number of snapshots");
    simulate->add_option("--frames", sim_flags.frames, "frames per snapshot");
    simulate->add_option("--scheduler", sim_flags.scheduler, "rr or pf");
    simulate->add_option("--absf", sim_flags.absf, "ABSFs per frame, or 'plan' to use the planner's count");
    simulate->add_option("--seed", sim_flags.seed, "64-bit seed");
    simulate->add_option("--csv", sim_flags.csv, "per-UE CSV path; a .manifest.json is written next to it");

    double corrupt = 1.0;
    auto* validate = app.add_subcommand("validate", "analytic versus Monte Carlo report");
    validate->add_option("config", config_path, "config or manifest JSON")->required();
    validate->add_option("--corrupt-analytic", corrupt, "scale analytic values (harness self-test)")->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return kOk;
    } catch (const CLI::Success&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (plan->parsed()) {
            return cmd_plan(config_path, plan_output, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config_path, sweep_flags, *sweep, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(config_path, sim_flags, out);
        }
        return cmd_validate(config_path, corrupt, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const UsageError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InsufficientDataError& e) {
        err << "insufficient samples: " << e.what() << "; increase snapshots or mc_samples\n";
        return kInsufficientSamples;
    }
}

} // namespace absf::cli
