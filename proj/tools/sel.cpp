// sel: closed-form statistics, Monte Carlo simulation, and physical design
// of a sub-Poissonian single-electron maser jump process.
//
// Subcommands:
//   analytic  closed-form spectra and closed-loop noise summary
//   simulate  renewal Monte Carlo: Fano estimate + Bartlett periodogram
//   design    steady-state solver / minimum-noise cavity preset
//   validate  oracle suite (quadrature, ODE, series, Monte Carlo)
//
// Exit codes: 0 success, 1 validation/numeric failure, 2 usage or parameter
// error, 3 no steady state. Machine output uses 17 significant digits;
// stdout tables use 6. All outputs carry schema_version and the effective
// configuration, and are byte-deterministic given (config, seed).

#include <cerrno>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "sel/analytics.hpp"
#include "sel/checks.hpp"
#include "sel/core.hpp"
#include "sel/design.hpp"
#include "sel/io.hpp"
#include "sel/renewal.hpp"

namespace {

using sel::io::fmt17;
using sel::io::fmt6;

constexpr int schema_version = 1;

struct CommonOutput {
    std::string out_dir = ".";
};

std::ofstream open_output(const CommonOutput& common, const std::string& name) {
    std::filesystem::create_directories(common.out_dir);
    const std::filesystem::path path =
        std::filesystem::path(common.out_dir) / name;
    std::ofstream stream(path, std::ios::binary); // '\n' endings everywhere
    if (!stream) {
        throw sel::ParameterError("cli: cannot open output file " + path.string());
    }
    return stream;
}

// One "# key=value" header line per config entry, identical across reruns.
void write_csv_header(std::ofstream& out,
                      const std::vector<std::pair<std::string, std::string>>& entries) {
    out << "# schema_version=" << schema_version << "\n";
    for (const auto& [key, value] : entries) {
        out << "# " << key << "=" << value << "\n";
    }
}

std::string json_string(const std::string& value) {
    return "\"" + sel::io::json_escape(value) + "\"";
}

// ------------------------------------------------------------- config files
//
// Plain key=value files provide defaults for a subcommand's long options
// (key = option name without the leading dashes). Precedence: flag > env
// var > file > built-in default. '#' starts a comment; unknown keys are
// rejected so typos cannot silently change a run.

std::string trim_copy(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw sel::ParameterError("config: cannot open " + path);
    }
    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim_copy(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        const std::string where = path + ":" + std::to_string(line_no);
        if (eq == std::string::npos) {
            throw sel::ParameterError("config: " + where + ": expected key=value");
        }
        const std::string key = trim_copy(line.substr(0, eq));
        if (key.empty()) {
            throw sel::ParameterError("config: " + where + ": empty key");
        }
        entries[key] = trim_copy(line.substr(eq + 1)); // last duplicate wins
    }
    return entries;
}

double parse_config_double(const std::string& key, const std::string& text) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (errno != 0 || end == text.c_str() || *end != '\0') {
        throw sel::ParameterError("config: key '" + key + "': cannot parse '"
                                  + text + "' as a number");
    }
    return value;
}

std::uint64_t parse_config_count(
    const std::string& key, const std::string& text,
    std::uint64_t max_value = std::numeric_limits<std::uint64_t>::max()) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0'
        || text.find('-') != std::string::npos || value > max_value) {
        throw sel::ParameterError("config: key '" + key + "': cannot parse '"
                                  + text + "' as a non-negative integer");
    }
    return value;
}

bool parse_config_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no" || text == "off") {
        return false;
    }
    throw sel::ParameterError("config: key '" + key + "': cannot parse '"
                              + text + "' as a boolean");
}

struct FileKey {
    std::string key;                               // long option name, no dashes
    std::function<void(const std::string&)> set;   // parse + assign into config
    bool* given = nullptr;                         // set when flag/env/file provided it
};

void apply_config_file(CLI::App* cmd, const std::string& path,
                       const std::vector<FileKey>& keys) {
    std::map<std::string, std::string> entries;
    if (!path.empty()) {
        entries = read_config_file(path);
    }
    for (const auto& item : keys) {
        const CLI::Option* option = cmd->get_option("--" + item.key);
        const bool from_cli = option->count() > 0; // includes env-var results
        const auto found = entries.find(item.key);
        const bool from_file = found != entries.end();
        if (!from_cli && from_file) {
            item.set(found->second);
        }
        if (item.given != nullptr) {
            *item.given = from_cli || from_file;
        }
        if (from_file) {
            entries.erase(found);
        }
    }
    if (!entries.empty()) {
        throw sel::ParameterError("config: unknown key '"
                                  + entries.begin()->first + "' in " + path);
    }
}

void require_given(bool given, const char* command, const char* flag) {
    if (!given) {
        throw sel::ParameterError(std::string(command) + ": " + flag
                                  + " is required (flag or config file)");
    }
}

void write_spectrum_csv(std::ofstream& out,
                        const std::vector<std::pair<std::string, std::string>>& header,
                        const sel::analytics::SpectralCurve& curve) {
    write_csv_header(out, header);
    const bool estimated =
        curve.kind == sel::analytics::CurveKind::EstimatedJump;
    out << (estimated ? "omega,s_over_r,stderr\n" : "omega,s_over_r\n");
    for (std::size_t i = 0; i < curve.omega_grid.size(); ++i) {
        out << fmt17(curve.omega_grid[i]) << ',' << fmt17(curve.values[i]);
        if (estimated) {
            out << ',' << fmt17(curve.stderr_values[i]);
        }
        out << '\n';
    }
}

// ---------------------------------------------------------------- analytic

struct AnalyticConfig {
    double gamma = 0.0;
    double rabi = 0.0;
    std::string omega_grid = "0.01:20:200log";
    CommonOutput common;
};

int cmd_analytic(const AnalyticConfig& config) {
    const sel::RateParams params{config.gamma, config.rabi};
    const std::vector<double> grid = sel::io::parse_grid(config.omega_grid);
    const auto curve = sel::analytics::analytic_jump_curve(params, grid);
    const auto derived = sel::derive(params);
    const double mean_tau = sel::analytics::mean_waiting_time(params);
    const double fano0 = sel::analytics::zero_frequency_fano(params);
    const auto loop = sel::analytics::closed_loop_noise(params);

    const std::vector<std::pair<std::string, std::string>> header = {
        {"command", "analytic"},
        {"gamma", fmt17(config.gamma)},
        {"rabi", fmt17(config.rabi)},
        {"omega_grid", config.omega_grid},
        {"kind", "analytic"},
    };
    auto csv = open_output(config.common, "analytic_spectrum.csv");
    write_spectrum_csv(csv, header, curve);

    auto json = open_output(config.common, "analytic_summary.json");
    json << "{\n"
         << "  \"schema_version\": " << schema_version << ",\n"
         << "  \"command\": \"analytic\",\n"
         << "  \"units\": \"rates and times in one consistent arbitrary time unit\",\n"
         << "  \"config\": {\n"
         << "    \"gamma\": " << fmt17(config.gamma) << ",\n"
         << "    \"rabi\": " << fmt17(config.rabi) << ",\n"
         << "    \"omega_grid\": " << json_string(config.omega_grid) << "\n"
         << "  },\n"
         << "  \"regime\": " << json_string(sel::to_string(derived.regime)) << ",\n"
         << "  \"a\": " << fmt17(derived.a) << ",\n"
         << "  \"mean_tau\": " << fmt17(mean_tau) << ",\n"
         << "  \"fano0\": " << fmt17(fano0) << ",\n"
         << "  \"feedback_gain\": " << fmt17(loop.feedback_gain) << ",\n"
         << "  \"detected_level\": " << fmt17(loop.detected_level) << "\n"
         << "}\n";

    std::printf("analytic: a=%s regime=%s mean_tau=%s fano0=%s detected_level=%s\n",
                fmt6(derived.a).c_str(), sel::to_string(derived.regime),
                fmt6(mean_tau).c_str(), fmt6(fano0).c_str(),
                fmt6(loop.detected_level).c_str());
    std::printf("analytic: wrote analytic_spectrum.csv and analytic_summary.json in %s\n",
                config.common.out_dir.c_str());
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimulateConfig {
    double gamma = 0.0;
    double rabi = 0.0;
    double horizon = 5000.0;
    std::size_t trajectories = 100;
    double window = 200.0;
    std::string omega_grid = "0.05:10:25log";
    std::uint64_t seed = 0;
    bool seed_given = false;
    unsigned threads = 0;
    bool poisson_control = false;
    CommonOutput common;
};

int cmd_simulate(SimulateConfig config) {
    const sel::RateParams params{config.gamma, config.rabi};
    if (!config.seed_given) {
        std::random_device device;
        config.seed = (static_cast<std::uint64_t>(device()) << 32)
                      ^ device();
        std::fprintf(stderr, "simulate: no seed given; using %llu\n",
                     static_cast<unsigned long long>(config.seed));
    }
    const double mean_tau = sel::analytics::mean_waiting_time(params);
    if (config.horizon < 100.0 * mean_tau) {
        std::fprintf(stderr,
                     "simulate: warning: horizon %s is below 100 mean waiting"
                     " times (%s); estimates may be biased\n",
                     fmt6(config.horizon).c_str(),
                     fmt6(100.0 * mean_tau).c_str());
    }
    const auto mode = config.poisson_control
                          ? sel::renewal::SamplingMode::PoissonControl
                          : sel::renewal::SamplingMode::Renewal;
    const auto ensemble = sel::renewal::generate_ensemble(
        params, config.horizon, config.trajectories, config.seed, mode,
        config.threads);
    const std::vector<double> grid = sel::io::parse_grid(config.omega_grid);
    const auto curve = sel::renewal::periodogram(ensemble, grid);
    const auto fano = sel::renewal::fano_factor(ensemble, config.window);
    const double fano0 = sel::analytics::zero_frequency_fano(params);

    const std::string mode_name =
        config.poisson_control ? "poisson-control" : "renewal";
    const std::vector<std::pair<std::string, std::string>> header = {
        {"command", "simulate"},
        {"gamma", fmt17(config.gamma)},
        {"rabi", fmt17(config.rabi)},
        {"horizon", fmt17(config.horizon)},
        {"trajectories", std::to_string(config.trajectories)},
        {"window", fmt17(config.window)},
        {"omega_grid", config.omega_grid},
        {"mode", mode_name},
        {"seed", std::to_string(config.seed)},
        {"threads", std::to_string(config.threads)},
        {"kind", "estimated"},
    };
    auto csv = open_output(config.common, "simulate_spectrum.csv");
    write_spectrum_csv(csv, header, curve);

    auto json = open_output(config.common, "simulate_fano.json");
    json << "{\n"
         << "  \"schema_version\": " << schema_version << ",\n"
         << "  \"command\": \"simulate\",\n"
         << "  \"units\": \"rates and times in one consistent arbitrary time unit\",\n"
         << "  \"config\": {\n"
         << "    \"gamma\": " << fmt17(config.gamma) << ",\n"
         << "    \"rabi\": " << fmt17(config.rabi) << ",\n"
         << "    \"horizon\": " << fmt17(config.horizon) << ",\n"
         << "    \"trajectories\": " << config.trajectories << ",\n"
         << "    \"window\": " << fmt17(config.window) << ",\n"
         << "    \"omega_grid\": " << json_string(config.omega_grid) << ",\n"
         << "    \"mode\": " << json_string(mode_name) << ",\n"
         << "    \"threads\": " << config.threads << "\n"
         << "  },\n"
         << "  \"seed\": " << config.seed << ",\n"
         << "  \"fano\": {\n"
         << "    \"window\": " << fmt17(fano.window) << ",\n"
         << "    \"mean_count\": " << fmt17(fano.mean_count) << ",\n"
         << "    \"variance\": " << fmt17(fano.variance) << ",\n"
         << "    \"fano\": " << fmt17(fano.fano) << ",\n"
         << "    \"stderr\": " << fmt17(fano.stderr_value) << ",\n"
         << "    \"n_windows\": " << fano.n_windows << "\n"
         << "  },\n"
         << "  \"analytic_fano0\": " << fmt17(fano0) << "\n"
         << "}\n";

    std::printf("simulate: mode=%s seed=%llu trajectories=%zu windows=%zu\n",
                mode_name.c_str(),
                static_cast<unsigned long long>(config.seed),
                config.trajectories, fano.n_windows);
    std::printf("simulate: fano=%s +- %s (analytic zero-frequency value %s)\n",
                fmt6(fano.fano).c_str(), fmt6(fano.stderr_value).c_str(),
                fmt6(fano0).c_str());
    std::printf("simulate: wrote simulate_spectrum.csv and simulate_fano.json in %s\n",
                config.common.out_dir.c_str());
    return 0;
}

// ------------------------------------------------------------------ design

struct DesignConfig {
    bool min_noise = false;
    double pump_rate = 0.0;
    double tau_p = 0.0;
    double volume = 0.0;
    double nu = 0.0;
    CommonOutput common;
};

void write_si(std::ofstream& json, const char* key, double value,
              const char* unit, bool trailing_comma = true) {
    json << "    \"" << key << "\": {\"value\": " << fmt17(value)
         << ", \"unit\": \"" << unit << "\"}" << (trailing_comma ? ",\n" : "\n");
}

int cmd_design(const DesignConfig& config) {
    sel::design::SteadyStateSolution solution;
    bool have_cavity = false;
    sel::design::CavityDesign cavity;

    if (config.min_noise) {
        cavity = sel::design::minimum_noise_design(config.tau_p, config.nu);
        have_cavity = true;
        solution = sel::design::steady_state_solve(cavity.pump_rate,
                                                   cavity.tau_p, cavity.volume);
    } else {
        solution = sel::design::steady_state_solve(config.pump_rate,
                                                   config.tau_p, config.volume);
    }

    auto json = open_output(config.common, "design.json");
    json << "{\n"
         << "  \"schema_version\": " << schema_version << ",\n"
         << "  \"command\": \"design\",\n"
         << "  \"mode\": "
         << json_string(config.min_noise ? "min-noise" : "steady-state") << ",\n"
         << "  \"config\": {\n";
    if (config.min_noise) {
        json << "    \"tau_p\": {\"value\": " << fmt17(config.tau_p)
             << ", \"unit\": \"s\"},\n"
             << "    \"nu\": {\"value\": " << fmt17(config.nu)
             << ", \"unit\": \"Hz\"}\n";
    } else {
        json << "    \"pump_rate\": {\"value\": " << fmt17(config.pump_rate)
             << ", \"unit\": \"1/s\"},\n"
             << "    \"tau_p\": {\"value\": " << fmt17(config.tau_p)
             << ", \"unit\": \"s\"},\n"
             << "    \"volume\": {\"value\": " << fmt17(config.volume)
             << ", \"unit\": \"m^3\"}\n";
    }
    json << "  },\n";
    json << "  \"coupling_constant\": {\"value\": "
         << fmt17(sel::design::coupling_constant())
         << ", \"unit\": \"m^3/s^2\"},\n";
    if (have_cavity) {
        json << "  \"cavity\": {\n";
        write_si(json, "d", cavity.d, "m");
        write_si(json, "nu", cavity.nu, "Hz");
        write_si(json, "omega", cavity.omega(), "rad/s");
        write_si(json, "volume", cavity.volume, "m^3");
        write_si(json, "tau_p", cavity.tau_p, "s");
        write_si(json, "pump_rate", cavity.pump_rate, "1/s");
        json << "    \"mu\": " << fmt17(cavity.mu) << ",\n";
        write_si(json, "gamma", cavity.gamma, "1/s");
        write_si(json, "rabi", cavity.rabi, "rad/s");
        json << "    \"a\": " << fmt17(cavity.a) << ",\n";
        write_si(json, "plate_area", cavity.plate_area(), "m^2");
        write_si(json, "plate_side", cavity.plate_side(), "m");
        write_si(json, "capacitance", cavity.capacitance(), "F");
        write_si(json, "inductance", cavity.inductance(), "H", false);
        json << "  },\n";
    }
    json << "  \"steady_state\": {\n"
         << "    \"mu\": " << fmt17(solution.mu) << ",\n";
    write_si(json, "rabi", solution.rabi, "rad/s");
    json << "    \"roots\": [\n";
    for (std::size_t i = 0; i < solution.roots.size(); ++i) {
        const auto& root = solution.roots[i];
        const sel::RateParams at_root{root.gamma, solution.rabi};
        json << "      {\"gamma\": {\"value\": " << fmt17(root.gamma)
             << ", \"unit\": \"1/s\"}, \"a\": " << fmt17(root.a)
             << ", \"fano0\": "
             << fmt17(sel::analytics::zero_frequency_fano(at_root))
             << ", \"detected_level\": "
             << fmt17(sel::analytics::detected_noise_level(at_root)) << "}"
             << (i + 1 < solution.roots.size() ? "," : "") << "\n";
    }
    json << "    ]\n"
         << "  }\n"
         << "}\n";

    if (have_cavity) {
        std::printf("design: d=%s m  volume=%s m^3  plate side=%s m\n",
                    fmt6(cavity.d).c_str(), fmt6(cavity.volume).c_str(),
                    fmt6(cavity.plate_side()).c_str());
    }
    std::printf("design: mu=%s rabi=%s rad/s, %zu steady-state root(s):\n",
                fmt6(solution.mu).c_str(), fmt6(solution.rabi).c_str(),
                solution.roots.size());
    for (const auto& root : solution.roots) {
        const sel::RateParams at_root{root.gamma, solution.rabi};
        std::printf("design:   gamma=%s 1/s  a=%s  detected_level=%s\n",
                    fmt6(root.gamma).c_str(), fmt6(root.a).c_str(),
                    fmt6(sel::analytics::detected_noise_level(at_root)).c_str());
    }
    std::printf("design: wrote design.json in %s\n", config.common.out_dir.c_str());
    return 0;
}

// ---------------------------------------------------------------- validate

struct ValidateConfig {
    sel::checks::Options options;
};

int cmd_validate(const ValidateConfig& config) {
    const auto results = sel::checks::run_checks(config.options);
    std::size_t passed = 0;
    std::printf("%-34s %-6s %s\n", "check", "status", "detail");
    for (const auto& result : results) {
        passed += result.passed ? 1 : 0;
        std::printf("%-34s %-6s %s\n", result.name.c_str(),
                    result.passed ? "PASS" : "FAIL", result.detail.c_str());
    }
    const bool ok = sel::checks::all_passed(results);
    std::printf("RESULT: %s (%zu/%zu)\n", ok ? "PASS" : "FAIL", passed,
                results.size());
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"sub-Poissonian single-electron maser: analytics, Monte Carlo"
                 " simulation, and cavity design"};
    app.require_subcommand(1);

    AnalyticConfig analytic;
    std::string analytic_config_path;
    CLI::App* analytic_cmd = app.add_subcommand(
        "analytic", "closed-form spectra and closed-loop noise summary");
    analytic_cmd->add_option("--config", analytic_config_path,
                             "plain key=value config file; flags override it");
    analytic_cmd->add_option("--gamma", analytic.gamma,
                             "jump half-rate gamma [1/time] (required)");
    analytic_cmd->add_option("--rabi", analytic.rabi,
                             "Rabi angular frequency [rad/time] (required)");
    analytic_cmd->add_option("--omega-grid", analytic.omega_grid,
                             "frequency grid start:stop:COUNTlog|lin")->capture_default_str();
    analytic_cmd->add_option("--out-dir", analytic.common.out_dir,
                             "output directory")->capture_default_str();

    SimulateConfig simulate;
    std::string simulate_config_path;
    CLI::App* simulate_cmd = app.add_subcommand(
        "simulate", "renewal Monte Carlo: Fano estimate and periodogram");
    simulate_cmd->add_option("--config", simulate_config_path,
                             "plain key=value config file; flags override it");
    simulate_cmd->add_option("--gamma", simulate.gamma,
                             "jump half-rate gamma [1/time] (required)");
    simulate_cmd->add_option("--rabi", simulate.rabi,
                             "Rabi angular frequency [rad/time] (required)");
    simulate_cmd->add_option("--horizon", simulate.horizon,
                             "observation time per trajectory")->capture_default_str();
    simulate_cmd->add_option("--trajectories", simulate.trajectories,
                             "ensemble size")->capture_default_str();
    simulate_cmd->add_option("--window", simulate.window,
                             "Fano counting window")->capture_default_str();
    simulate_cmd->add_option("--omega-grid", simulate.omega_grid,
                             "frequency grid start:stop:COUNTlog|lin")->capture_default_str();
    simulate_cmd->add_option("--seed", simulate.seed,
                             "RNG master seed (default: random, recorded)")
        ->envname("SEL_SEED");
    simulate_cmd->add_option("--threads", simulate.threads,
                             "worker threads (0 = hardware)")->capture_default_str()
        ->envname("SEL_THREADS");
    simulate_cmd->add_flag("--poisson-control", simulate.poisson_control,
                           "exponential gaps at the same mean rate"
                           " (shot-noise benchmark)");
    simulate_cmd->add_option("--out-dir", simulate.common.out_dir,
                             "output directory")->capture_default_str();

    DesignConfig design;
    std::string design_config_path;
    CLI::App* design_cmd = app.add_subcommand(
        "design", "steady-state solver / minimum-noise cavity preset");
    design_cmd->add_option("--config", design_config_path,
                           "plain key=value config file; flags override it");
    CLI::Option* min_noise_option = design_cmd->add_flag(
        "--min-noise", design.min_noise,
        "minimum-noise preset: mu=1, a=1/4 (needs --tau-p and --nu)");
    CLI::Option* pump_option =
        design_cmd->add_option("--pump-rate", design.pump_rate,
                               "pump rate J [1/s]");
    design_cmd->add_option("--tau-p", design.tau_p, "photon lifetime [s]");
    CLI::Option* volume_option =
        design_cmd->add_option("--volume", design.volume,
                               "capacitor volume [m^3]");
    design_cmd->add_option("--nu", design.nu, "transition frequency [Hz]");
    min_noise_option->excludes(pump_option, volume_option);
    design_cmd->add_option("--out-dir", design.common.out_dir,
                           "output directory")->capture_default_str();

    ValidateConfig validate;
    std::string validate_config_path;
    CLI::App* validate_cmd = app.add_subcommand(
        "validate", "run the oracle suite (exit 0 iff every check passes)");
    validate_cmd->add_option("--config", validate_config_path,
                             "plain key=value config file; flags override it");
    validate_cmd->add_flag("--quick", validate.options.quick,
                           "skip the Monte Carlo checks");
    validate_cmd->add_option("--seed", validate.options.seed,
                             "RNG seed for the statistical checks")->capture_default_str()
        ->envname("SEL_SEED");
    validate_cmd->add_option("--threads", validate.options.threads,
                             "worker threads (0 = hardware)")->capture_default_str()
        ->envname("SEL_THREADS");
    validate_cmd
        ->add_flag("--inject-fault", validate.options.inject_fault,
                   "append one deliberately failing check")
        ->group(""); // internal failure-path hook, hidden from help

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage/parameter errors are exit 2
    }

    try {
        if (analytic_cmd->parsed()) {
            bool gamma_given = false;
            bool rabi_given = false;
            apply_config_file(
                analytic_cmd, analytic_config_path,
                {{"gamma",
                  [&](const std::string& v) {
                      analytic.gamma = parse_config_double("gamma", v);
                  },
                  &gamma_given},
                 {"rabi",
                  [&](const std::string& v) {
                      analytic.rabi = parse_config_double("rabi", v);
                  },
                  &rabi_given},
                 {"omega-grid",
                  [&](const std::string& v) { analytic.omega_grid = v; }},
                 {"out-dir",
                  [&](const std::string& v) { analytic.common.out_dir = v; }}});
            require_given(gamma_given, "analytic", "--gamma");
            require_given(rabi_given, "analytic", "--rabi");
            return cmd_analytic(analytic);
        }
        if (simulate_cmd->parsed()) {
            bool gamma_given = false;
            bool rabi_given = false;
            apply_config_file(
                simulate_cmd, simulate_config_path,
                {{"gamma",
                  [&](const std::string& v) {
                      simulate.gamma = parse_config_double("gamma", v);
                  },
                  &gamma_given},
                 {"rabi",
                  [&](const std::string& v) {
                      simulate.rabi = parse_config_double("rabi", v);
                  },
                  &rabi_given},
                 {"horizon",
                  [&](const std::string& v) {
                      simulate.horizon = parse_config_double("horizon", v);
                  }},
                 {"trajectories",
                  [&](const std::string& v) {
                      simulate.trajectories = static_cast<std::size_t>(
                          parse_config_count("trajectories", v));
                  }},
                 {"window",
                  [&](const std::string& v) {
                      simulate.window = parse_config_double("window", v);
                  }},
                 {"omega-grid",
                  [&](const std::string& v) { simulate.omega_grid = v; }},
                 {"seed",
                  [&](const std::string& v) {
                      simulate.seed = parse_config_count("seed", v);
                  },
                  &simulate.seed_given},
                 {"threads",
                  [&](const std::string& v) {
                      simulate.threads = static_cast<unsigned>(parse_config_count(
                          "threads", v, std::numeric_limits<unsigned>::max()));
                  }},
                 {"poisson-control",
                  [&](const std::string& v) {
                      simulate.poisson_control =
                          parse_config_bool("poisson-control", v);
                  }},
                 {"out-dir",
                  [&](const std::string& v) { simulate.common.out_dir = v; }}});
            require_given(gamma_given, "simulate", "--gamma");
            require_given(rabi_given, "simulate", "--rabi");
            return cmd_simulate(simulate);
        }
        if (design_cmd->parsed()) {
            bool pump_given = false;
            bool tau_given = false;
            bool volume_given = false;
            bool nu_given = false;
            apply_config_file(
                design_cmd, design_config_path,
                {{"min-noise",
                  [&](const std::string& v) {
                      design.min_noise = parse_config_bool("min-noise", v);
                  }},
                 {"pump-rate",
                  [&](const std::string& v) {
                      design.pump_rate = parse_config_double("pump-rate", v);
                  },
                  &pump_given},
                 {"tau-p",
                  [&](const std::string& v) {
                      design.tau_p = parse_config_double("tau-p", v);
                  },
                  &tau_given},
                 {"volume",
                  [&](const std::string& v) {
                      design.volume = parse_config_double("volume", v);
                  },
                  &volume_given},
                 {"nu",
                  [&](const std::string& v) {
                      design.nu = parse_config_double("nu", v);
                  },
                  &nu_given},
                 {"out-dir",
                  [&](const std::string& v) { design.common.out_dir = v; }}});
            if (design.min_noise) {
                if (!tau_given || !nu_given) {
                    std::fprintf(stderr,
                                 "design: --min-noise requires --tau-p and"
                                 " --nu\n");
                    return 2;
                }
            } else if (!pump_given || !tau_given || !volume_given) {
                std::fprintf(stderr,
                             "design: give --pump-rate, --tau-p and --volume,"
                             " or use --min-noise\n");
                return 2;
            }
            (void)pump_option;
            (void)volume_option;
            return cmd_design(design);
        }
        if (validate_cmd->parsed()) {
            apply_config_file(
                validate_cmd, validate_config_path,
                {{"quick",
                  [&](const std::string& v) {
                      validate.options.quick = parse_config_bool("quick", v);
                  }},
                 {"seed",
                  [&](const std::string& v) {
                      validate.options.seed = parse_config_count("seed", v);
                  }},
                 {"threads",
                  [&](const std::string& v) {
                      validate.options.threads = static_cast<unsigned>(
                          parse_config_count(
                              "threads", v,
                              std::numeric_limits<unsigned>::max()));
                  }}});
            return cmd_validate(validate);
        }
    } catch (const sel::NoSteadyStateError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const sel::ParameterError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const sel::InsufficientDataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const sel::NumericError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
