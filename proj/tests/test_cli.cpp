// Subprocess tests of the sel command-line tool. argv[1] is the path to the
// built binary. Exercises exit codes, output schemas, determinism, and the
// config-file precedence rules end to end.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;
std::string cli;
fs::path root;

void expect(bool ok, const std::string& label) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAILED", label.c_str());
    if (!ok) {
        ++failures;
    }
}

template <typename T>
void expect_eq(const T& actual, const T& wanted, const std::string& label) {
    std::ostringstream detail;
    detail << label;
    if (!(actual == wanted)) {
        detail << " (got " << actual << ", want " << wanted << ")";
    }
    expect(actual == wanted, detail.str());
}

void expect_near(double actual, double wanted, double tol,
                 const std::string& label) {
    std::ostringstream detail;
    detail << label << " (got " << actual << ", want " << wanted << " +- "
           << tol << ")";
    expect(std::abs(actual - wanted) <= tol, detail.str());
}

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Runs `prefix cli args`, capturing exit code, stdout, and stderr.
RunResult run(const std::string& args, const std::string& prefix = "") {
    static int counter = 0;
    const fs::path out_file = root / ("stdout." + std::to_string(counter));
    const fs::path err_file = root / ("stderr." + std::to_string(counter));
    ++counter;
    const std::string command = prefix + "\"" + cli + "\" " + args + " > \""
                                + out_file.string() + "\" 2> \""
                                + err_file.string() + "\"";
    const int status = std::system(command.c_str());
    RunResult result;
    if (status != -1 && WIFEXITED(status)) {
        result.code = WEXITSTATUS(status);
    }
    result.out = read_file(out_file);
    result.err = read_file(err_file);
    return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

json parse_json_file(const fs::path& path) {
    return json::parse(read_file(path));
}

void test_analytic_happy_path() {
    const fs::path dir = root / "analytic";
    const auto result = run("analytic --gamma 1.25 --rabi 3.5355339"
                            " --omega-grid 0.01:20:200log --out-dir "
                            + dir.string());
    expect_eq(result.code, 0, "analytic: exit 0");

    const json summary = parse_json_file(dir / "analytic_summary.json");
    expect_eq(summary.at("schema_version").get<int>(), 1,
              "analytic: schema_version 1");
    expect_near(summary.at("detected_level").get<double>(), 0.875, 1e-6,
                "analytic: detected level near 7/8");
    expect_near(summary.at("a").get<double>(), 0.25, 1e-7, "analytic: a = 1/4");
    expect_eq(summary.at("regime").get<std::string>(),
              std::string("underdamped"), "analytic: regime name");
    expect_near(summary.at("fano0").get<double>(), 0.52, 1e-6,
                "analytic: zero-frequency fano");

    const std::string csv = read_file(dir / "analytic_spectrum.csv");
    expect(contains(csv, "# schema_version=1"),
           "analytic: csv carries schema_version");
    expect(contains(csv, "omega,s_over_r\n"), "analytic: csv column header");
    expect(contains(csv, "\n0.01,"), "analytic: csv first grid point");
    expect(!contains(csv, "stderr"), "analytic: no stderr column");
    // 200 data rows plus the comment block and the column header.
    const auto rows = std::count(csv.begin(), csv.end(), '\n');
    expect_eq(static_cast<int>(rows)
                  - static_cast<int>(std::count(csv.begin(), csv.end(), '#'))
                  - 1,
              200, "analytic: one row per grid point");
}

void test_analytic_unit_a_example() {
    const fs::path dir = root / "analytic_unit";
    const auto result =
        run("analytic --gamma 1 --rabi 1.4142136 --out-dir " + dir.string());
    expect_eq(result.code, 0, "analytic a=1: exit 0");
    const json summary = parse_json_file(dir / "analytic_summary.json");
    expect_near(summary.at("fano0").get<double>(), 0.25, 1e-9,
                "analytic a=1: fano0 = 1/4");
}

void test_usage_errors() {
    expect_eq(run("analytic --gamma 1 --out-dir " + (root / "x").string()).code,
              2, "missing --rabi: exit 2");
    expect_eq(run("analytic --gamma -1 --rabi 2 --out-dir "
                  + (root / "x").string())
                  .code,
              2, "negative gamma: exit 2");
    expect_eq(run("analytic --gamma 1 --rabi 2 --omega-grid 5:1:10log"
                  " --out-dir "
                  + (root / "x").string())
                  .code,
              2, "reversed grid: exit 2");
    expect_eq(run("").code, 2, "missing subcommand: exit 2");
    expect_eq(run("frobnicate").code, 2, "unknown subcommand: exit 2");
    const auto help = run("--help");
    expect_eq(help.code, 0, "--help: exit 0");
    const auto validate_help = run("validate --help");
    expect(!contains(validate_help.out, "inject-fault"),
           "hidden flag stays out of help");
}

void test_simulate_determinism() {
    const std::string base = "simulate --gamma 1.25 --rabi 3.5355339059327378"
                             " --horizon 2000 --trajectories 40 --window 100"
                             " --omega-grid 0.05:10:20log --seed 42"
                             " --threads 1 --out-dir ";
    const fs::path dir_a = root / "sim_a";
    const fs::path dir_b = root / "sim_b";
    expect_eq(run(base + dir_a.string()).code, 0, "simulate run A: exit 0");
    expect_eq(run(base + dir_b.string()).code, 0, "simulate run B: exit 0");
    expect(read_file(dir_a / "simulate_spectrum.csv")
               == read_file(dir_b / "simulate_spectrum.csv"),
           "simulate: csv byte-identical across reruns");
    expect(read_file(dir_a / "simulate_fano.json")
               == read_file(dir_b / "simulate_fano.json"),
           "simulate: json byte-identical across reruns");

    const json fano = parse_json_file(dir_a / "simulate_fano.json");
    expect_eq(fano.at("seed").get<std::uint64_t>(), std::uint64_t{42},
              "simulate: seed echoed");
    expect_eq(fano.at("schema_version").get<int>(), 1,
              "simulate: schema_version 1");
    expect(fano.at("fano").at("n_windows").get<int>() >= 30,
           "simulate: enough windows");
    const std::string csv = read_file(dir_a / "simulate_spectrum.csv");
    expect(contains(csv, "omega,s_over_r,stderr\n"),
           "simulate: estimated csv has stderr column");
    expect(contains(csv, "# seed=42"), "simulate: csv header echoes seed");

    // The SEL_SEED environment variable is an equivalent seed source.
    const fs::path dir_env = root / "sim_env";
    const std::string no_seed =
        "simulate --gamma 1.25 --rabi 3.5355339059327378 --horizon 2000"
        " --trajectories 40 --window 100 --omega-grid 0.05:10:20log"
        " --threads 1 --out-dir ";
    expect_eq(run(no_seed + dir_env.string(), "SEL_SEED=42 ").code, 0,
              "simulate via SEL_SEED: exit 0");
    expect(read_file(dir_a / "simulate_fano.json")
               == read_file(dir_env / "simulate_fano.json"),
           "simulate: SEL_SEED equivalent to --seed");
}

void test_simulate_random_seed_is_recorded() {
    const fs::path dir = root / "sim_noseed";
    const auto result = run("simulate --gamma 1.25 --rabi 3.5355339059327378"
                            " --horizon 1000 --trajectories 10 --window 100"
                            " --omega-grid 0.1:5:10log --out-dir "
                            + dir.string());
    expect_eq(result.code, 0, "simulate without seed: exit 0");
    expect(contains(result.err, "no seed given"),
           "simulate without seed: notice on stderr");
    const json fano = parse_json_file(dir / "simulate_fano.json");
    expect(fano.contains("seed"), "simulate without seed: seed recorded");
}

void test_simulate_poisson_control() {
    const fs::path dir = root / "sim_poisson";
    const auto result = run("simulate --gamma 1.25 --rabi 3.5355339059327378"
                            " --horizon 2000 --trajectories 150 --window 20"
                            " --omega-grid 0.1:5:10log --seed 42 --threads 0"
                            " --poisson-control --out-dir "
                            + dir.string());
    expect_eq(result.code, 0, "poisson control: exit 0");
    const json fano = parse_json_file(dir / "simulate_fano.json");
    const double value = fano.at("fano").at("fano").get<double>();
    expect_near(value, 1.0, 0.05, "poisson control: fano within [0.95, 1.05]");
    expect_eq(fano.at("config").at("mode").get<std::string>(),
              std::string("poisson-control"), "poisson control: mode echoed");
}

void test_simulate_guards() {
    // Frequency below the 20 pi / horizon leakage guard.
    expect_eq(run("simulate --gamma 1.25 --rabi 3.5355339059327378"
                  " --horizon 2000 --trajectories 5 --window 100"
                  " --omega-grid 0.001:10:5log --seed 1 --out-dir "
                  + (root / "x").string())
                  .code,
              2, "guard frequency: exit 2");
    // Too few Fano windows.
    expect_eq(run("simulate --gamma 1.25 --rabi 3.5355339059327378"
                  " --horizon 300 --trajectories 2 --window 200"
                  " --omega-grid 0.5:10:5log --seed 1 --out-dir "
                  + (root / "x").string())
                  .code,
              2, "too few windows: exit 2");
}

void test_design_reference_point() {
    const fs::path dir = root / "design";
    const auto result =
        run("design --min-noise --tau-p 1e-6 --nu 1.42e9 --out-dir "
            + dir.string());
    expect_eq(result.code, 0, "design preset: exit 0");
    const json doc = parse_json_file(dir / "design.json");
    expect_eq(doc.at("schema_version").get<int>(), 1, "design: schema_version");
    expect_eq(doc.at("mode").get<std::string>(), std::string("min-noise"),
              "design: mode echoed");

    const auto& cavity = doc.at("cavity");
    expect_near(cavity.at("d").at("value").get<double>(), 4.38283356e-7,
                1e-13, "design: well width");
    expect_eq(cavity.at("d").at("unit").get<std::string>(), std::string("m"),
              "design: well width unit");
    const double volume = cavity.at("volume").at("value").get<double>();
    expect_near(volume / 1e-12, 244.596086841658, 1e-9,
                "design: volume / tau_p^2");
    expect_near(cavity.at("plate_side").at("value").get<double>(),
                0.0236236643327769, 1e-12, "design: plate side");
    expect_near(cavity.at("a").get<double>(), 0.25, 1e-12, "design: a = 1/4");

    const auto& roots = doc.at("steady_state").at("roots");
    expect_eq(static_cast<int>(roots.size()), 2, "design: two roots");
    expect_near(roots[0].at("gamma").at("value").get<double>(), 1.25e6,
                1e-3, "design: small root gamma tau_p = 1.25");
    expect_near(roots[1].at("gamma").at("value").get<double>(), 5.0e6, 1e-3,
                "design: large root gamma tau_p = 5");
    expect_near(roots[0].at("detected_level").get<double>(), 0.875, 1e-9,
                "design: small root at 7/8");
    expect_near(roots[0].at("fano0").get<double>(), 0.52, 1e-9,
                "design: small root fano0");
}

void test_design_no_steady_state() {
    expect_eq(run("design --pump-rate 1 --tau-p 1 --volume 1000 --out-dir "
                  + (root / "x").string())
                  .code,
              3, "starved drive: exit 3");
    expect_eq(run("design --tau-p 1 --out-dir " + (root / "x").string()).code,
              2, "incomplete design inputs: exit 2");
    expect_eq(run("design --min-noise --tau-p 1e-6 --out-dir "
                  + (root / "x").string())
                  .code,
              2, "preset without nu: exit 2");
}

void test_validate_quick_and_fault() {
    const auto start = std::chrono::steady_clock::now();
    const auto quick = run("validate --quick");
    const auto elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
    expect_eq(quick.code, 0, "validate --quick: exit 0");
    expect(contains(quick.out, "RESULT: PASS"), "validate --quick: PASS line");
    expect(elapsed < 5.0, "validate --quick: under 5 seconds");

    const auto fault = run("validate --quick --inject-fault");
    expect_eq(fault.code, 1, "validate fault injection: exit 1");
    expect(contains(fault.out, "injected-fault"),
           "validate fault injection: check named");
    expect(contains(fault.out, "RESULT: FAIL"),
           "validate fault injection: FAIL line");
}

void test_config_file() {
    const fs::path cfg = root / "run.cfg";
    {
        std::ofstream out(cfg);
        out << "# defaults for the reference point\n"
            << "gamma = 9.9\n"
            << "rabi = 2\n";
    }
    const fs::path dir = root / "cfg_flags_win";
    const auto flagged = run("analytic --config " + cfg.string()
                             + " --gamma 1 --omega-grid 1:2:3lin --out-dir "
                             + dir.string());
    expect_eq(flagged.code, 0, "config file: exit 0");
    const json summary = parse_json_file(dir / "analytic_summary.json");
    expect_near(summary.at("config").at("gamma").get<double>(), 1.0, 0.0,
                "config file: flag overrides file");
    expect_near(summary.at("config").at("rabi").get<double>(), 2.0, 0.0,
                "config file: file fills missing flag");

    const fs::path dir_only = root / "cfg_only";
    expect_eq(run("analytic --config " + cfg.string()
                  + " --omega-grid 1:2:3lin --out-dir " + dir_only.string())
                  .code,
              0, "config file alone satisfies required options");

    const fs::path bad = root / "bad.cfg";
    {
        std::ofstream out(bad);
        out << "gamma = 1\nbogus = 2\n";
    }
    expect_eq(run("analytic --config " + bad.string() + " --rabi 2 --out-dir "
                  + (root / "x").string())
                  .code,
              2, "unknown config key: exit 2");
    expect_eq(run("analytic --config " + (root / "missing.cfg").string()
                  + " --gamma 1 --rabi 2 --out-dir " + (root / "x").string())
                  .code,
              2, "missing config file: exit 2");
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-sel-binary>\n");
        return 64;
    }
    cli = argv[1];
    root = fs::temp_directory_path()
           / ("sel_cli_tests_" + std::to_string(::getpid()));
    fs::remove_all(root);
    fs::create_directories(root);

    try {
        test_analytic_happy_path();
        test_analytic_unit_a_example();
        test_usage_errors();
        test_simulate_determinism();
        test_simulate_random_seed_is_recorded();
        test_simulate_poisson_control();
        test_simulate_guards();
        test_design_reference_point();
        test_design_no_steady_state();
        test_validate_quick_and_fault();
        test_config_file();
    } catch (const std::exception& e) {
        std::printf("[FAILED] unexpected exception: %s\n", e.what());
        ++failures;
    }

    if (failures == 0) {
        std::printf("cli_tests: all passed\n");
        fs::remove_all(root);
        return 0;
    }
    std::printf("cli_tests: %d failure(s); outputs kept in %s\n", failures,
                root.string().c_str());
    return 1;
}
