#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

#include "ibcrb/csv.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const fs::path dir = fs::temp_directory_path() / "ibcrb_cli_test";
    fs::create_directories(dir);
    const fs::path out = dir / "stdout.txt";
    const std::string cmd = std::string(IBCRB_CLI_PATH) + " " + args + " > " +
                            out.string() + " 2> " + (dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream is(out);
    std::stringstream ss;
    ss << is.rdbuf();
    r.stdout_text = ss.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// value of the first data row's "value" column
double first_value(const std::string& csv) {
    const auto line_start = csv.find('\n') + 1;
    const auto line_end = csv.find('\n', line_start);
    std::string line = csv.substr(line_start, line_end - line_start);
    std::stringstream ss(line);
    std::string field;
    for (int k = 0; k < 7; ++k) {
        std::getline(ss, field, ',');
    }
    return std::stod(field);
}

} // namespace

TEST_CASE("bound command evaluates pinned values") {
    const RunResult ai = run_cli("bound --metric ai --nu 40 --p 5 --n 10");
    CHECK(ai.exit_code == 0);
    CHECK(first_value(ai.stdout_text) == doctest::Approx(0.504966154875219).epsilon(1e-12));

    const RunResult euclid =
        run_cli("bound --metric euclidean --kind deterministic --rho 0.5 --p 5 --n 10");
    CHECK(euclid.exit_code == 0);
    CHECK(first_value(euclid.stdout_text) == doctest::Approx(2.5).epsilon(1e-12));

    // p defaults to the benchmark dimension
    const RunResult defaulted =
        run_cli("bound --metric euclidean --kind deterministic --rho 0.5 --n 10");
    CHECK(defaulted.exit_code == 0);
    CHECK(first_value(defaulted.stdout_text) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("bound command rejects invalid configs with exit code 2") {
    CHECK(run_cli("bound --metric ai --nu 40 --p 5 --n 0").exit_code == 2);
    CHECK(run_cli("bound --metric ai --nu 4 --p 5 --n 10").exit_code == 2);
    CHECK(run_cli("bound --metric nope --nu 40 --p 5 --n 10").exit_code == 2);
    CHECK(run_cli("bound").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
}

TEST_CASE("simulate writes byte-identical files for a fixed seed") {
    const fs::path dir = fs::temp_directory_path() / "ibcrb_cli_test";
    fs::create_directories(dir);
    const fs::path out1 = dir / "sim1.csv";
    const fs::path out2 = dir / "sim2.csv";

    const std::string base =
        "simulate --p 3 --nu 12 --n-grid 5,9 --trials 30 --seed 7 --out ";
    CHECK(run_cli(base + out1.string() + " --workers 1").exit_code == 0);
    CHECK(run_cli(base + out2.string() + " --workers 3").exit_code == 0);
    const std::string text1 = slurp(out1);
    CHECK(!text1.empty());
    CHECK(text1 == slurp(out2));
    CHECK(text1.rfind(ibcrb::k_summary_csv_header, 0) == 0);
    CHECK(text1.find("xoshiro256++") != std::string::npos);

    // the resolved config is echoed alongside the output
    CHECK(fs::exists(out1.string() + ".config.json"));

    // a different seed changes the bytes
    const fs::path out3 = dir / "sim3.csv";
    CHECK(run_cli("simulate --p 3 --nu 12 --n-grid 5,9 --trials 30 --seed 8 --out " +
                  out3.string())
              .exit_code == 0);
    CHECK(slurp(out3) != text1);
}

TEST_CASE("simulate accepts a JSON config with overrides and rejects unknown keys") {
    const fs::path dir = fs::temp_directory_path() / "ibcrb_cli_test";
    fs::create_directories(dir);
    const fs::path cfg = dir / "cfg.json";
    {
        std::ofstream os(cfg);
        os << R"({"p": 2, "nu": 9.0, "n_grid": [4], "n_trials": 10, "mode": "bayesian",)"
           << R"( "metrics": ["euclidean"], "estimators": ["mmse"]})";
    }
    const fs::path out = dir / "from_cfg.csv";
    CHECK(run_cli("simulate --config " + cfg.string() + " --trials 5 --out " + out.string())
              .exit_code == 0);
    const std::string text = slurp(out);
    CHECK(text.find(",5,") != std::string::npos); // n_trials=5 via override

    const fs::path bad = dir / "bad.json";
    {
        std::ofstream os(bad);
        os << R"({"p": 2, "unknown_field": 1})";
    }
    CHECK(run_cli("simulate --config " + bad.string()).exit_code == 2);
}

TEST_CASE("reproduce emits the six figure datasets") {
    const fs::path dir = fs::temp_directory_path() / "ibcrb_cli_test" / "repro";
    fs::remove_all(dir);
    CHECK(run_cli("reproduce --trials 2 --out-dir " + dir.string()).exit_code == 0);
    for (const char* stem : {"fig_det", "fig_bayes_nu40", "fig_bayes_nu100"}) {
        CHECK(fs::exists(dir / (std::string(stem) + "_euclid.csv")));
        CHECK(fs::exists(dir / (std::string(stem) + "_ai.csv")));
        CHECK(fs::exists(dir / (std::string(stem) + ".config.json")));
    }
    const std::string ai = slurp(dir / "fig_bayes_nu40_ai.csv");
    CHECK(ai.find("bicrb") != std::string::npos);
    CHECK(ai.find("euclidean") == std::string::npos);
}

TEST_CASE("validate-moments passes at its defaults and fails the negative control") {
    CHECK(run_cli("validate-moments --samples 2000").exit_code == 0);
    CHECK(run_cli("validate-moments --samples 2000 --negative-control").exit_code == 1);
}
