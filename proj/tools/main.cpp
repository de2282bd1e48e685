// Command-line front end: evaluate covariance estimation bounds, run Monte
// Carlo sweeps of the SCM/MAP/MMSE estimators against them, and validate the
// closed-form moment identities the bounds are built on.
//
// Exit codes: 0 ok, 1 statistical check failure, 2 usage/config error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ibcrb/csv.hpp"
#include "ibcrb/moments.hpp"

namespace {

using json = nlohmann::json;
using namespace ibcrb;

Metric parse_metric(const std::string& name) {
    if (name == "euclidean") return Metric::Euclidean;
    if (name == "ai") return Metric::AffineInvariant;
    throw ConfigError("metric must be 'euclidean' or 'ai', got '" + name + "'");
}

Mode parse_mode(const std::string& name) {
    if (name == "deterministic") return Mode::Deterministic;
    if (name == "bayesian") return Mode::Bayesian;
    throw ConfigError("mode must be 'deterministic' or 'bayesian', got '" + name + "'");
}

EstimatorKind parse_estimator(const std::string& name) {
    if (name == "scm") return EstimatorKind::Scm;
    if (name == "map") return EstimatorKind::Map;
    if (name == "mmse") return EstimatorKind::Mmse;
    throw ConfigError("estimator must be scm, map or mmse, got '" + name + "'");
}

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["p"] = cfg.p;
    j["rho"] = cfg.rho;
    j["nu"] = cfg.nu;
    j["n_grid"] = cfg.n_grid;
    j["n_trials"] = cfg.n_trials;
    j["seed"] = cfg.seed;
    j["mode"] = mode_name(cfg.mode);
    json metrics = json::array();
    for (Metric m : cfg.metrics) metrics.push_back(metric_name(m));
    j["metrics"] = metrics;
    json est = json::array();
    for (EstimatorKind e : cfg.estimators) est.push_back(estimator_name(e));
    j["estimators"] = est;
    return j;
}

void apply_config_json(const json& j, ExperimentConfig& cfg) {
    static const std::vector<std::string> known = {
        "p", "rho", "nu", "n_grid", "n_trials", "seed", "mode", "metrics", "estimators"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            throw ConfigError("unknown config key '" + it.key() + "'");
        }
    }
    if (j.contains("p")) cfg.p = j.at("p").get<int>();
    if (j.contains("rho")) cfg.rho = j.at("rho").get<double>();
    if (j.contains("nu")) cfg.nu = j.at("nu").get<double>();
    if (j.contains("n_grid")) cfg.n_grid = j.at("n_grid").get<std::vector<int>>();
    if (j.contains("n_trials")) cfg.n_trials = j.at("n_trials").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("mode")) cfg.mode = parse_mode(j.at("mode").get<std::string>());
    if (j.contains("metrics")) {
        cfg.metrics.clear();
        for (const auto& m : j.at("metrics")) cfg.metrics.push_back(parse_metric(m.get<std::string>()));
    }
    if (j.contains("estimators")) {
        cfg.estimators.clear();
        for (const auto& e : j.at("estimators")) cfg.estimators.push_back(parse_estimator(e.get<std::string>()));
    }
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
    } else {
        write_file(out_path, content);
    }
}

void write_sidecar(const std::string& out_path, const ExperimentConfig& cfg, int workers) {
    if (out_path.empty() || out_path == "-") {
        return;
    }
    json j = config_to_json(cfg);
    j["rng_algo"] = RngStream::algorithm();
    j["workers"] = workers;
    write_file(out_path + ".config.json", j.dump(2) + "\n");
}

// ---- bound ----------------------------------------------------------------

struct BoundArgs {
    std::string metric = "euclidean";
    std::string kind = "bayes";
    double nu = 0.0;
    int p = 5;
    double rho = 0.5;
    std::vector<int> ns;
    std::string out;
};

int cmd_bound(const BoundArgs& args) {
    const Metric metric = parse_metric(args.metric);
    if (args.p < 1) {
        throw ConfigError("p must be >= 1");
    }
    for (int n : args.ns) {
        if (n < 1) {
            throw ConfigError("n must be >= 1, got " + std::to_string(n));
        }
    }
    std::vector<SummaryRow> rows;
    for (int n : args.ns) {
        BoundReport report{};
        std::string series;
        if (metric == Metric::Euclidean) {
            const HpdMatrix sigma0 = toeplitz_center(args.p, args.rho);
            if (args.kind == "deterministic") {
                report = crb_euclidean_deterministic(sigma0, n);
                series = "crb";
            } else if (args.kind == "bayes") {
                report = bcrb_euclidean(sigma0, args.nu, n);
                series = "bcrb";
            } else if (args.kind == "bayes-asymptotic") {
                report = bcrb_euclidean_asymptotic(sigma0, args.nu, n);
                series = "bcrb_asymptotic";
            } else {
                throw ConfigError("kind must be deterministic, bayes or bayes-asymptotic");
            }
        } else {
            if (args.kind == "deterministic") {
                report = icrb_ai_asymptotic(args.p, n);
                series = "icrb";
            } else if (args.kind == "bayes") {
                report = bicrb_affine_invariant(args.nu, args.p, n);
                series = "bicrb";
            } else if (args.kind == "bayes-asymptotic") {
                if (!(args.nu > args.p)) {
                    throw ConfigError("nu must exceed p");
                }
                report = icrb_ai_asymptotic(args.p, n);
                series = "bicrb_asymptotic";
            } else {
                throw ConfigError("kind must be deterministic, bayes or bayes-asymptotic");
            }
        }
        SummaryRow row;
        row.mode = args.kind == "deterministic" ? Mode::Deterministic : Mode::Bayesian;
        row.metric = metric;
        row.series = series;
        row.nu = args.kind == "deterministic" ? 0.0 : args.nu;
        row.p = args.p;
        row.n = n;
        row.value = report.value;
        row.std_err = 0.0;
        row.n_trials = 0;
        row.seed = 0;
        rows.push_back(std::move(row));
    }
    emit(args.out, summary_csv(std::move(rows), "none"));
    return 0;
}

// ---- simulate / reproduce ---------------------------------------------------

struct SimulateArgs {
    std::string config_path;
    std::optional<int> p;
    std::optional<double> rho;
    std::optional<double> nu;
    std::optional<std::string> n_grid;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<std::string> metrics;
    std::optional<std::string> estimators;
    int workers = 0;
    std::string out = "simulate.csv";
};

ExperimentConfig resolve_config(const SimulateArgs& args) {
    ExperimentConfig cfg;
    if (!args.config_path.empty()) {
        std::ifstream is(args.config_path);
        if (!is) {
            throw ConfigError("cannot read config file: " + args.config_path);
        }
        json j;
        try {
            is >> j;
        } catch (const json::exception& e) {
            throw ConfigError("invalid JSON in " + args.config_path + ": " + e.what());
        }
        apply_config_json(j, cfg);
    }
    // command-line overrides beat the file, which beats the defaults
    if (args.p) cfg.p = *args.p;
    if (args.rho) cfg.rho = *args.rho;
    if (args.nu) cfg.nu = *args.nu;
    if (args.n_grid) {
        cfg.n_grid.clear();
        for (const std::string& tok : split_csv_list(*args.n_grid)) {
            try {
                std::size_t used = 0;
                const int n = std::stoi(tok, &used);
                if (used != tok.size()) {
                    throw ConfigError("n_grid entry '" + tok + "' is not an integer");
                }
                cfg.n_grid.push_back(n);
            } catch (const std::logic_error&) {
                throw ConfigError("n_grid entry '" + tok + "' is not an integer");
            }
        }
    }
    if (args.trials) cfg.n_trials = *args.trials;
    if (args.seed) cfg.seed = *args.seed;
    if (args.mode) cfg.mode = parse_mode(*args.mode);
    if (args.metrics) {
        cfg.metrics.clear();
        for (const std::string& tok : split_csv_list(*args.metrics)) {
            cfg.metrics.push_back(parse_metric(tok));
        }
    }
    if (args.estimators) {
        cfg.estimators.clear();
        for (const std::string& tok : split_csv_list(*args.estimators)) {
            cfg.estimators.push_back(parse_estimator(tok));
        }
    }
    cfg.validate();
    return cfg;
}

int cmd_simulate(const SimulateArgs& args) {
    const ExperimentConfig cfg = resolve_config(args);
    const int workers = args.workers > 0 ? args.workers : default_workers();
    const std::vector<SummaryRow> rows = run_sweep(cfg, workers);
    emit(args.out, summary_csv(rows, RngStream::algorithm()));
    write_sidecar(args.out, cfg, workers);
    return 0;
}

const std::vector<int> k_benchmark_grid = {10,  15,  23,  34,   52,   79,   119, 179,
                                       270, 408, 614, 925, 1394, 2099, 3162};

struct ReproduceArgs {
    std::string out_dir = "reproduce_out";
    int trials = 1000;
    std::uint64_t seed = 0;
    int workers = 0;
};

int cmd_reproduce(const ReproduceArgs& args) {
    namespace fs = std::filesystem;
    fs::create_directories(args.out_dir);
    const int workers = args.workers > 0 ? args.workers : default_workers();

    struct Job {
        std::string stem;
        ExperimentConfig cfg;
    };
    std::vector<Job> jobs;

    ExperimentConfig det;
    det.mode = Mode::Deterministic;
    det.estimators = {EstimatorKind::Scm};
    det.n_grid = k_benchmark_grid;
    det.n_trials = args.trials;
    det.seed = args.seed;
    jobs.push_back({"fig_det", det});

    for (double nu : {40.0, 100.0}) {
        ExperimentConfig bayes;
        bayes.mode = Mode::Bayesian;
        bayes.nu = nu;
        bayes.estimators = {EstimatorKind::Map, EstimatorKind::Mmse};
        bayes.n_grid = k_benchmark_grid;
        bayes.n_trials = args.trials;
        bayes.seed = args.seed;
        jobs.push_back({"fig_bayes_nu" + std::to_string(static_cast<int>(nu)), bayes});
    }

    for (const Job& job : jobs) {
        const std::vector<SummaryRow> rows = run_sweep(job.cfg, workers);
        for (Metric metric : {Metric::Euclidean, Metric::AffineInvariant}) {
            std::vector<SummaryRow> part;
            for (const SummaryRow& r : rows) {
                if (r.metric == metric) {
                    part.push_back(r);
                }
            }
            const std::string suffix = metric == Metric::Euclidean ? "_euclid" : "_ai";
            const fs::path path = fs::path(args.out_dir) / (job.stem + suffix + ".csv");
            write_file(path.string(), summary_csv(std::move(part), RngStream::algorithm()));
        }
        json j = config_to_json(job.cfg);
        j["rng_algo"] = RngStream::algorithm();
        j["workers"] = workers;
        const fs::path cfg_path = fs::path(args.out_dir) / (job.stem + ".config.json");
        write_file(cfg_path.string(), j.dump(2) + "\n");
        std::cerr << "wrote " << job.stem << "_{euclid,ai}.csv\n";
    }
    return 0;
}

// ---- validate-moments -------------------------------------------------------

struct ValidateArgs {
    std::int64_t samples = 10000;
    std::uint64_t seed = 0;
    bool negative_control = false; // test hook: bias the closed forms, expect failure
};

struct CheckReporter {
    int failures = 0;

    void check(const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << " (" << detail << ")\n";
        if (!ok) {
            ++failures;
        }
    }
};

HermitianMatrix random_hermitian(int p, RngStream& rng) {
    CMatrix m(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            m(i, j) = rng.complex_normal();
        }
    }
    return HermitianMatrix(CMatrix(m + m.adjoint()));
}

HpdMatrix random_hpd(int p, RngStream& rng) {
    CMatrix m(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            m(i, j) = rng.complex_normal();
        }
    }
    return HpdMatrix(CMatrix(m * m.adjoint() + static_cast<double>(p) * CMatrix::Identity(p, p)));
}

int cmd_validate_moments(const ValidateArgs& args) {
    if (args.samples < 100) {
        throw ConfigError("samples must be >= 100");
    }
    CheckReporter report;
    const double bias = args.negative_control ? 1.1 : 1.0;
    std::uint64_t stream = 0;

    // Wishart trace moment identities against Monte Carlo, 3 standard errors.
    for (int p : {1, 2, 3}) {
        for (int dof : {10, 50}) {
            RngStream rng(args.seed, stream++);
            const HermitianMatrix a = random_hermitian(p, rng);
            const HermitianMatrix b = random_hermitian(p, rng);
            const HermitianMatrix c = random_hermitian(p, rng);
            const HermitianMatrix d = random_hermitian(p, rng);
            const HpdMatrix sigma = random_hpd(p, rng);

            const MomentEstimate first =
                lemma_trace_moment_mc(a, b, c, sigma, dof, args.samples, rng);
            const double first_rhs = bias * lemma_trace_moment_rhs(a, b, c, sigma, dof);
            report.check(
                "trace moment E[tr(ASBS)tr(CS)] p=" + std::to_string(p) +
                    " K=" + std::to_string(dof),
                std::abs(first.mean - first_rhs) <= 3.0 * first.std_error,
                "mc " + format_double(first.mean) + " vs " + format_double(first_rhs) +
                    " se " + format_double(first.std_error));

            const MomentEstimate second =
                lemma_trace_moment_second_mc(a, b, c, d, sigma, dof, args.samples, rng);
            const double second_rhs =
                bias * lemma_trace_moment_second_rhs(a, b, c, d, sigma, dof);
            report.check(
                "trace moment E[tr(ASBS)tr(CSDS)] p=" + std::to_string(p) +
                    " K=" + std::to_string(dof),
                std::abs(second.mean - second_rhs) <= 3.0 * second.std_error,
                "mc " + format_double(second.mean) + " vs " + format_double(second_rhs) +
                    " se " + format_double(second.std_error));
        }
    }

    // Closed-form prior information terms against their score-product
    // integrands: 5% relative per entry, with a 4-sigma floor for entries
    // whose Monte Carlo noise exceeds the band (including exact zeros).
    {
        const int p = 3;
        const double nu = 10.0;
        const HpdMatrix sigma0 = toeplitz_center(p, 0.5);
        RngStream rng(args.seed, stream++);
        const MatrixEstimate mc = mc_fprior_euclidean(sigma0, nu, args.samples, rng);
        const RMatrix cf = bias * fprior_euclidean_iw(sigma0, nu).mat();
        int bad = 0;
        double worst = 0.0;
        for (int i = 0; i < cf.rows(); ++i) {
            for (int j = 0; j < cf.cols(); ++j) {
                const double dev = std::abs(mc.mean(i, j) - cf(i, j));
                const double allowed =
                    std::max(0.05 * std::abs(cf(i, j)), 4.0 * mc.std_error(i, j));
                if (dev > allowed) {
                    ++bad;
                }
                if (std::abs(cf(i, j)) > 1e-9) {
                    worst = std::max(worst, dev / std::abs(cf(i, j)));
                }
            }
        }
        report.check("prior information term, Euclidean metric (p=3, nu=10)", bad == 0,
                     "entries out of band: " + std::to_string(bad) +
                         ", worst rel dev " + format_double(worst));
    }
    {
        const int p = 3;
        const double nu = 10.0;
        RngStream rng(args.seed, stream++);
        const MatrixEstimate mc = mc_fprior_affine_invariant(nu, p, args.samples, rng);
        const RMatrix cf = bias * ai_prior_fisher_from_moments(nu, p).mat();
        int bad = 0;
        double worst = 0.0;
        for (int i = 0; i < cf.rows(); ++i) {
            for (int j = 0; j < cf.cols(); ++j) {
                const double dev = std::abs(mc.mean(i, j) - cf(i, j));
                const double allowed =
                    std::max(0.05 * std::abs(cf(i, j)), 4.0 * mc.std_error(i, j));
                if (dev > allowed) {
                    ++bad;
                }
                if (std::abs(cf(i, j)) > 1e-9) {
                    worst = std::max(worst, dev / std::abs(cf(i, j)));
                }
            }
        }
        report.check("prior information term, affine-invariant metric (p=3, nu=10)",
                     bad == 0,
                     "entries out of band: " + std::to_string(bad) +
                         ", worst rel dev " + format_double(worst));

        // The bound builder intentionally keeps the benchmark's smaller
        // diagonal variances; surface its gap to the sampled integrand.
        const RMatrix table = fprior_affine_invariant(nu, p).mat();
        double gap = 0.0;
        for (int i = 0; i < p; ++i) {
            gap = std::max(gap, std::abs(mc.mean(i, i) - table(i, i)) /
                                    std::abs(table(i, i)));
        }
        std::cout << "[info] bound-builder diagonal vs sampled integrand: max rel gap "
                  << format_double(gap) << " (expected ~(p-i)/entry)\n";
    }

    // Bartlett factor moments behind the affine-invariant prior term.
    {
        const int p = 5;
        const double nu = 40.0;
        RngStream rng(args.seed, stream++);
        const BasisIndex i1 = BasisIndex::from_flat(p, 1);
        const BasisIndex i_pair = BasisIndex::from_flat(p, p + 1); // pair (1,2)
        const MomentEstimate f1 = ai_prior_f_mc(nu, p, i1, args.samples, rng);
        const double f1_cf = bias * ai_prior_f(nu, p, i1);
        report.check("Bartlett moment f_1 (nu=40, p=5)",
                     std::abs(f1.mean - f1_cf) <= 3.0 * f1.std_error,
                     "mc " + format_double(f1.mean) + " vs " + format_double(f1_cf));
        const MomentEstimate fbar11 = ai_prior_fbar_mc(nu, p, i1, i1, args.samples, rng);
        const double fbar11_cf = bias * ai_prior_fbar(nu, p, i1, i1);
        report.check("Bartlett moment Fbar_11 (nu=40, p=5)",
                     std::abs(fbar11.mean - fbar11_cf) <= 3.0 * fbar11.std_error,
                     "mc " + format_double(fbar11.mean) + " vs " + format_double(fbar11_cf));
        const MomentEstimate fbar_pair =
            ai_prior_fbar_mc(nu, p, i_pair, i_pair, args.samples, rng);
        const double fbar_pair_cf = bias * ai_prior_fbar(nu, p, i_pair, i_pair);
        report.check("Bartlett moment Fbar pair(1,2) (nu=40, p=5)",
                     std::abs(fbar_pair.mean - fbar_pair_cf) <= 3.0 * fbar_pair.std_error,
                     "mc " + format_double(fbar_pair.mean) + " vs " +
                         format_double(fbar_pair_cf));
    }

    // Inverse-Wishart trace expectations, closed form vs Monte Carlo.
    {
        const int p = 2;
        const double nu = 8.0;
        const HpdMatrix sigma0 = toeplitz_center(p, 0.5);
        const InverseWishartPrior prior(sigma0, nu);
        const BasisIndex i1 = BasisIndex::from_flat(p, 1);
        const BasisIndex i2 = BasisIndex::from_flat(p, 2);
        for (TraceTerm term : {TraceTerm::T1, TraceTerm::T2, TraceTerm::T3, TraceTerm::T4}) {
            RngStream rng(args.seed, stream++);
            const MomentEstimate mc = t_term_mc(prior, i1, i2, term, args.samples, rng);
            const double cf = bias * t_term_closed_form(sigma0, nu, i1, i2, term);
            const int label = term == TraceTerm::T1   ? 1
                              : term == TraceTerm::T2 ? 2
                              : term == TraceTerm::T3 ? 3
                                                      : 4;
            report.check("inverse-Wishart trace expectation T" + std::to_string(label) +
                             " (p=2, nu=8)",
                         std::abs(mc.mean - cf) <= 3.0 * mc.std_error,
                         "mc " + format_double(mc.mean) + " vs " + format_double(cf) +
                             " se " + format_double(mc.std_error));
        }
    }

    std::cout << (report.failures == 0 ? "all checks passed\n"
                                       : std::to_string(report.failures) + " checks failed\n");
    return report.failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian covariance bounds and estimator benchmarks"};
    app.require_subcommand(1);

    BoundArgs bound_args;
    CLI::App* bound = app.add_subcommand("bound", "evaluate bound values, no RNG");
    bound->add_option("--metric", bound_args.metric, "euclidean or ai")->required();
    bound->add_option("--kind", bound_args.kind, "deterministic, bayes or bayes-asymptotic");
    bound->add_option("--nu", bound_args.nu, "prior degrees of freedom");
    bound->add_option("--p", bound_args.p, "data dimension (default 5)");
    bound->add_option("--rho", bound_args.rho, "Toeplitz center parameter");
    bound->add_option("--n", bound_args.ns, "sample counts (repeatable)")->required();
    bound->add_option("--out", bound_args.out, "output CSV path ('-' for stdout)");

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo estimator sweep");
    simulate->add_option("--config", sim_args.config_path, "JSON config file");
    simulate->add_option("--p", sim_args.p, "data dimension");
    simulate->add_option("--rho", sim_args.rho, "Toeplitz center parameter");
    simulate->add_option("--nu", sim_args.nu, "prior degrees of freedom");
    simulate->add_option("--n-grid", sim_args.n_grid, "comma-separated sample counts");
    simulate->add_option("--trials", sim_args.trials, "Monte Carlo trials per point");
    simulate->add_option("--seed", sim_args.seed, "base RNG seed (default 0)");
    simulate->add_option("--mode", sim_args.mode, "deterministic or bayesian");
    simulate->add_option("--metrics", sim_args.metrics, "comma-separated metric list");
    simulate->add_option("--estimators", sim_args.estimators, "comma-separated estimator list");
    simulate->add_option("--workers", sim_args.workers, "worker cap (does not affect results)");
    simulate->add_option("--out", sim_args.out, "output CSV path");

    ReproduceArgs rep_args;
    CLI::App* reproduce = app.add_subcommand("reproduce", "emit the six figure datasets");
    reproduce->add_option("--out-dir", rep_args.out_dir, "output directory");
    reproduce->add_option("--trials", rep_args.trials, "Monte Carlo trials per point");
    reproduce->add_option("--seed", rep_args.seed, "base RNG seed (default 0)");
    reproduce->add_option("--workers", rep_args.workers, "worker cap (does not affect results)");

    ValidateArgs val_args;
    CLI::App* validate = app.add_subcommand("validate-moments", "run the moment identity checks");
    validate->add_option("--samples", val_args.samples, "Monte Carlo samples per check");
    validate->add_option("--seed", val_args.seed, "base RNG seed (default 0)");
    validate->add_flag("--negative-control", val_args.negative_control,
                       "bias the closed forms; the run must then fail (test hook)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bound->parsed()) return cmd_bound(bound_args);
        if (simulate->parsed()) return cmd_simulate(sim_args);
        if (reproduce->parsed()) return cmd_reproduce(rep_args);
        if (validate->parsed()) return cmd_validate_moments(val_args);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidDegreesOfFreedom& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
