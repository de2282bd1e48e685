#include "ibcrb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ibcrb {

const char* mode_name(Mode m) {
    return m == Mode::Deterministic ? "deterministic" : "bayesian";
}

const char* estimator_name(EstimatorKind e) {
    switch (e) {
        case EstimatorKind::Scm: return "scm";
        case EstimatorKind::Map: return "map";
        case EstimatorKind::Mmse: return "mmse";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (p < 1) {
        throw ConfigError("p must be >= 1");
    }
    if (!(rho > -1.0 && rho < 1.0)) {
        throw ConfigError("rho must lie in (-1, 1)");
    }
    if (!(nu > p)) {
        throw ConfigError("nu must exceed p");
    }
    if (n_grid.empty()) {
        throw ConfigError("n_grid must not be empty");
    }
    for (std::size_t k = 0; k < n_grid.size(); ++k) {
        if (n_grid[k] < 1) {
            throw ConfigError("n_grid entries must be >= 1");
        }
        if (k > 0 && n_grid[k] <= n_grid[k - 1]) {
            throw ConfigError("n_grid must be strictly increasing");
        }
    }
    if (n_trials < 1) {
        throw ConfigError("n_trials must be >= 1");
    }
    if (metrics.empty()) {
        throw ConfigError("metrics must not be empty");
    }
    if (estimators.empty()) {
        throw ConfigError("estimators must not be empty");
    }
}

HpdMatrix toeplitz_center(int p, double rho) {
    if (p < 1) {
        throw ConfigError("p must be >= 1");
    }
    if (!(rho > -1.0 && rho < 1.0)) {
        throw ConfigError("rho must lie in (-1, 1)");
    }
    CMatrix m(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            m(i, j) = std::pow(rho, std::abs(i - j));
        }
    }
    return HpdMatrix(std::move(m));
}

namespace {

constexpr double k_nan = std::numeric_limits<double>::quiet_NaN();

bool wants(const ExperimentConfig& cfg, EstimatorKind e) {
    return std::find(cfg.estimators.begin(), cfg.estimators.end(), e) !=
           cfg.estimators.end();
}

bool wants(const ExperimentConfig& cfg, Metric m) {
    return std::find(cfg.metrics.begin(), cfg.metrics.end(), m) != cfg.metrics.end();
}

void record_distances(const ExperimentConfig& cfg, const HpdMatrix& sigma,
                      const HpdMatrix& estimate, EstimatorKind kind,
                      TrialResult& out) {
    const auto e = static_cast<std::size_t>(kind);
    if (wants(cfg, Metric::Euclidean)) {
        const double d = dist_euclidean(sigma, estimate);
        out.d2[e][0] = d * d;
    }
    if (wants(cfg, Metric::AffineInvariant)) {
        const double d = dist_affine_invariant(sigma, estimate);
        out.d2[e][1] = d * d;
    }
}

} // namespace

TrialResult run_trial(const ExperimentConfig& config, int n, std::uint64_t trial_index) {
    TrialResult out;
    for (auto& row : out.d2) {
        row.fill(k_nan);
    }
    RngStream rng(config.seed, trial_index);
    const HpdMatrix sigma0 = toeplitz_center(config.p, config.rho);
    const InverseWishartPrior prior(sigma0, config.nu);
    const HpdMatrix sigma = config.mode == Mode::Bayesian
                                ? sample_inverse_wishart(prior, rng)
                                : sigma0;
    const std::vector<CVector> samples =
        sample_complex_gaussian(GaussianModel{sigma}, n, rng);

    if (wants(config, EstimatorKind::Scm)) {
        record_distances(config, sigma, HpdMatrix(scm(samples)), EstimatorKind::Scm, out);
    }
    if (wants(config, EstimatorKind::Map)) {
        record_distances(config, sigma, map_iw(prior, samples), EstimatorKind::Map, out);
    }
    if (wants(config, EstimatorKind::Mmse)) {
        record_distances(config, sigma, mmse_iw(prior, samples), EstimatorKind::Mmse, out);
    }
    return out;
}

namespace {

// Fixed-order mean and standard error over the trial slots; summation order
// never depends on the scheduling of the trials.
void append_estimator_rows(const ExperimentConfig& cfg, int n,
                           const std::vector<TrialResult>& slots,
                           std::vector<SummaryRow>& rows) {
    for (const EstimatorKind est : cfg.estimators) {
        for (const Metric metric : cfg.metrics) {
            const auto e = static_cast<std::size_t>(est);
            const auto m = static_cast<std::size_t>(metric == Metric::Euclidean ? 0 : 1);
            double sum = 0.0;
            for (const TrialResult& r : slots) {
                sum += r.d2[e][m];
            }
            const double mean = sum / static_cast<double>(slots.size());
            double sq = 0.0;
            for (const TrialResult& r : slots) {
                const double d = r.d2[e][m] - mean;
                sq += d * d;
            }
            double se = 0.0;
            if (slots.size() > 1) {
                se = std::sqrt(sq / static_cast<double>(slots.size() - 1) /
                               static_cast<double>(slots.size()));
            }
            SummaryRow row;
            row.mode = cfg.mode;
            row.metric = metric;
            row.series = estimator_name(est);
            row.nu = cfg.nu;
            row.p = cfg.p;
            row.n = n;
            row.value = mean;
            row.std_err = se;
            row.n_trials = static_cast<std::int64_t>(slots.size());
            row.seed = cfg.seed;
            rows.push_back(std::move(row));
        }
    }
}

void append_bound_rows(const ExperimentConfig& cfg, int n,
                       std::vector<SummaryRow>& rows) {
    const HpdMatrix sigma0 = toeplitz_center(cfg.p, cfg.rho);
    auto push = [&](const char* series, const BoundReport& report) {
        SummaryRow row;
        row.mode = cfg.mode;
        row.metric = report.metric;
        row.series = series;
        row.nu = cfg.nu;
        row.p = cfg.p;
        row.n = n;
        row.value = report.value;
        row.std_err = 0.0;
        row.n_trials = 0;
        row.seed = cfg.seed;
        rows.push_back(std::move(row));
    };
    if (cfg.mode == Mode::Deterministic) {
        if (wants(cfg, Metric::Euclidean)) {
            push("crb", crb_euclidean_deterministic(sigma0, n));
        }
        if (wants(cfg, Metric::AffineInvariant)) {
            push("icrb", icrb_ai_asymptotic(cfg.p, n));
        }
    } else {
        if (wants(cfg, Metric::Euclidean)) {
            push("bcrb", bcrb_euclidean(sigma0, cfg.nu, n));
            push("bcrb_asymptotic", bcrb_euclidean_asymptotic(sigma0, cfg.nu, n));
        }
        if (wants(cfg, Metric::AffineInvariant)) {
            push("bicrb", bicrb_affine_invariant(cfg.nu, cfg.p, n));
            push("bicrb_asymptotic", icrb_ai_asymptotic(cfg.p, n));
        }
    }
}

} // namespace

int default_workers() {
    if (const char* env = std::getenv("IBCRB_WORKERS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) {
            return parsed;
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::vector<SummaryRow> run_sweep(const ExperimentConfig& config, int workers) {
    config.validate();
    if (workers <= 0) {
        workers = default_workers();
    }
    std::vector<SummaryRow> rows;
    for (const int n : config.n_grid) {
        std::vector<TrialResult> slots(static_cast<std::size_t>(config.n_trials));
        std::exception_ptr failure = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers) if (workers > 1)
#endif
        for (int t = 0; t < config.n_trials; ++t) {
            try {
                slots[static_cast<std::size_t>(t)] =
                    run_trial(config, n, static_cast<std::uint64_t>(t));
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
                {
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
        append_estimator_rows(config, n, slots, rows);
        append_bound_rows(config, n, rows);
    }
    return rows;
}

std::vector<SummaryRow> run_sweep_serial(const ExperimentConfig& config) {
    config.validate();
    std::vector<SummaryRow> rows;
    for (const int n : config.n_grid) {
        std::vector<TrialResult> slots;
        slots.reserve(static_cast<std::size_t>(config.n_trials));
        for (int t = 0; t < config.n_trials; ++t) {
            slots.push_back(run_trial(config, n, static_cast<std::uint64_t>(t)));
        }
        append_estimator_rows(config, n, slots, rows);
        append_bound_rows(config, n, rows);
    }
    return rows;
}

} // namespace ibcrb
