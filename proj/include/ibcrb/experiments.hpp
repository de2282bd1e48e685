#ifndef IBCRB_EXPERIMENTS_HPP
#define IBCRB_EXPERIMENTS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ibcrb/bounds.hpp"
#include "ibcrb/estimators.hpp"

namespace ibcrb {

enum class Mode { Deterministic, Bayesian };
enum class EstimatorKind { Scm, Map, Mmse };

const char* mode_name(Mode m);
const char* estimator_name(EstimatorKind e);

// Simulation sweep parameters. "Deterministic" freezes the covariance at the
// Toeplitz center; "Bayesian" redraws it from the prior every trial.
struct ExperimentConfig {
    int p = 5;
    double rho = 0.5;
    double nu = 40.0;
    std::vector<int> n_grid = {10};
    int n_trials = 1000;
    std::uint64_t seed = 0;
    Mode mode = Mode::Bayesian;
    std::vector<Metric> metrics = {Metric::Euclidean, Metric::AffineInvariant};
    std::vector<EstimatorKind> estimators = {EstimatorKind::Scm, EstimatorKind::Map,
                                             EstimatorKind::Mmse};

    void validate() const; // throws ConfigError naming the offending key
};

// One (series, n) record of a sweep; bound rows carry n_trials = 0.
struct SummaryRow {
    Mode mode = Mode::Bayesian;
    Metric metric = Metric::Euclidean;
    std::string series;
    double nu = 0.0;
    int p = 0;
    int n = 0;
    double value = 0.0;
    double std_err = 0.0;
    std::int64_t n_trials = 0;
    std::uint64_t seed = 0;
};

// (sigma0)_{ij} = rho^{|i-j|}, Hermitian positive definite for |rho| < 1.
HpdMatrix toeplitz_center(int p, double rho);

// Squared distances of one trial, indexed [estimator][metric]; unrequested
// cells hold NaN. The trial owns RNG stream (seed, trial_index), so the
// result is independent of scheduling.
struct TrialResult {
    std::array<std::array<double, 2>, 3> d2;
};

TrialResult run_trial(const ExperimentConfig& config, int n, std::uint64_t trial_index);

// Mean squared distance per (estimator, metric) over n_trials for every n in
// the grid, plus the matching bound rows. The parallel version partitions
// trials across OpenMP workers; per-trial streams and fixed-order reduction
// make the output identical for any worker count.
std::vector<SummaryRow> run_sweep(const ExperimentConfig& config, int workers = 0);

// Plain-loop reference implementation, kept for testing the parallel path.
std::vector<SummaryRow> run_sweep_serial(const ExperimentConfig& config);

// Default worker count: IBCRB_WORKERS env var if set, else the OpenMP limit.
int default_workers();

} // namespace ibcrb

#endif
