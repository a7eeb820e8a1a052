#pragma once

#include "bzap/affine_projection.hpp"
#include "bzap/block_model.hpp"
#include "bzap/solvers.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace bzap::bench {

enum class Algorithm { bzap, zap, bomp, l21, oracle };

std::string_view to_string(Algorithm alg);
Algorithm parse_algorithm(std::string_view name);
/// Comma-separated list, e.g. "bzap,bomp,oracle".
std::vector<Algorithm> parse_algorithms(std::string_view list);

/// SNR sentinel for noiseless measurements.
inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

/// Role tags folded into per-trial seeds.
enum class StreamRole : std::uint64_t { matrix = 1, signal = 2, noise = 3 };

struct ExperimentConfig {
    Index m = 40;
    Index n = 100;
    Index block_size = 4;
    /// Block sparsity levels: the whole sweep for fig1, the first entry for fig2/bound-check.
    std::vector<Index> ks{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> snr_db{kNoiseless};
    Index trials = 200;
    std::uint64_t base_seed = 20110101;
    std::vector<Algorithm> algorithms{Algorithm::bzap, Algorithm::zap, Algorithm::bomp,
                                      Algorithm::l21};
    SolverConfig solver{};
    double recovery_tol = 1e-6;
    /// Draw one matrix for every trial instead of a fresh one per trial.
    bool fix_matrix = false;
    unsigned threads = 1;

    void validate() const;
};

ExperimentConfig fig1_defaults();
ExperimentConfig fig2_defaults();
ExperimentConfig bound_check_defaults();

/// m x n matrix of independent N(0, 1) entries.
Matrix gen_matrix(Index m, Index n, std::uint64_t seed);

struct GeneratedSignal {
    BlockSignal signal;
    BlockSupport support;
};

/// K blocks chosen uniformly without replacement, entries +-1 with equal probability.
GeneratedSignal gen_signal(const BlockStructure& structure, Index K, std::uint64_t seed);

struct NoiseDraw {
    Vector v;
    double sigma_effective;   ///< ||v|| / sqrt(m)
};

/// Gaussian noise rescaled so that 10 log10(||A xbar||^2 / ||v||^2) = snr_db exactly.
NoiseDraw gen_noise(const Matrix& A, const Vector& xbar, double snr_db, std::uint64_t seed);

/// ||xhat - xbar||^2 / ||xbar||^2, or ||xhat||^2 when xbar = 0.
double squared_relative_deviation(const Vector& xhat, const Vector& xbar);

struct TrialRecord {
    Index trial_id = 0;
    Algorithm algorithm = Algorithm::bzap;
    Index K = 0;
    double snr_db = kNoiseless;
    double squared_error = 0.0;
    double signal_energy = 0.0;
    double squared_relative_deviation = 0.0;
    bool exact = false;
    /// Solver threw; the trial counts as not exact and is left out of MSD sums.
    bool failed = false;
    std::string failure;
    int iterations = 0;
    double wall_time = 0.0;
};

struct RecoveryRow {
    Algorithm algorithm;
    Index K;
    Index trials;
    Index successes;
    Index failures;
    double rate;
};

struct MsdRow {
    std::string algorithm;   ///< algorithm name, or "oracle-formula"
    double snr_db;
    Index trials;
    double msd_linear;
    double msd_db;
    double std_error;        ///< Monte Carlo standard error of msd_linear
};

struct ExperimentReport {
    std::vector<TrialRecord> trials;
    std::vector<RecoveryRow> recovery;
    std::vector<MsdRow> msd;

    const RecoveryRow& recovery_for(Algorithm alg, Index K) const;
    const MsdRow& msd_for(std::string_view algorithm, double snr_db) const;
};

/// Noiseless exact-recovery sweep over cfg.ks.
ExperimentReport run_fig1(const ExperimentConfig& cfg);

/// MSD versus SNR at K = cfg.ks.front(), plus the oracle-formula curve.
ExperimentReport run_fig2(const ExperimentConfig& cfg);

struct BoundRecord {
    Index trial_id = 0;
    bool in_ball = false;
    bool feasible = false;
    double error = 0.0;
    double bound = 0.0;
    double slack = 0.0;
    double zap_bound = 0.0;
    double coef_ratio = 0.0;   ///< 2 sqrt(n) / 2 sqrt(N)
    bool off_support_holds = false;
    bool on_support_holds = false;
    bool triangle_holds = false;
    bool bound_holds = false;
};

struct BoundCheckReport {
    std::vector<BoundRecord> rows;
    Index in_ball = 0;
    Index violations = 0;   ///< in-ball trials with any failed inequality
};

/// BZAP on noisy instances at K = ks.front(), SNR = snr_db.front(), checked against the error bound.
BoundCheckReport run_bound_check(const ExperimentConfig& cfg);

/// fig1.csv: algorithm,K,trials,successes,rate
void write_fig1_csv(std::ostream& out, const ExperimentReport& report);
/// fig2.csv: algorithm,snr_db,trials,msd_linear,msd_db
void write_fig2_csv(std::ostream& out, const ExperimentReport& report);
/// bound.csv: trial_id,in_ball,error,bound,slack,zap_bound,coef_ratio
void write_bound_csv(std::ostream& out, const BoundCheckReport& report);

/// Runs body(i) for i in [0, count) on up to `threads` workers.
void parallel_for(Index count, unsigned threads, const std::function<void(Index)>& body);

} // namespace bzap::bench
