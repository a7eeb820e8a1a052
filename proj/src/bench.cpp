#include "bzap/bench.hpp"

#include "bzap/errors.hpp"
#include "bzap/rng.hpp"
#include "bzap/stability.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace bzap::bench {

std::string_view to_string(Algorithm alg) {
    switch (alg) {
    case Algorithm::bzap: return "bzap";
    case Algorithm::zap: return "zap";
    case Algorithm::bomp: return "bomp";
    case Algorithm::l21: return "l21";
    case Algorithm::oracle: return "oracle";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::bzap, Algorithm::zap, Algorithm::bomp, Algorithm::l21,
                        Algorithm::oracle}) {
        if (name == to_string(a)) return a;
    }
    throw ParameterError("unknown algorithm '" + std::string(name) +
                         "' (expected bzap, zap, bomp, l21 or oracle)");
}

std::vector<Algorithm> parse_algorithms(std::string_view list) {
    std::vector<Algorithm> out;
    while (!list.empty()) {
        const auto comma = list.find(',');
        const std::string_view item = list.substr(0, comma);
        if (!item.empty()) {
            const Algorithm a = parse_algorithm(item);
            if (std::find(out.begin(), out.end(), a) == out.end()) out.push_back(a);
        }
        if (comma == std::string_view::npos) break;
        list.remove_prefix(comma + 1);
    }
    if (out.empty()) throw ParameterError("algorithm list is empty");
    return out;
}

void ExperimentConfig::validate() const {
    if (m < 1 || n < 1) throw ParameterError("m and n must be positive");
    if (m > n) throw ParameterError("experiments need m <= n");
    if (block_size < 1 || n % block_size != 0) {
        throw ParameterError("block size must divide n");
    }
    if (ks.empty()) throw ParameterError("no block sparsity level given");
    for (Index K : ks) {
        if (K < 0 || K > n / block_size) {
            throw ParameterError("block sparsity K=" + std::to_string(K) + " outside 0.." +
                                 std::to_string(n / block_size));
        }
    }
    if (snr_db.empty()) throw ParameterError("no SNR value given");
    for (double s : snr_db) {
        if (std::isnan(s) || s == -kNoiseless) throw ParameterError("SNR must be a number or inf");
    }
    if (trials < 1) throw ParameterError("trials must be at least 1");
    if (algorithms.empty()) throw ParameterError("no algorithm selected");
    if (!(recovery_tol > 0.0)) throw ParameterError("recovery tolerance must be positive");
    if (threads < 1) throw ParameterError("threads must be at least 1");
    solver.validate();
}

ExperimentConfig fig1_defaults() { return ExperimentConfig{}; }

ExperimentConfig fig2_defaults() {
    ExperimentConfig cfg;
    cfg.ks = {4};
    cfg.snr_db = {10, 20, 30, 40, 50};
    cfg.trials = 2000;
    cfg.algorithms = {Algorithm::bzap, Algorithm::zap, Algorithm::bomp, Algorithm::l21,
                      Algorithm::oracle};
    return cfg;
}

ExperimentConfig bound_check_defaults() {
    ExperimentConfig cfg;
    cfg.ks = {4};
    cfg.snr_db = {40};
    cfg.trials = 100;
    cfg.algorithms = {Algorithm::bzap};
    return cfg;
}

Matrix gen_matrix(Index m, Index n, std::uint64_t seed) {
    if (m < 1 || n < 1) throw ParameterError("matrix dimensions must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix A(m, n);
    // row-major fill order, fixed regardless of Eigen's storage order
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < n; ++j) A(i, j) = normal(rng);
    }
    return A;
}

GeneratedSignal gen_signal(const BlockStructure& structure, Index K, std::uint64_t seed) {
    const Index N = structure.num_blocks();
    if (K < 0 || K > N) {
        throw ParameterError("cannot place K=" + std::to_string(K) + " blocks among N=" +
                             std::to_string(N));
    }
    std::mt19937_64 rng(seed);

    // partial Fisher-Yates over block indices 1..N
    std::vector<Index> blocks(static_cast<std::size_t>(N));
    std::iota(blocks.begin(), blocks.end(), Index{1});
    for (Index i = 0; i < K; ++i) {
        std::uniform_int_distribution<Index> pick(i, N - 1);
        std::swap(blocks[static_cast<std::size_t>(i)], blocks[static_cast<std::size_t>(pick(rng))]);
    }
    blocks.resize(static_cast<std::size_t>(K));
    BlockSupport support(std::move(blocks), structure);

    Vector values = Vector::Zero(structure.total_len());
    for (Index k : support.indices()) {
        const Index start = structure.offset(k);
        for (Index j = 0; j < structure.block_len(); ++j) {
            values(start + j) = (rng() >> 63) != 0 ? 1.0 : -1.0;
        }
    }
    return {BlockSignal(std::move(values), structure), std::move(support)};
}

NoiseDraw gen_noise(const Matrix& A, const Vector& xbar, double snr_db, std::uint64_t seed) {
    if (xbar.size() != A.cols()) throw DimensionError("signal length does not match A");
    const Index m = A.rows();
    if (snr_db == kNoiseless) return {Vector::Zero(m), 0.0};
    if (std::isnan(snr_db)) throw ParameterError("SNR must be a number");

    const double signal_norm = (A * xbar).norm();
    if (!(signal_norm > 0.0)) throw ParameterError("SNR is undefined when A xbar = 0");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector v(m);
    for (Index i = 0; i < m; ++i) v(i) = normal(rng);
    const double target = signal_norm / std::pow(10.0, snr_db / 20.0);
    v *= target / v.norm();
    return {std::move(v), target / std::sqrt(static_cast<double>(m))};
}

double squared_relative_deviation(const Vector& xhat, const Vector& xbar) {
    const double err = (xhat - xbar).squaredNorm();
    const double energy = xbar.squaredNorm();
    return energy > 0.0 ? err / energy : err;
}

void parallel_for(Index count, unsigned threads, const std::function<void(Index)>& body) {
    if (count <= 0) return;
    const unsigned workers =
        static_cast<unsigned>(std::min<Index>(std::max(1u, threads), count));
    if (workers == 1) {
        for (Index i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<Index> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&] {
        for (Index i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

std::uint64_t seed_for(const ExperimentConfig& cfg, Index trial, StreamRole role,
                       std::uint64_t extra = 0) {
    return derive_seed(cfg.base_seed, {static_cast<std::uint64_t>(trial),
                                       static_cast<std::uint64_t>(role), extra});
}

Matrix trial_matrix(const ExperimentConfig& cfg, Index trial) {
    // a fixed matrix reuses trial 0's stream
    return gen_matrix(cfg.m, cfg.n, seed_for(cfg, cfg.fix_matrix ? 0 : trial, StreamRole::matrix));
}

struct Estimate {
    Vector x;
    int iterations = 0;
};

Estimate run_algorithm(Algorithm alg, const SensingSystem& sys, const BlockStructure& structure,
                       const BlockSupport& truth, Index K, const SolverConfig& solver) {
    switch (alg) {
    case Algorithm::bzap: {
        auto r = bzap_solve(sys, structure, solver);
        return {r.estimate.values(), r.trace.iterations};
    }
    case Algorithm::zap: {
        auto r = zap_solve(sys, solver);
        return {r.estimate.values(), r.trace.iterations};
    }
    case Algorithm::l21: {
        auto r = l21_solve(sys, structure, solver);
        return {r.estimate.values(), r.trace.iterations};
    }
    case Algorithm::bomp: return {bomp_solve(sys, structure, K).values(), static_cast<int>(K)};
    case Algorithm::oracle: return {oracle_solve(sys, truth).values(), 0};
    }
    throw ParameterError("unknown algorithm");
}

TrialRecord evaluate(Algorithm alg, const SensingSystem& sys, const BlockStructure& structure,
                     const GeneratedSignal& truth, Index K, double snr_db,
                     const ExperimentConfig& cfg, Index trial) {
    TrialRecord rec;
    rec.trial_id = trial;
    rec.algorithm = alg;
    rec.K = K;
    rec.snr_db = snr_db;
    rec.signal_energy = truth.signal.values().squaredNorm();
    const auto start = std::chrono::steady_clock::now();
    try {
        const Estimate est = run_algorithm(alg, sys, structure, truth.support, K, cfg.solver);
        rec.squared_error = (est.x - truth.signal.values()).squaredNorm();
        rec.squared_relative_deviation =
            squared_relative_deviation(est.x, truth.signal.values());
        rec.exact = rec.squared_relative_deviation < cfg.recovery_tol;
        rec.iterations = est.iterations;
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.failure = e.what();
        rec.squared_error = std::numeric_limits<double>::quiet_NaN();
        rec.squared_relative_deviation = std::numeric_limits<double>::quiet_NaN();
    }
    rec.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<TrialRecord> flatten(std::vector<std::vector<TrialRecord>>&& per_trial) {
    std::vector<TrialRecord> out;
    for (auto& v : per_trial) {
        for (auto& r : v) out.push_back(std::move(r));
    }
    return out;
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

// Ratio-of-means estimate sum(e)/sum(s) with a delta-method standard error.
MsdRow ratio_row(std::string name, double snr, const std::vector<double>& e,
                 const std::vector<double>& s) {
    const auto count = static_cast<Index>(e.size());
    MsdRow row{std::move(name), snr, count, 0.0, 0.0, 0.0};
    if (count == 0) {
        row.msd_linear = row.msd_db = row.std_error = std::numeric_limits<double>::quiet_NaN();
        return row;
    }
    const double se = std::accumulate(e.begin(), e.end(), 0.0);
    const double ss = std::accumulate(s.begin(), s.end(), 0.0);
    row.msd_linear = se / ss;
    row.msd_db = to_db(row.msd_linear);
    if (count > 1) {
        const double mean_s = ss / static_cast<double>(count);
        double acc = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            const double r = e[i] - row.msd_linear * s[i];
            acc += r * r;
        }
        const double var = acc / static_cast<double>(count - 1);
        row.std_error = std::sqrt(var / static_cast<double>(count)) / mean_s;
    }
    return row;
}

std::string format_number(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

} // namespace

const RecoveryRow& ExperimentReport::recovery_for(Algorithm alg, Index K) const {
    for (const auto& r : recovery) {
        if (r.algorithm == alg && r.K == K) return r;
    }
    throw ParameterError("no recovery row for " + std::string(to_string(alg)) +
                         " at K=" + std::to_string(K));
}

const MsdRow& ExperimentReport::msd_for(std::string_view algorithm, double snr_db) const {
    for (const auto& r : msd) {
        if (r.algorithm == algorithm && r.snr_db == snr_db) return r;
    }
    throw ParameterError("no MSD row for " + std::string(algorithm) + " at SNR " +
                         format_number(snr_db));
}

ExperimentReport run_fig1(const ExperimentConfig& cfg) {
    cfg.validate();
    const BlockStructure structure = BlockStructure::from_length(cfg.n, cfg.block_size);

    std::vector<std::vector<TrialRecord>> per_trial(static_cast<std::size_t>(cfg.trials));
    parallel_for(cfg.trials, cfg.threads, [&](Index trial) {
        const Matrix A = trial_matrix(cfg, trial);
        const SensingSystem base(A, Vector::Zero(cfg.m));
        auto& out = per_trial[static_cast<std::size_t>(trial)];
        for (std::size_t ki = 0; ki < cfg.ks.size(); ++ki) {
            const Index K = cfg.ks[ki];
            const GeneratedSignal truth = gen_signal(
                structure, K, seed_for(cfg, trial, StreamRole::signal, static_cast<std::uint64_t>(K)));
            const SensingSystem sys = base.with_measurement(A * truth.signal.values());
            for (Algorithm alg : cfg.algorithms) {
                out.push_back(evaluate(alg, sys, structure, truth, K, kNoiseless, cfg, trial));
            }
        }
    });

    ExperimentReport report;
    report.trials = flatten(std::move(per_trial));
    for (Algorithm alg : cfg.algorithms) {
        for (Index K : cfg.ks) {
            RecoveryRow row{alg, K, 0, 0, 0, 0.0};
            for (const auto& r : report.trials) {
                if (r.algorithm != alg || r.K != K) continue;
                ++row.trials;
                row.successes += r.exact ? 1 : 0;
                row.failures += r.failed ? 1 : 0;
            }
            row.rate = static_cast<double>(row.successes) / static_cast<double>(row.trials);
            report.recovery.push_back(row);
        }
    }
    return report;
}

ExperimentReport run_fig2(const ExperimentConfig& cfg) {
    cfg.validate();
    const BlockStructure structure = BlockStructure::from_length(cfg.n, cfg.block_size);
    const Index K = cfg.ks.front();
    if (K < 1) throw ParameterError("the MSD sweep needs K >= 1");
    const std::size_t num_snr = cfg.snr_db.size();

    // oracle-formula numerators sigma^2 tr[(A_T^T A_T)^-1], indexed [trial][snr]
    std::vector<std::vector<double>> formula(static_cast<std::size_t>(cfg.trials),
                                             std::vector<double>(num_snr, 0.0));
    std::vector<std::vector<TrialRecord>> per_trial(static_cast<std::size_t>(cfg.trials));
    parallel_for(cfg.trials, cfg.threads, [&](Index trial) {
        const Matrix A = trial_matrix(cfg, trial);
        const SensingSystem base(A, Vector::Zero(cfg.m));
        const GeneratedSignal truth = gen_signal(
            structure, K, seed_for(cfg, trial, StreamRole::signal, static_cast<std::uint64_t>(K)));
        const Vector clean = A * truth.signal.values();

        const Matrix A_T = submatrix_cols(A, truth.support);
        const double trace_inv = (A_T.transpose() * A_T).inverse().trace();

        auto& out = per_trial[static_cast<std::size_t>(trial)];
        for (std::size_t si = 0; si < num_snr; ++si) {
            const double snr = cfg.snr_db[si];
            const NoiseDraw noise = gen_noise(A, truth.signal.values(), snr,
                                              seed_for(cfg, trial, StreamRole::noise, si));
            formula[static_cast<std::size_t>(trial)][si] =
                noise.sigma_effective * noise.sigma_effective * trace_inv;
            const SensingSystem sys = base.with_measurement(clean + noise.v);
            for (Algorithm alg : cfg.algorithms) {
                out.push_back(evaluate(alg, sys, structure, truth, K, snr, cfg, trial));
            }
        }
    });

    ExperimentReport report;
    report.trials = flatten(std::move(per_trial));
    for (Algorithm alg : cfg.algorithms) {
        for (double snr : cfg.snr_db) {
            std::vector<double> e, s;
            for (const auto& r : report.trials) {
                if (r.algorithm != alg || r.snr_db != snr || r.failed) continue;
                e.push_back(r.squared_error);
                s.push_back(r.signal_energy);
            }
            report.msd.push_back(ratio_row(std::string(to_string(alg)), snr, e, s));
        }
    }
    const double energy = static_cast<double>(K * cfg.block_size);
    for (std::size_t si = 0; si < num_snr; ++si) {
        std::vector<double> e, s;
        for (const auto& row : formula) {
            e.push_back(row[si]);
            s.push_back(energy);
        }
        report.msd.push_back(ratio_row("oracle-formula", cfg.snr_db[si], e, s));
    }
    return report;
}

BoundCheckReport run_bound_check(const ExperimentConfig& cfg) {
    cfg.validate();
    const BlockStructure structure = BlockStructure::from_length(cfg.n, cfg.block_size);
    const Index K = cfg.ks.front();
    if (K < 1) throw ParameterError("the bound check needs K >= 1");
    const double snr = cfg.snr_db.front();

    BoundCheckReport report;
    report.rows.resize(static_cast<std::size_t>(cfg.trials));
    parallel_for(cfg.trials, cfg.threads, [&](Index trial) {
        const Matrix A = trial_matrix(cfg, trial);
        const GeneratedSignal truth = gen_signal(
            structure, K, seed_for(cfg, trial, StreamRole::signal, static_cast<std::uint64_t>(K)));
        NoiseDraw noise =
            gen_noise(A, truth.signal.values(), snr, seed_for(cfg, trial, StreamRole::noise, 0));
        const SensingSystem sys(A, A * truth.signal.values() + noise.v);
        const SolveResult solved = bzap_solve(sys, structure, cfg.solver);

        const StabilityContext ctx =
            make_stability_context(truth.signal, truth.support, cfg.solver.alpha, noise.v);
        // iterate-vs-minimizer allowance: the exact-recovery distance
        const double tol = std::sqrt(cfg.recovery_tol) * truth.signal.values().norm();
        const ProofCheckReport check = proof_intermediate_checks(sys, ctx, solved.estimate, tol);

        const BoundTerms block_terms = theorem1_terms(sys, truth.support, noise.v);
        const BoundTerms scalar_terms = theorem1_terms(sys, truth.support.to_scalar(), noise.v);

        BoundRecord& rec = report.rows[static_cast<std::size_t>(trial)];
        rec.trial_id = trial;
        rec.in_ball = check.in_ball;
        rec.feasible = check.feasible;
        rec.error = check.error;
        rec.bound = block_terms.total();
        rec.slack = rec.bound - rec.error;
        rec.zap_bound = scalar_terms.total();
        rec.coef_ratio = scalar_terms.sqrt_coef / block_terms.sqrt_coef;
        rec.off_support_holds = check.off_support.holds;
        rec.on_support_holds = check.on_support.holds;
        rec.triangle_holds = check.triangle.holds;
        rec.bound_holds = check.total.holds;
    });

    for (const auto& r : report.rows) {
        if (!(r.in_ball && r.feasible)) continue;
        ++report.in_ball;
        if (!(r.off_support_holds && r.on_support_holds && r.triangle_holds && r.bound_holds)) {
            ++report.violations;
        }
    }
    return report;
}

void write_fig1_csv(std::ostream& out, const ExperimentReport& report) {
    out << "algorithm,K,trials,successes,rate\n";
    for (const auto& r : report.recovery) {
        out << to_string(r.algorithm) << ',' << r.K << ',' << r.trials << ',' << r.successes
            << ',' << format_number(r.rate) << '\n';
    }
}

void write_fig2_csv(std::ostream& out, const ExperimentReport& report) {
    out << "algorithm,snr_db,trials,msd_linear,msd_db\n";
    for (const auto& r : report.msd) {
        out << r.algorithm << ',' << format_number(r.snr_db) << ',' << r.trials << ','
            << format_number(r.msd_linear) << ',' << format_number(r.msd_db) << '\n';
    }
}

void write_bound_csv(std::ostream& out, const BoundCheckReport& report) {
    out << "trial_id,in_ball,error,bound,slack,zap_bound,coef_ratio\n";
    for (const auto& r : report.rows) {
        out << r.trial_id << ',' << (r.in_ball ? 1 : 0) << ',' << format_number(r.error) << ','
            << format_number(r.bound) << ',' << format_number(r.slack) << ','
            << format_number(r.zap_bound) << ',' << format_number(r.coef_ratio) << '\n';
    }
}

} // namespace bzap::bench
