#pragma once

#include <cstdio>
#include <string>

#include "qrl/agent.hpp"
#include "qrl/config.hpp"
#include "qrl/ensemble.hpp"

namespace qrl {

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

// Curve CSV: one row per epoch of the distributed-reward mean.
inline std::string curve_csv(const EnsembleStats& stats) {
    std::string out = "epoch,eta_mean,eta_stderr,n_agents\n";
    for (std::size_t e = 0; e < stats.eta_mean.size(); ++e) {
        out += std::to_string(e + 1);
        out += ',';
        out += format_double(stats.eta_mean[e]);
        out += ',';
        out += format_double(stats.eta_stderr[e]);
        out += ',';
        out += std::to_string(stats.n_agents);
        out += '\n';
    }
    return out;
}

// One record per line: epoch, strategy, sequence, reward, q_before, k.
inline std::string ledger_dump(const EpochLedger& ledger) {
    std::string out = "epoch,strategy,sequence,reward,q_before,k\n";
    for (const auto& rec : ledger.records) {
        out += std::to_string(rec.epoch);
        out += ',';
        out += to_string(rec.kind);
        out += ',';
        out += std::to_string(rec.sequence);
        out += ',';
        out += std::to_string(rec.reward);
        out += ',';
        out += format_double(rec.q_before);
        out += ',';
        out += std::to_string(rec.k);
        out += '\n';
    }
    return out;
}

// (sequence id -> weight) pairs; only non-initial weights are listed.
inline std::string policy_dump(const Policy& policy) {
    std::string out = "sequence,weight\n";
    for (std::size_t i = 0; i < policy.sequence_count(); ++i) {
        if (policy.weight(i) == 1.0) continue;
        out += std::to_string(i);
        out += ',';
        out += format_double(policy.weight(i));
        out += '\n';
    }
    return out;
}

struct PredictorReport {
    std::size_t rewards = 0;
    double classical = 0.0;
    double quantum = 0.0;
    bool quantum_valid = true;
    double unbounded = 0.0;
    double bound = 0.0;
    double q_n = 0.0;
    double approx = 0.0;
};

inline PredictorReport predictor_report(std::size_t n_sequences, double lambda, double q_target,
                                        std::size_t n_cap) {
    const QSchedule sched = q_schedule(n_sequences, lambda, q_target);
    PredictorReport r;
    r.rewards = sched.rewards();
    r.classical = predict_classical_time(sched);
    const auto qt = predict_quantum_time(sched, n_cap, 1.0);
    r.quantum = qt.epochs;
    r.quantum_valid = qt.valid;
    const auto ub = unbounded_quantum_time(sched);
    r.unbounded = ub.epochs;
    r.bound = ub.bound;
    const auto cl = coherence_limits(n_cap, sched);
    r.q_n = cl.q_n;
    r.approx = cl.approx_quantum_time;
    return r;
}

// Experiment summary: learning-time statistics, analytic predictors and the
// resolved configuration that produced them.
inline std::string summary_text(const RunConfig& cfg, const EnsembleStats& stats,
                                const LearningTime& lt, const PredictorReport* predictors) {
    std::string out;
    out += "strategy = " + stats.strategy + "\n";
    out += "n_agents = " + std::to_string(stats.n_agents) + "\n";
    out += "Q_L = " + format_double(cfg.q_l) + "\n";
    out += "mean_T = " + format_double(lt.mean) + "\n";
    out += "stderr_T = " + format_double(lt.std_err) + "\n";
    out += "censored = " + std::to_string(lt.censored) + "\n";
    if (predictors != nullptr) {
        out += "predictor_rewards_J = " + std::to_string(predictors->rewards) + "\n";
        out += "predictor_classical = " + format_double(predictors->classical) + "\n";
        out += "predictor_quantum = " + format_double(predictors->quantum) + "\n";
        out += std::string("predictor_quantum_valid = ") +
               (predictors->quantum_valid ? "true" : "false") + "\n";
        out += "predictor_unbounded = " + format_double(predictors->unbounded) + "\n";
        out += "predictor_bound = " + format_double(predictors->bound) + "\n";
        out += "predictor_Q_n = " + format_double(predictors->q_n) + "\n";
        out += "predictor_classical_over_4n = " + format_double(predictors->approx) + "\n";
    }
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(cfg.hash()));
    out += "config_hash = " + std::string(hash) + "\n";
    out += "seed = " + std::to_string(cfg.master_seed) + "\n";
    out += "\n# resolved configuration\n";
    out += cfg.canonical_text();
    return out;
}

}  // namespace qrl
