#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qrl/agent.hpp"
#include "qrl/environment.hpp"
#include "qrl/policy.hpp"

namespace qrl {

// Aggregate statistics over an ensemble of independent agents.
struct EnsembleStats {
    std::string strategy;
    std::size_t n_agents = 0;
    std::vector<double> eta_mean;    // per-epoch mean distributed reward
    std::vector<double> eta_stderr;  // sample std / sqrt(n)
    std::vector<std::size_t> learning_times;  // kNeverLearned marks censoring
    double q_target = 0.0;           // threshold the learning times refer to
};

struct LearningTime {
    double mean = 0.0;
    double std_err = 0.0;
    std::size_t censored = 0;
};

// Winning probabilities q_1..q_J at which successive rewards are sought, for
// the one-winner environment: q_j = (1 + lambda (j-1)) / (N + lambda (j-1)).
struct QSchedule {
    std::vector<double> q;

    std::size_t rewards() const { return q.size(); }
};

inline QSchedule q_schedule(std::size_t n_sequences, double lambda, double q_target) {
    QSchedule sched;
    const std::size_t j_max = rewards_to_reach(n_sequences, lambda, q_target);
    const double n = static_cast<double>(n_sequences);
    sched.q.reserve(j_max);
    for (std::size_t j = 1; j <= j_max; ++j)
        sched.q.push_back((1.0 + lambda * (j - 1)) / (n + lambda * (j - 1)));
    return sched;
}

// <T>_C = sum_j 1/q_j.
inline double predict_classical_time(const QSchedule& schedule) {
    double t = 0.0;
    for (double qj : schedule.q) {
        if (qj <= 0.0) throw std::domain_error("schedule entry must be positive");
        t += 1.0 / qj;
    }
    return t;
}

// <T(J,n)>_Q = sum_j (alpha0 n + 1) / sin^2((2n+1) xi_j). The formula is the
// optimum only while (2n+1) xi_J <= pi/2; `valid` reports that.
struct QuantumTimePrediction {
    double epochs = 0.0;
    bool valid = true;
};

inline QuantumTimePrediction predict_quantum_time(const QSchedule& schedule, std::size_t n,
                                                  double alpha0) {
    QuantumTimePrediction out;
    const double cost = alpha0 * static_cast<double>(n) + 1.0;
    for (double qj : schedule.q) {
        if (qj <= 0.0) throw std::domain_error("schedule entry must be positive");
        const double xi = std::asin(std::sqrt(qj));
        const double angle = static_cast<double>(2 * n + 1) * xi;
        if (angle > std::numbers::pi / 2.0 + 1e-12) out.valid = false;
        const double s = std::sin(angle);
        out.epochs += cost / (s * s);
    }
    return out;
}

// Idealized unbounded-coherence time sum_j alpha/sqrt(q_j) together with its
// Cauchy-Schwarz bound alpha sqrt(J) sqrt(sum_j 1/q_j).
struct UnboundedQuantumTime {
    double epochs = 0.0;
    double bound = 0.0;
};

inline UnboundedQuantumTime unbounded_quantum_time(const QSchedule& schedule,
                                                   double alpha = std::numbers::pi / 4.0) {
    UnboundedQuantumTime out;
    double inv_sum = 0.0;
    for (double qj : schedule.q) {
        if (qj <= 0.0) throw std::domain_error("schedule entry must be positive");
        out.epochs += alpha / std::sqrt(qj);
        inv_sum += 1.0 / qj;
    }
    out.bound = alpha * std::sqrt(static_cast<double>(schedule.rewards())) * std::sqrt(inv_sum);
    if (out.epochs > out.bound + 1e-9)
        throw std::logic_error("Cauchy-Schwarz bound violated");
    return out;
}

// Q_n = sin^2(pi/(4n+2)), the success level reachable with at most n
// iterates, and the small-angle estimate <T>_C / (4n) of the quantum time.
struct CoherenceLimits {
    double q_n = 0.0;
    double approx_quantum_time = 0.0;  // valid for n >> 1 and small xi_J only
};

inline CoherenceLimits coherence_limits(std::size_t n, const QSchedule& schedule) {
    if (n < 1) throw std::invalid_argument("coherence cap must be >= 1");
    CoherenceLimits out;
    const double s = std::sin(std::numbers::pi / (4.0 * static_cast<double>(n) + 2.0));
    out.q_n = s * s;
    out.approx_quantum_time = predict_classical_time(schedule) / (4.0 * static_cast<double>(n));
    return out;
}

// Runs n_agents independent agents and aggregates their distributed reward
// series and first-passage times. Agent i uses the substream derived from
// (master_seed, i); aggregation runs in agent-index order, so the result is
// byte-identical for any worker count. The runner must be safe to invoke
// concurrently: (agent RandomStream) -> EpochLedger.
template <typename AgentRunner>
EnsembleStats run_ensemble_with(AgentRunner runner, const char* strategy_label,
                                std::size_t max_epochs, std::size_t n_agents,
                                std::uint64_t master_seed, double q_target,
                                std::size_t n_workers = 0, bool distribute = true) {
    if (n_agents < 1) throw std::invalid_argument("need at least one agent");
    if (n_workers == 0) {
        n_workers = std::thread::hardware_concurrency();
        if (n_workers == 0) n_workers = 1;
    }

    EnsembleStats stats;
    stats.strategy = strategy_label;
    stats.n_agents = n_agents;
    stats.q_target = q_target;
    stats.learning_times.resize(n_agents);

    std::vector<double> sum(max_epochs, 0.0);
    std::vector<double> sum_sq(max_epochs, 0.0);

    const std::size_t chunk = 512;
    std::vector<std::vector<double>> series(std::min(chunk, n_agents));
    std::vector<std::size_t> times(std::min(chunk, n_agents));

    for (std::size_t base = 0; base < n_agents; base += chunk) {
        const std::size_t count = std::min(chunk, n_agents - base);
        auto worker = [&](std::size_t w) {
            for (std::size_t i = w; i < count; i += n_workers) {
                EpochLedger ledger = runner(RandomStream::derive(master_seed, base + i));
                series[i] = reward_series(ledger, distribute);
                series[i].resize(max_epochs, 0.0);
                times[i] = first_passage_epoch(ledger, q_target);
            }
        };
        if (n_workers == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker, w);
            for (auto& t : pool) t.join();
        }
        // Deterministic reduction in agent-index order.
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t e = 0; e < max_epochs; ++e) {
                sum[e] += series[i][e];
                sum_sq[e] += series[i][e] * series[i][e];
            }
            stats.learning_times[base + i] = times[i];
        }
    }

    stats.eta_mean.resize(max_epochs);
    stats.eta_stderr.resize(max_epochs);
    const double n = static_cast<double>(n_agents);
    for (std::size_t e = 0; e < max_epochs; ++e) {
        const double mean = sum[e] / n;
        stats.eta_mean[e] = mean;
        const double var = n > 1.0 ? std::max(0.0, (sum_sq[e] - n * mean * mean) / (n - 1.0)) : 0.0;
        stats.eta_stderr[e] = std::sqrt(var / n);
    }
    return stats;
}

inline EnsembleStats run_ensemble(const AgentConfig& config, const DseEnvironment& env,
                                  std::size_t n_agents, std::uint64_t master_seed,
                                  double q_target, std::size_t n_workers = 0,
                                  bool distribute = true) {
    return run_ensemble_with(
        [&config, &env](RandomStream rng) { return run_agent(config, env, std::move(rng)); },
        to_string(config.strategy), config.max_epochs, n_agents, master_seed, q_target,
        n_workers, distribute);
}

// Mean first-passage epoch over uncensored agents. Errors (softly, by
// throwing std::invalid_argument) when q_target exceeds the switch threshold
// regime the caller asked about.
inline LearningTime learning_time(const EnsembleStats& stats, double q_target,
                                  double switch_threshold = default_switch_threshold()) {
    if (q_target > switch_threshold)
        throw std::invalid_argument("learning threshold above switch threshold Q");
    if (std::abs(q_target - stats.q_target) > 1e-12)
        throw std::invalid_argument("stats were collected for a different threshold");
    LearningTime out;
    double sum = 0.0, sum_sq = 0.0;
    std::size_t n = 0;
    for (std::size_t t : stats.learning_times) {
        if (t == kNeverLearned) {
            ++out.censored;
            continue;
        }
        const double x = static_cast<double>(t);
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    if (n == 0) return out;
    out.mean = sum / static_cast<double>(n);
    if (n > 1) {
        const double var =
            std::max(0.0, (sum_sq - static_cast<double>(n) * out.mean * out.mean) /
                              static_cast<double>(n - 1));
        out.std_err = std::sqrt(var / static_cast<double>(n));
    }
    return out;
}

}  // namespace qrl
