#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrl/amplitude.hpp"
#include "qrl/environment.hpp"
#include "qrl/policy.hpp"
#include "qrl/rng.hpp"
#include "qrl/statevector.hpp"

namespace qrl {

enum class Strategy { classical, quantum_only, hybrid };

inline const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::classical: return "classical";
        case Strategy::quantum_only: return "quantum_only";
        default: return "hybrid";
    }
}

enum class EpochKind { classical, grover, test };

inline const char* to_string(EpochKind k) {
    switch (k) {
        case EpochKind::classical: return "classical";
        case EpochKind::grover: return "grover";
        default: return "test";
    }
}

struct EpochRecord {
    std::size_t epoch = 0;  // 1-based
    EpochKind kind = EpochKind::classical;
    std::size_t sequence = 0;
    int reward = 0;
    double q_before = 0.0;  // policy winning probability at epoch start
    std::size_t k = 0;      // Grover iterations of the round this epoch belongs to
};

struct EpochLedger {
    std::vector<EpochRecord> records;
    double final_q = 0.0;
    bool truncated = false;  // stopped by the epoch budget

    std::size_t epochs() const { return records.size(); }

    // Time-ordered rewarded sequences (the trace the policy is a function of).
    PolicyTrace trace() const {
        PolicyTrace t;
        for (const auto& rec : records)
            if (rec.reward) t.record(rec.sequence, rec.epoch);
        return t;
    }
};

// Switch threshold where one Grover iterate stops paying for its two epochs:
// sin^2(3 xi) = 2 sin^2(xi) at q = (3 - sqrt 2)/4.
inline constexpr double default_switch_threshold() { return (3.0 - std::numbers::sqrt2) / 4.0; }

struct AgentConfig {
    Strategy strategy = Strategy::hybrid;
    std::size_t coherence_cap = 1;                  // max Grover iterations per round
    double switch_threshold = default_switch_threshold();
    double lambda = 2.0;
    std::size_t max_epochs = 1000;

    void validate() const {
        if (coherence_cap < 1) throw std::invalid_argument("coherence cap must be >= 1");
        if (switch_threshold <= 0.0 || switch_threshold >= 1.0)
            throw std::invalid_argument("switch threshold must lie in (0,1)");
        if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
    }
};

inline bool should_switch(double q, double threshold) { return q >= threshold; }

// One classical epoch: sample from the policy, play it, update.
inline EpochRecord classical_epoch(Policy& policy, const DseEnvironment& env,
                                   std::span<const std::size_t> rewarded, RandomStream& rng) {
    EpochRecord rec;
    rec.kind = EpochKind::classical;
    rec.q_before = policy.winning_probability(rewarded);
    rec.sequence = policy.sample(rng);
    rec.reward = env.play_classical_epoch(rec.sequence).second;
    policy.update(rec.sequence, rec.reward);
    return rec;
}

// One amplification round: prepare |psi> from the policy, run k Grover
// iterates, measure a test sequence, then play one classical test epoch to
// read its reward and update the policy. Consumes k+1 epochs.
inline std::pair<std::vector<EpochRecord>, std::size_t> quantum_round(
    Policy& policy, const DseEnvironment& env, std::span<const std::size_t> rewarded,
    RandomStream& rng, std::size_t k) {
    const double q = policy.winning_probability(rewarded);
    if (q <= 0.0) throw std::domain_error("no rewarded sequence reachable");
    if (k == 0) throw std::invalid_argument("quantum round needs k >= 1");

    const StateVector reference = prepare_initial(policy.action_distribution());
    StateVector state = reference;
    for (std::size_t i = 0; i < k; ++i)
        state = reflect_about(reference, oracle_phase(rewarded, std::move(state)));
    const std::size_t sequence = measure(state, rng);
    const int reward = env.play_classical_epoch(sequence).second;
    policy.update(sequence, reward);

    std::vector<EpochRecord> recs;
    for (std::size_t i = 0; i < k; ++i)
        recs.push_back({0, EpochKind::grover, sequence, 0, q, k});
    recs.push_back({0, EpochKind::test, sequence, reward, q, k});
    return {recs, sequence};
}

// Full epoch loop for one agent. Deterministic given the rng stream.
inline EpochLedger run_agent(const AgentConfig& config, const DseEnvironment& env,
                             RandomStream rng) {
    config.validate();
    const std::vector<std::size_t> rewarded = enumerate_rewarded(env);
    Policy policy(env.sequence_count(), config.lambda);
    EpochLedger ledger;
    bool switched = false;  // hybrid: latched once q crosses the threshold

    while (ledger.records.size() < config.max_epochs) {
        const double q = policy.winning_probability(rewarded);
        std::size_t k = 0;
        if (config.strategy == Strategy::quantum_only) {
            k = q > 0.0 ? config.coherence_cap : 0;
        } else if (config.strategy == Strategy::hybrid && !switched) {
            if (should_switch(q, config.switch_threshold)) {
                switched = true;
            } else if (q > 0.0) {
                k = optimal_iterations(q, config.coherence_cap).k;
            }
        }
        const std::size_t remaining = config.max_epochs - ledger.records.size();
        if (k >= 1 && k + 1 <= remaining) {
            auto [recs, seq] = quantum_round(policy, env, rewarded, rng, k);
            for (auto& rec : recs) {
                rec.epoch = ledger.records.size() + 1;
                ledger.records.push_back(rec);
            }
        } else {
            EpochRecord rec = classical_epoch(policy, env, rewarded, rng);
            rec.epoch = ledger.records.size() + 1;
            ledger.records.push_back(rec);
        }
    }
    ledger.final_q = policy.winning_probability(rewarded);
    ledger.truncated = true;  // loop always runs out the epoch budget
    return ledger;
}

// Per-epoch reward series. With distribute=false a quantum round's reward
// sits on its test epoch; with distribute=true it is spread evenly over the
// round's k+1 epochs. Classical epochs keep their raw bit either way.
inline std::vector<double> reward_series(const EpochLedger& ledger, bool distribute) {
    std::vector<double> series(ledger.records.size(), 0.0);
    std::size_t i = 0;
    while (i < ledger.records.size()) {
        const EpochRecord& rec = ledger.records[i];
        if (rec.kind == EpochKind::classical) {
            series[i] = rec.reward;
            ++i;
            continue;
        }
        // A round spans k grover epochs plus its test epoch.
        std::size_t j = i;
        while (j < ledger.records.size() && ledger.records[j].kind == EpochKind::grover) ++j;
        if (j >= ledger.records.size() || ledger.records[j].kind != EpochKind::test)
            throw std::logic_error("grover epochs must be followed by a test epoch");
        const double r = ledger.records[j].reward;
        if (distribute) {
            const double share = r / static_cast<double>(j - i + 1);
            for (std::size_t e = i; e <= j; ++e) series[e] = share;
        } else {
            series[j] = r;
        }
        i = j + 1;
    }
    return series;
}

// First epoch count t with winning probability >= q_target; nullopt-like
// sentinel (max) when the ledger never crosses it.
inline constexpr std::size_t kNeverLearned = static_cast<std::size_t>(-1);

inline std::size_t first_passage_epoch(const EpochLedger& ledger, double q_target) {
    for (const auto& rec : ledger.records)
        if (rec.q_before >= q_target) return rec.epoch - 1;
    if (ledger.final_q >= q_target) return ledger.records.size();
    return kNeverLearned;
}

}  // namespace qrl
