#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <stdexcept>

#include "qrl/agent.hpp"
#include "qrl/photonic.hpp"

namespace qrl {

// Epoch outcomes driven by the compiled mesh instead of the exact
// statevector. Only the one-winner environment fits the 4-mode encoding
// (action qubit = winner vs rest, reward qubit), and rounds are fixed at
// k = 1 since the quantum circuit performs a single oracle call.
class PhotonicBackend {
public:
    PhotonicBackend(std::size_t n, std::size_t winner, double visibility)
        : n_(n), winner_(winner), visibility_(visibility) {
        if (winner >= n) throw std::invalid_argument("winner id out of range");
    }

    // Probability that a classical epoch fires D2 (reward) at winning
    // probability q, under the visibility model.
    double classical_win_probability(double q) {
        return detector_probs(EpochCircuit::classical, q, enc_.d2_modes());
    }

    // Probability that the quantum epoch fires D3 (rewarded action).
    double quantum_win_probability(double q) {
        return detector_probs(EpochCircuit::quantum, q, enc_.d3_modes());
    }

    EpochLedger run_agent(const AgentConfig& config, RandomStream rng) {
        config.validate();
        if (config.coherence_cap != 1)
            throw std::invalid_argument("photonic backend supports a coherence cap of 1 only");
        Policy policy(n_, config.lambda);
        const std::size_t rewarded_arr[1] = {winner_};
        const std::span<const std::size_t> rewarded(rewarded_arr, 1);
        EpochLedger ledger;
        bool switched = false;

        while (ledger.records.size() < config.max_epochs) {
            const double q = policy.winning_probability(rewarded);
            bool quantum = false;
            if (config.strategy == Strategy::quantum_only) {
                quantum = q > 0.0 && q < 1.0;
            } else if (config.strategy == Strategy::hybrid && !switched) {
                if (should_switch(q, config.switch_threshold)) switched = true;
                else quantum = q > 0.0 && optimal_iterations(q, 1).k == 1;
            }
            const std::size_t remaining = config.max_epochs - ledger.records.size();
            if (quantum && remaining >= 2) {
                const bool won = rng.uniform() < quantum_win_probability(q);
                const std::size_t seq = won ? winner_ : losing_sequence(rng);
                policy.update(seq, won ? 1 : 0);
                const std::size_t e = ledger.records.size();
                ledger.records.push_back({e + 1, EpochKind::grover, seq, 0, q, 1});
                ledger.records.push_back({e + 2, EpochKind::test, seq, won ? 1 : 0, q, 1});
            } else {
                const bool won = rng.uniform() < classical_win_probability(q);
                const std::size_t seq = won ? winner_ : losing_sequence(rng);
                policy.update(seq, won ? 1 : 0);
                ledger.records.push_back(
                    {ledger.records.size() + 1, EpochKind::classical, seq, won ? 1 : 0, q, 0});
            }
        }
        ledger.final_q = policy.winning_probability(rewarded);
        ledger.truncated = true;
        return ledger;
    }

private:
    // Non-winner weights stay equal in the one-winner environment, so a
    // losing draw is uniform over the other sequences.
    std::size_t losing_sequence(RandomStream& rng) {
        std::size_t id = static_cast<std::size_t>(rng.uniform() * (n_ - 1));
        if (id >= n_ - 1) id = n_ - 2;
        return id >= winner_ ? id + 1 : id;
    }

    double detector_probs(EpochCircuit kind, double q, std::array<std::size_t, 2> modes) {
        auto& cache = kind == EpochCircuit::classical ? classical_cache_ : quantum_cache_;
        auto it = cache.find(q);
        if (it == cache.end()) {
            const double xi = std::asin(std::sqrt(q));
            const MziMesh mesh = compile_epoch_circuit(kind, xi, enc_);
            it = cache.emplace(q, simulate_with_visibility(mesh, enc_.input_mode(), visibility_))
                     .first;
        }
        return it->second[modes[0]] + it->second[modes[1]];
    }

    std::size_t n_;
    std::size_t winner_;
    double visibility_;
    ModeEncoding enc_;
    std::map<double, std::array<double, 4>> classical_cache_;
    std::map<double, std::array<double, 4>> quantum_cache_;
};

}  // namespace qrl
