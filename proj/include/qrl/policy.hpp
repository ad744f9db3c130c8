#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qrl/rng.hpp"

namespace qrl {

// Projective-simulation policy over whole action sequences. Each sequence
// carries a weight h >= 1; rewards increment the played sequence's weight by
// lambda and the induced distribution is the normalized weight vector.
class Policy {
public:
    Policy(std::size_t sequence_count, double lambda)
        : weights_(sequence_count, 1.0), weight_sum_(static_cast<double>(sequence_count)),
          lambda_(lambda) {
        if (sequence_count == 0) throw std::invalid_argument("no action sequences");
        if (lambda < 0.0) throw std::invalid_argument("lambda must be non-negative");
    }

    std::size_t sequence_count() const { return weights_.size(); }
    double lambda() const { return lambda_; }
    double weight(std::size_t id) const { return weights_.at(id); }
    const std::vector<double>& weights() const { return weights_; }

    std::vector<double> action_distribution() const {
        std::vector<double> p(weights_.size());
        for (std::size_t i = 0; i < weights_.size(); ++i) p[i] = weights_[i] / weight_sum_;
        return p;
    }

    // h(a) += lambda * r. The only mutation path.
    void update(std::size_t id, int reward) {
        if (id >= weights_.size()) throw std::out_of_range("invalid sequence id");
        if (reward != 0 && reward != 1) throw std::invalid_argument("reward must be 0 or 1");
        weights_[id] += lambda_ * reward;
        weight_sum_ += lambda_ * reward;
    }

    double winning_probability(std::span<const std::size_t> rewarded) const {
        double mass = 0.0;
        for (std::size_t id : rewarded) {
            if (id >= weights_.size()) throw std::out_of_range("invalid sequence id");
            mass += weights_[id];
        }
        return mass / weight_sum_;
    }

    std::size_t sample(RandomStream& rng) const {
        double u = rng.uniform() * weight_sum_;
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < weights_.size(); ++i) {
            acc += weights_[i];
            if (u < acc) return i;
        }
        return weights_.size() - 1;
    }

private:
    std::vector<double> weights_;
    double weight_sum_;
    double lambda_;
};

// Time-ordered record of the rewarded sequences an agent has found.
struct PolicyTrace {
    std::vector<std::pair<std::size_t, std::size_t>> history;  // (sequence id, epoch index)

    std::size_t rewards_found() const { return history.size(); }

    void record(std::size_t sequence, std::size_t epoch) {
        if (!history.empty() && epoch <= history.back().second)
            throw std::invalid_argument("epoch indices must be strictly increasing");
        history.emplace_back(sequence, epoch);
    }
};

// Smallest j with (1 + lambda*j) / (N + lambda*j) >= Q_L, for the environment
// with a single rewarded sequence.
inline std::size_t rewards_to_reach(std::size_t n_sequences, double lambda, double q_target) {
    if (q_target <= 0.0) return 0;
    if (q_target >= 1.0) throw std::invalid_argument("target winning probability unreachable");
    const double n = static_cast<double>(n_sequences);
    if (1.0 / n >= q_target) return 0;
    if (lambda <= 0.0) throw std::invalid_argument("policy never learns with lambda <= 0");
    std::size_t j = 0;
    while ((1.0 + lambda * j) / (n + lambda * j) < q_target) ++j;
    return j;
}

}  // namespace qrl
