#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrl/statevector.hpp"

namespace qrl {

// Upper bound on enumerable basis sizes (dense simulation guard).
inline constexpr std::size_t kMaxBasisSize = std::size_t{1} << 24;

// Deterministic strictly-epochal environment: fixed epoch length L, action
// alphabet of size A, a total time-independent transition map, and a binary
// reward that depends only on the full action sequence. Sequences are
// identified by their lexicographic index over action symbols.
class DseEnvironment {
public:
    using Transition = std::function<int(int percept, int action)>;
    using RewardPredicate = std::function<int(std::span<const int> sequence)>;

    DseEnvironment(std::size_t epoch_length, std::size_t alphabet_size, int initial_percept,
                   Transition transition, RewardPredicate reward, std::string name)
        : epoch_length_(epoch_length), alphabet_size_(alphabet_size),
          initial_percept_(initial_percept), transition_(std::move(transition)),
          reward_(std::move(reward)), name_(std::move(name)) {
        if (epoch_length_ == 0 || alphabet_size_ == 0)
            throw std::invalid_argument("epoch length and alphabet must be positive");
        std::size_t n = 1;
        for (std::size_t i = 0; i < epoch_length_; ++i) {
            if (n > kMaxBasisSize / alphabet_size_)
                throw std::invalid_argument("sequence basis exceeds enumeration guard");
            n *= alphabet_size_;
        }
        sequence_count_ = n;
    }

    std::size_t epoch_length() const { return epoch_length_; }
    std::size_t alphabet_size() const { return alphabet_size_; }
    std::size_t sequence_count() const { return sequence_count_; }
    int initial_percept() const { return initial_percept_; }
    const std::string& name() const { return name_; }

    // Lexicographic id <-> action-symbol sequence (first action most significant).
    std::vector<int> decode(std::size_t id) const {
        if (id >= sequence_count_) throw std::out_of_range("invalid sequence id");
        std::vector<int> seq(epoch_length_);
        for (std::size_t i = epoch_length_; i-- > 0;) {
            seq[i] = static_cast<int>(id % alphabet_size_);
            id /= alphabet_size_;
        }
        return seq;
    }

    std::size_t encode(std::span<const int> sequence) const {
        validate(sequence);
        std::size_t id = 0;
        for (int a : sequence) id = id * alphabet_size_ + static_cast<std::size_t>(a);
        return id;
    }

    int reward(std::span<const int> sequence) const {
        validate(sequence);
        return reward_(sequence) ? 1 : 0;
    }

    int reward(std::size_t id) const {
        const auto seq = decode(id);
        return reward_(seq) ? 1 : 0;
    }

    // One classical epoch: iterate the transition map from s0 and read the
    // final reward bit. Pure.
    std::pair<std::vector<int>, int> play_classical_epoch(std::span<const int> sequence) const {
        validate(sequence);
        std::vector<int> percepts;
        percepts.reserve(epoch_length_);
        int s = initial_percept_;
        for (int a : sequence) {
            s = transition_(s, a);
            percepts.push_back(s);
        }
        return {std::move(percepts), reward(sequence)};
    }

    std::pair<std::vector<int>, int> play_classical_epoch(std::size_t id) const {
        const auto seq = decode(id);
        return play_classical_epoch(seq);
    }

private:
    void validate(std::span<const int> sequence) const {
        if (sequence.size() != epoch_length_)
            throw std::invalid_argument("sequence length does not match epoch length");
        for (int a : sequence)
            if (a < 0 || static_cast<std::size_t>(a) >= alphabet_size_)
                throw std::invalid_argument("action symbol out of alphabet");
    }

    std::size_t epoch_length_;
    std::size_t alphabet_size_;
    int initial_percept_;
    Transition transition_;
    RewardPredicate reward_;
    std::string name_;
    std::size_t sequence_count_;
};

// Single rewarded sequence out of n; one step, alphabet of size n.
inline DseEnvironment make_one_winner(std::size_t n, std::size_t winner) {
    if (winner >= n) throw std::invalid_argument("winner id out of range");
    return DseEnvironment(
        1, n, 0, [](int, int a) { return a; },
        [winner](std::span<const int> seq) {
            return static_cast<std::size_t>(seq[0]) == winner ? 1 : 0;
        },
        "one_winner");
}

// Grid navigation with wall-clamped moves; percept = cell index, reward 1
// iff the final cell is the goal. Actions: 0 up, 1 down, 2 left, 3 right.
inline DseEnvironment make_grid_world(int width, int height, int start_x, int start_y,
                                      int goal_x, int goal_y, std::size_t steps) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("grid must be non-empty");
    if (start_x < 0 || start_x >= width || start_y < 0 || start_y >= height)
        throw std::invalid_argument("start cell outside grid");
    if (goal_x < 0 || goal_x >= width || goal_y < 0 || goal_y >= height)
        throw std::invalid_argument("goal cell outside grid");
    const int goal = goal_y * width + goal_x;
    auto transition = [width, height](int percept, int action) {
        int x = percept % width;
        int y = percept / width;
        switch (action) {
            case 0: y = std::max(0, y - 1); break;
            case 1: y = std::min(height - 1, y + 1); break;
            case 2: x = std::max(0, x - 1); break;
            case 3: x = std::min(width - 1, x + 1); break;
            default: break;
        }
        return y * width + x;
    };
    auto reward = [width, height, start_x, start_y, goal, transition](std::span<const int> seq) {
        int s = start_y * width + start_x;
        for (int a : seq) s = transition(s, a);
        return s == goal ? 1 : 0;
    };
    return DseEnvironment(steps, 4, start_y * width + start_x, transition, reward, "grid_world");
}

// Exact rewarded set by exhaustive scan.
inline std::vector<std::size_t> enumerate_rewarded(const DseEnvironment& env) {
    if (env.sequence_count() > kMaxBasisSize)
        throw std::invalid_argument("sequence basis exceeds enumeration guard");
    std::vector<std::size_t> rewarded;
    for (std::size_t id = 0; id < env.sequence_count(); ++id)
        if (env.play_classical_epoch(id).second) rewarded.push_back(id);
    return rewarded;
}

// Oracular environment variant: negates the amplitude of every rewarded
// sequence, acting on a state over the action basis.
inline StateVector oracle_phase(const DseEnvironment& env, StateVector state) {
    if (state.dimension() != env.sequence_count())
        throw std::invalid_argument("state dimension does not match sequence basis");
    for (std::size_t id = 0; id < state.dimension(); ++id)
        if (env.reward(id)) state.amplitudes[id] = -state.amplitudes[id];
    return state;
}

// Same phase flip with a precomputed rewarded set; avoids re-evaluating the
// reward predicate inside tight amplification loops.
inline StateVector oracle_phase(std::span<const std::size_t> rewarded, StateVector state) {
    for (std::size_t id : rewarded) {
        if (id >= state.dimension()) throw std::out_of_range("rewarded id outside basis");
        state.amplitudes[id] = -state.amplitudes[id];
    }
    return state;
}

// Reward-register variant: X on the reward qubit of rewarded action
// subspaces. Basis order is |a>|r> with the reward bit least significant.
inline StateVector reward_register_unitary(const DseEnvironment& env, StateVector state) {
    if (state.dimension() != 2 * env.sequence_count())
        throw std::invalid_argument("state dimension does not match action x reward basis");
    for (std::size_t id = 0; id < env.sequence_count(); ++id)
        if (env.reward(id)) std::swap(state.amplitudes[2 * id], state.amplitudes[2 * id + 1]);
    return state;
}

}  // namespace qrl
