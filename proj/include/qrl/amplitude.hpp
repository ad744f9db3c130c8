#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qrl/environment.hpp"
#include "qrl/statevector.hpp"

namespace qrl {

inline constexpr std::size_t kUnboundedIterations = std::numeric_limits<std::size_t>::max();

// Number of Grover iterations chosen for one amplification round.
struct IterationPlan {
    std::size_t k = 0;
    bool capped_by_coherence = false;
};

// One Grover iterate: oracle phase flip followed by reflection about the
// prepared reference state.
inline StateVector grover_iterate(const DseEnvironment& env, const StateVector& reference,
                                  const StateVector& state) {
    return reflect_about(reference, oracle_phase(env, state));
}

// sin^2((2k+1) asin sqrt(q)), the success probability after k iterates.
inline double success_probability(double q, std::size_t k) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("q outside [0,1]");
    const double xi = std::asin(std::sqrt(q));
    const double s = std::sin(static_cast<double>(2 * k + 1) * xi);
    const double p = s * s;
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

// k* = round(pi/(4 xi) - 1/2) floored at 0, then capped at n_max. Falls back
// to k = 0 (plain classical sampling) whenever the capped iterate count would
// not beat direct sampling.
inline IterationPlan optimal_iterations(double q, std::size_t n_max = kUnboundedIterations) {
    if (q <= 0.0) throw std::domain_error("no rewarded sequence reachable");
    if (q >= 1.0) return {0, false};
    const double xi = std::asin(std::sqrt(q));
    const double raw = std::round(std::numbers::pi / (4.0 * xi) - 0.5);
    std::size_t k = raw <= 0.0 ? 0 : static_cast<std::size_t>(raw);
    IterationPlan plan;
    if (k > n_max) {
        plan.capped_by_coherence = true;
        k = n_max;
    }
    if (success_probability(q, k) <= q) k = 0;
    plan.k = k;
    return plan;
}

}  // namespace qrl
