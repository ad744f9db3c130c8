#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qrl/rng.hpp"

namespace qrl {

using Complex = std::complex<double>;

// Dense normalized amplitude vector over a fixed canonical basis.
struct StateVector {
    std::vector<Complex> amplitudes;

    std::size_t dimension() const { return amplitudes.size(); }

    double norm_squared() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return s;
    }

    void renormalize() {
        const double n = std::sqrt(norm_squared());
        if (n == 0.0) throw std::domain_error("cannot normalize zero state");
        for (auto& a : amplitudes) a /= n;
    }

    double probability(std::size_t id) const { return std::norm(amplitudes.at(id)); }
};

// |psi> = sum_a sqrt(p(a)) |a>, real non-negative amplitudes.
inline StateVector prepare_initial(const std::vector<double>& p) {
    double sum = 0.0;
    for (double x : p) {
        if (x < 0.0) throw std::invalid_argument("negative probability entry");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("probabilities do not sum to 1");
    StateVector psi;
    psi.amplitudes.reserve(p.size());
    for (double x : p) psi.amplitudes.emplace_back(std::sqrt(x), 0.0);
    psi.renormalize();
    return psi;
}

// Reflection about |ref>: returns 2<ref|state>|ref> - |state>.
inline StateVector reflect_about(const StateVector& reference, const StateVector& state) {
    if (reference.dimension() != state.dimension())
        throw std::invalid_argument("dimension mismatch in reflection");
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i)
        overlap += std::conj(reference.amplitudes[i]) * state.amplitudes[i];
    StateVector out;
    out.amplitudes.resize(state.dimension());
    for (std::size_t i = 0; i < state.dimension(); ++i)
        out.amplitudes[i] = 2.0 * overlap * reference.amplitudes[i] - state.amplitudes[i];
    return out;
}

// Computational-basis measurement; consumes one uniform draw.
inline std::size_t measure(const StateVector& state, RandomStream& rng) {
    const double u = rng.uniform() * state.norm_squared();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < state.dimension(); ++i) {
        acc += std::norm(state.amplitudes[i]);
        if (u < acc) return i;
    }
    return state.dimension() - 1;
}

}  // namespace qrl
