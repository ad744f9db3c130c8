#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qrl/statevector.hpp"

namespace qrl {

using Mat2 = std::array<std::array<Complex, 2>, 2>;
using Mat4 = std::array<std::array<Complex, 4>, 4>;

inline double wrap_angle(double a) {
    const double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    return a < 0.0 ? a + two_pi : a;
}

// One tunable beam splitter on an adjacent mode pair (mode, mode+1) of the
// 4-mode line; theta is the internal and phi the external phase.
struct MziSetting {
    std::size_t mode = 0;  // lower index of the pair
    double theta = 0.0;
    double phi = 0.0;
};

struct MziMesh {
    std::vector<MziSetting> settings;  // applied left to right
};

// U(theta, phi) = [ e^{i phi} sin(t/2)   e^{i phi} cos(t/2) ]
//                 [        cos(t/2)            -sin(t/2)    ]
inline Mat2 mzi_unitary(double theta, double phi) {
    theta = wrap_angle(theta);
    phi = wrap_angle(phi);
    const double s = std::sin(theta / 2.0);
    const double c = std::cos(theta / 2.0);
    const Complex ph = std::polar(1.0, phi);
    return {{{ph * s, ph * c}, {Complex(c), Complex(-s)}}};
}

inline Mat4 identity4() {
    Mat4 m{};
    for (std::size_t i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat4 matmul(const Mat4& a, const Mat4& b) {
    Mat4 out{};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t j = 0; j < 4; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

inline Mat4 embed(const MziSetting& setting) {
    if (setting.mode > 2) throw std::invalid_argument("mode pair must be adjacent on 4 modes");
    const Mat2 u = mzi_unitary(setting.theta, setting.phi);
    Mat4 m = identity4();
    const std::size_t i = setting.mode;
    m[i][i] = u[0][0];
    m[i][i + 1] = u[0][1];
    m[i + 1][i] = u[1][0];
    m[i + 1][i + 1] = u[1][1];
    return m;
}

// Composite transfer matrix; settings act on the state in list order, so the
// last setting is the leftmost factor.
inline Mat4 compose_mesh(const MziMesh& mesh) {
    Mat4 m = identity4();
    for (const auto& s : mesh.settings) m = matmul(embed(s), m);
    return m;
}

inline double max_unitarity_defect(const Mat4& m) {
    double defect = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            Complex dot = 0.0;
            for (std::size_t k = 0; k < 4; ++k) dot += std::conj(m[k][i]) * m[k][j];
            defect = std::max(defect, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    return defect;
}

// Inversion of the single-MZI family. The family covers exactly the 2x2
// unitaries whose second row is real up to a global phase; anything else is
// reported unrepresentable with the residual against the best candidate.
struct MziSolve {
    bool representable = false;
    double theta = 0.0;
    double phi = 0.0;
    double residual = 0.0;
};

inline MziSolve solve_mzi(const Mat2& target) {
    double defect = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Complex dot = std::conj(target[0][i]) * target[0][j] +
                          std::conj(target[1][i]) * target[1][j];
            defect = std::max(defect, std::abs(dot - (i == j ? 1.0 : 0.0)));
        }
    if (defect > 1e-10) throw std::invalid_argument("solve_mzi target is not unitary");

    // Pick the global phase that makes -T[1][1] a non-negative real (= sin).
    const double s = std::abs(target[1][1]);
    const Complex gamma = s > 1e-14 ? -s / target[1][1]
                                    : std::abs(target[1][0]) / target[1][0];
    const double c = (gamma * target[1][0]).real();
    MziSolve out;
    out.theta = wrap_angle(2.0 * std::atan2(s, c));
    out.phi = s > 1e-14 ? wrap_angle(std::arg(gamma * target[0][0]))
                        : wrap_angle(std::arg(gamma * target[0][1]));

    const Mat2 forward = mzi_unitary(out.theta, out.phi);
    double residual = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            residual = std::max(residual, std::abs(forward[i][j] - gamma * target[i][j]));
    out.residual = residual;
    out.representable = residual <= 1e-10;
    return out;
}

namespace detail {

// Left-multiply rows (r-1, r) of a by the adjoint of the embedded MZI.
inline void apply_block_adjoint(Mat4& a, const MziSetting& setting) {
    const Mat2 u = mzi_unitary(setting.theta, setting.phi);
    const std::size_t i = setting.mode;
    for (std::size_t j = 0; j < 4; ++j) {
        const Complex top = a[i][j];
        const Complex bot = a[i + 1][j];
        a[i][j] = std::conj(u[0][0]) * top + std::conj(u[1][0]) * bot;
        a[i + 1][j] = std::conj(u[0][1]) * top + std::conj(u[1][1]) * bot;
    }
}

// MZI on pair (r-1, r) whose adjoint nulls a[r][col] when applied from the
// left. Always solvable: the adjoint's bottom row is (e^{-i phi} cos, -sin).
inline MziSetting nulling_block(const Mat4& a, std::size_t r, std::size_t col) {
    MziSetting s;
    s.mode = r - 1;
    const Complex lo = a[r][col];
    const Complex hi = a[r - 1][col];
    if (std::abs(hi) < 1e-14) {
        // Plain crossover moves the nonzero entry up.
        s.theta = 0.0;
        s.phi = 0.0;
        return s;
    }
    const Complex ratio = hi / lo;
    s.phi = wrap_angle(std::arg(ratio));
    s.theta = wrap_angle(2.0 * std::atan(std::abs(ratio)));
    return s;
}

// Two crossover MZIs on one pair realize diag(e^{i b}, e^{i a}).
inline void append_phase_pair(MziMesh& mesh, std::size_t mode, double top_phase,
                              double bottom_phase) {
    mesh.settings.push_back({mode, 0.0, wrap_angle(bottom_phase)});
    mesh.settings.push_back({mode, 0.0, wrap_angle(top_phase)});
}

}  // namespace detail

// Decomposes any 4x4 unitary into a nearest-neighbor MZI mesh, exact up to a
// global phase. Reck-style nulling reduces u to a phase diagonal, which is
// realized by crossover pairs.
inline MziMesh decompose_unitary(const Mat4& u) {
    if (max_unitarity_defect(u) > 1e-10)
        throw std::invalid_argument("decomposition target is not unitary");
    Mat4 a = u;
    std::vector<MziSetting> blocks;  // B_1 .. B_m with u = B_1 ... B_m D
    for (std::size_t col = 0; col < 3; ++col) {
        for (std::size_t r = 3; r > col; --r) {
            if (std::abs(a[r][col]) < 1e-14) continue;
            MziSetting s = detail::nulling_block(a, r, col);
            detail::apply_block_adjoint(a, s);
            blocks.push_back(s);
        }
    }
    // Residual diagonal, relative to the first mode's phase.
    std::array<double, 4> delta{};
    for (std::size_t i = 0; i < 4; ++i) delta[i] = std::arg(a[i][i] / a[0][0]);

    MziMesh mesh;
    if (std::abs(delta[1]) > 1e-13 || std::abs(delta[0]) > 1e-13)
        detail::append_phase_pair(mesh, 0, delta[0], delta[1]);
    if (std::abs(delta[2]) > 1e-13 || std::abs(delta[3]) > 1e-13)
        detail::append_phase_pair(mesh, 2, delta[2], delta[3]);
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) mesh.settings.push_back(*it);
    return mesh;
}

// Bijection between the 4 modes and the two-qubit basis |a r>, plus the
// detector assignment. Mode order (|0a0r>, |0a1r>, |1a1r>, |1a0r>) makes the
// reward flip on the action-1 subspace a single adjacent crossover.
struct ModeEncoding {
    // mode_of[2*action + reward]
    std::array<std::size_t, 4> mode_of = {0, 1, 3, 2};

    std::size_t input_mode() const { return mode_of[0]; }

    // Classical epoch detectors: D1 on reward-0, D2 on reward-1 modes.
    std::array<std::size_t, 2> d1_modes() const { return {mode_of[0], mode_of[2]}; }
    std::array<std::size_t, 2> d2_modes() const { return {mode_of[1], mode_of[3]}; }
    // Quantum epoch: D3 on action-1 modes.
    std::array<std::size_t, 2> d3_modes() const { return {mode_of[2], mode_of[3]}; }
};

enum class EpochCircuit { classical, quantum };

// The abstract epoch unitary in the mode basis: state preparation, the
// environment's reward flip, and (for the quantum epoch) the reward-register
// basis change, its reversal, and the reflection about the prepared state.
inline std::vector<Mat4> abstract_epoch_stages(EpochCircuit kind, double xi,
                                               const ModeEncoding& enc) {
    if (!(xi > 0.0 && xi < std::numbers::pi / 2.0))
        throw std::invalid_argument("xi must lie in (0, pi/2)");
    const double cx = std::cos(xi);
    const double sx = std::sin(xi);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

    // 2x2 building blocks in qubit index order (basis b = 2*action + reward).
    const Mat2 prep = {{{Complex(cx), Complex(-sx)}, {Complex(sx), Complex(cx)}}};  // action
    const Mat2 hadj = {{{Complex(inv_sqrt2), Complex(inv_sqrt2)},
                        {Complex(-inv_sqrt2), Complex(inv_sqrt2)}}};  // reward, |0> -> |->
    const Mat2 refl = {{{Complex(2.0 * cx * cx - 1.0), Complex(2.0 * cx * sx)},
                        {Complex(2.0 * sx * cx), Complex(2.0 * sx * sx - 1.0)}}};  // action

    auto on_action = [](const Mat2& g) {
        Mat4 m{};
        for (std::size_t a1 = 0; a1 < 2; ++a1)
            for (std::size_t a0 = 0; a0 < 2; ++a0)
                for (std::size_t r = 0; r < 2; ++r) m[2 * a1 + r][2 * a0 + r] = g[a1][a0];
        return m;
    };
    auto on_reward = [](const Mat2& g) {
        Mat4 m{};
        for (std::size_t r1 = 0; r1 < 2; ++r1)
            for (std::size_t r0 = 0; r0 < 2; ++r0)
                for (std::size_t a = 0; a < 2; ++a) m[2 * a + r1][2 * a + r0] = g[r1][r0];
        return m;
    };
    Mat4 reward_flip = identity4();  // X on reward iff action = 1
    reward_flip[2][2] = reward_flip[3][3] = 0.0;
    reward_flip[2][3] = reward_flip[3][2] = 1.0;

    std::vector<Mat4> stages;  // in application order
    if (kind == EpochCircuit::classical) {
        stages = {on_action(prep), reward_flip};
    } else {
        Mat2 hdag{};  // adjoint of the |0> -> |-> rotation
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) hdag[i][j] = std::conj(hadj[j][i]);
        stages = {on_action(prep), on_reward(hadj), reward_flip, on_reward(hdag),
                  on_action(refl)};
    }

    // Relabel qubit basis indices to mesh modes.
    for (Mat4& u : stages) {
        Mat4 m{};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m[enc.mode_of[i]][enc.mode_of[j]] = u[i][j];
        u = m;
    }
    return stages;
}

inline Mat4 abstract_epoch_unitary(EpochCircuit kind, double xi, const ModeEncoding& enc) {
    Mat4 u = identity4();
    for (const Mat4& stage : abstract_epoch_stages(kind, xi, enc)) u = matmul(stage, u);
    return u;
}

inline double global_phase_residual(const Mat4& got, const Mat4& want) {
    std::size_t bi = 0, bj = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (std::abs(want[i][j]) > best) {
                best = std::abs(want[i][j]);
                bi = i;
                bj = j;
            }
    const Complex phase = got[bi][bj] / want[bi][bj];
    double residual = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            residual = std::max(residual, std::abs(got[i][j] - phase * want[i][j]));
    return residual;
}

// Compiles the classical or quantum epoch circuit onto the mesh and verifies
// the composed transfer matrix against the abstract unitary. Each circuit
// stage (state preparation, basis changes, reward flip, reflection) is
// decomposed on its own and the stage meshes are concatenated, preserving
// the layered layout the photon actually traverses — this is what makes the
// visibility model meaningful, since coherence between stages then passes
// through physical MZIs.
inline MziMesh compile_epoch_circuit(EpochCircuit kind, double xi,
                                     const ModeEncoding& enc = ModeEncoding{}) {
    const Mat4 target = abstract_epoch_unitary(kind, xi, enc);
    MziMesh mesh;
    for (const Mat4& stage : abstract_epoch_stages(kind, xi, enc)) {
        const MziMesh part = decompose_unitary(stage);
        mesh.settings.insert(mesh.settings.end(), part.settings.begin(), part.settings.end());
    }
    const double residual = global_phase_residual(compose_mesh(mesh), target);
    if (residual > 1e-9) throw std::runtime_error("mesh compilation residual too large");
    return mesh;
}

// Output distribution for a single photon in `input_mode`, with each MZI's
// interference contrast scaled by V: the pair coherence entering every MZI
// is damped by V in a density-matrix propagation. V = 1 is the ideal mesh.
inline std::array<double, 4> simulate_with_visibility(const MziMesh& mesh,
                                                      std::size_t input_mode, double visibility) {
    if (input_mode > 3) throw std::invalid_argument("input mode out of range");
    if (visibility < 0.0 || visibility > 1.0)
        throw std::invalid_argument("visibility must lie in [0,1]");
    Mat4 rho{};
    rho[input_mode][input_mode] = 1.0;
    for (const auto& s : mesh.settings) {
        rho[s.mode][s.mode + 1] *= visibility;
        rho[s.mode + 1][s.mode] *= visibility;
        const Mat4 e = embed(s);
        Mat4 edag{};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) edag[i][j] = std::conj(e[j][i]);
        rho = matmul(matmul(e, rho), edag);
    }
    std::array<double, 4> probs{};
    for (std::size_t i = 0; i < 4; ++i) probs[i] = rho[i][i].real();
    return probs;
}

}  // namespace qrl
