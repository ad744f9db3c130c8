#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qrl/amplitude.hpp"
#include "qrl/environment.hpp"

using qrl::StateVector;

TEST_CASE("prepare_initial takes square roots of probabilities") {
    std::vector<double> point(8, 0.0);
    point[3] = 1.0;
    const auto basis = qrl::prepare_initial(point);
    CHECK(basis.amplitudes[3].real() == Catch::Approx(1.0).margin(1e-15));
    CHECK(basis.probability(3) == Catch::Approx(1.0).margin(1e-15));

    const auto uniform = qrl::prepare_initial(std::vector<double>(100, 0.01));
    for (const auto& a : uniform.amplitudes)
        CHECK(a.real() == Catch::Approx(0.1).margin(1e-13));

    const auto skew = qrl::prepare_initial({0.25, 0.75});
    CHECK(skew.amplitudes[0].real() == Catch::Approx(0.5).margin(1e-15));
    CHECK(skew.amplitudes[1].real() == Catch::Approx(std::sqrt(0.75)).margin(1e-15));

    CHECK_THROWS_AS(qrl::prepare_initial({0.5, 0.6}), std::invalid_argument);
    CHECK_THROWS_AS(qrl::prepare_initial({-0.1, 1.1}), std::invalid_argument);
}

TEST_CASE("reflect_about fixes the axis and negates the orthogonal complement") {
    const auto ref = qrl::prepare_initial(std::vector<double>(4, 0.25));
    // Reflecting the reference itself is the identity on it.
    const auto same = qrl::reflect_about(ref, ref);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(same.amplitudes[i] - ref.amplitudes[i]) < 1e-14);

    // An orthogonal state flips sign.
    StateVector orth{{0.5, -0.5, 0.5, -0.5}};
    const auto flipped = qrl::reflect_about(ref, orth);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(flipped.amplitudes[i] + orth.amplitudes[i]) < 1e-14);

    // Explicit matrix check: 2|u><u| - I applied to e0 with u uniform gives
    // (2/4 - 1, 2/4, 2/4, 2/4) = (-0.5, 0.5, 0.5, 0.5).
    StateVector e0{{1.0, 0.0, 0.0, 0.0}};
    const auto image = qrl::reflect_about(ref, e0);
    CHECK(image.amplitudes[0].real() == Catch::Approx(-0.5).margin(1e-14));
    CHECK(image.amplitudes[1].real() == Catch::Approx(0.5).margin(1e-14));
    CHECK(image.amplitudes[2].real() == Catch::Approx(0.5).margin(1e-14));
    CHECK(image.amplitudes[3].real() == Catch::Approx(0.5).margin(1e-14));
    CHECK(image.norm_squared() == Catch::Approx(1.0).margin(1e-13));

    StateVector wrong{{1.0, 0.0}};
    CHECK_THROWS_AS(qrl::reflect_about(ref, wrong), std::invalid_argument);
}

TEST_CASE("success probability closed form") {
    CHECK(qrl::success_probability(0.37, 0) == Catch::Approx(0.37).margin(1e-15));
    // q = 0.01, k = 1: sin^2(3 asin 0.1) = 0.087616.
    CHECK(qrl::success_probability(0.01, 1) == Catch::Approx(0.087616).margin(1e-12));
    // q = 0.25, k = 1: 3 * (pi/6) = pi/2, certainty.
    CHECK(qrl::success_probability(0.25, 1) == Catch::Approx(1.0).margin(1e-14));
    CHECK(qrl::success_probability(0.0, 5) == 0.0);
    CHECK(qrl::success_probability(1.0, 3) == Catch::Approx(1.0).margin(1e-12));
    CHECK_THROWS_AS(qrl::success_probability(-0.1, 0), std::invalid_argument);
    CHECK_THROWS_AS(qrl::success_probability(1.1, 0), std::invalid_argument);
}

TEST_CASE("optimal iteration count") {
    // q = 0.01: brute force over the first oscillation puts the best count
    // at 7 (later peaks re-approach 1 but burn proportionally more epochs).
    {
        std::size_t best_k = 0;
        double best_p = 0.0;
        for (std::size_t k = 0; k <= 10; ++k) {
            const double p = qrl::success_probability(0.01, k);
            if (p > best_p) {
                best_p = p;
                best_k = k;
            }
        }
        CHECK(best_k == 7);
        const auto plan = qrl::optimal_iterations(0.01);
        CHECK(plan.k == 7);
        CHECK_FALSE(plan.capped_by_coherence);
    }

    const auto capped = qrl::optimal_iterations(0.01, 1);
    CHECK(capped.k == 1);
    CHECK(capped.capped_by_coherence);

    // Above the crossover a single iterate overshoots; fall back to k = 0.
    const auto high = qrl::optimal_iterations(0.5);
    CHECK(high.k == 0);
    const auto q1 = qrl::optimal_iterations(0.25);
    CHECK(q1.k == 1);  // certainty at one iterate

    CHECK_THROWS_AS(qrl::optimal_iterations(0.0), std::domain_error);
    CHECK_THROWS_AS(qrl::optimal_iterations(-1.0), std::domain_error);
}

TEST_CASE("statevector amplification matches the trigonometric law") {
    const std::size_t n = 64;
    const std::size_t winner = 17;
    auto env = qrl::make_one_winner(n, winner);
    for (double q : {0.001, 0.01, 0.1, 0.25, 0.396}) {
        // Winner holds mass q, the rest is spread evenly: this is exactly the
        // two-dimensional Grover geometry with angle asin(sqrt q).
        std::vector<double> probs(n, (1.0 - q) / static_cast<double>(n - 1));
        probs[winner] = q;
        const auto ref = qrl::prepare_initial(probs);
        StateVector state = ref;
        for (std::size_t k = 0; k <= 10; ++k) {
            CHECK(state.probability(winner) ==
                  Catch::Approx(qrl::success_probability(q, k)).margin(1e-12));
            // All non-winner amplitudes stay equal to each other.
            const auto& a = state.amplitudes;
            for (std::size_t i = 0; i < n; ++i)
                if (i != winner) CHECK(std::abs(a[i] - a[(winner + 1) % n]) < 1e-12);
            CHECK(state.norm_squared() == Catch::Approx(1.0).margin(1e-11));
            state = qrl::grover_iterate(env, ref, state);
        }
    }
}

TEST_CASE("measurement statistics and determinism") {
    StateVector point{{0.0, 0.0, 1.0, 0.0}};
    qrl::RandomStream rng(1);
    for (int i = 0; i < 20; ++i) CHECK(qrl::measure(point, rng) == 2);

    // One amplified round at q = 0.01 measured many times.
    const std::size_t n = 100;
    auto env = qrl::make_one_winner(n, 0);
    const auto ref = qrl::prepare_initial(std::vector<double>(n, 0.01));
    const auto amped = qrl::grover_iterate(env, ref, ref);
    qrl::RandomStream mc(777);
    const std::size_t shots = 1000000;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < shots; ++i)
        if (qrl::measure(amped, mc) == 0) ++hits;
    const double freq = static_cast<double>(hits) / static_cast<double>(shots);
    CHECK(std::abs(freq - 0.087616) < 0.001);

    qrl::RandomStream a(5), b(5);
    for (int i = 0; i < 100; ++i) CHECK(qrl::measure(amped, a) == qrl::measure(amped, b));
}
