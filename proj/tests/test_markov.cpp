#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "tleak/io.hpp"
#include "tleak/markov.hpp"

#include <cmath>

using namespace tleak;

TEST_CASE("g_factor hits its closed-form values") {
    for (double theta : {0.25, 1.0, 7.0}) CHECK(g_factor(15, theta, 30) == 0.0);
    for (double theta : {0.25, 1.0, 7.0}) CHECK(g_factor(30, theta, 30) == 1.0);
    CHECK(g_factor(1, 1.0, 30) == doctest::Approx(28.0 / 30.0).epsilon(1e-12));
    CHECK_THROWS_AS(g_factor(0, 1.0, 30), std::domain_error);
    CHECK_THROWS_AS(g_factor(31, 1.0, 30), std::domain_error);
    CHECK_THROWS_AS(g_factor(5, 0.0, 30), std::domain_error);
    CHECK_THROWS_AS(g_factor(5, -2.0, 30), std::domain_error);
}

TEST_CASE("g_factor is monotone in the distance from the middle and has the right limits") {
    const int size = 30;
    for (double theta : {0.5, 1.0, 32.0}) {
        double prev = -1.0;
        // Walk states in increasing |2i - size| order: 15, 16, 17, ..., 30.
        for (int i = 15; i <= 30; ++i) {
            const double g = g_factor(i, theta, size);
            CHECK(g >= prev);
            prev = g;
        }
    }
    // theta -> infinity: everything except the endpoint state collapses to 0.
    for (int i = 1; i < size; ++i) CHECK(g_factor(i, std::pow(2.0, 10), size) < 1e-3);
    // theta -> 0: states with a nonzero base approach 1. At 2^-6 the middle
    // neighbours are still ~0.04 away, so the 1e-3 band is only reached
    // further down; check the trend at 2^-6 and the limit at 2^-12.
    for (int i = 1; i <= size; ++i) {
        if (i == 15) continue;  // base is exactly 0, g stays 0
        CHECK(g_factor(i, std::pow(2.0, -6), size) > 0.95);
        CHECK(g_factor(i, std::pow(2.0, -12), size) > 1.0 - 1e-3);
        CHECK(g_factor(i, std::pow(2.0, -12), size) >= g_factor(i, std::pow(2.0, -6), size));
    }
}

TEST_CASE("build_chain fills rows from the three ring targets") {
    const MarkovChain chain = build_chain(4, 1.0);

    // Row 1: not reversed, g = 1/2; mass 2/3 to state 2 and 1/6 to 4 and 3.
    CHECK(chain.p(1, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(chain.p(1, 4) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(chain.p(1, 3) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(chain.p(1, 1) == 0.0);

    // Row 2: reversed with g = 0; the raw row sums to 2 and renormalizes
    // to 1/3 on each target (3, 1, 4).
    CHECK(chain.p(2, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(chain.p(2, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(chain.p(2, 4) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(chain.p(2, 2) == 0.0);
}

TEST_CASE("build_chain output satisfies the stochasticity and stationarity invariants") {
    for (double theta : {1.0, 8.0, 32.0, 128.0}) {
        const MarkovChain chain = build_chain(30, theta);
        CAPTURE(theta);
        for (int i = 0; i < chain.size; ++i) {
            CHECK(std::abs(chain.transitions.row(i).sum() - 1.0) < 1e-9);
            CHECK(chain.transitions.row(i).minCoeff() >= 0.0);
            CHECK(chain.transitions.row(i).maxCoeff() <= 1.0);
        }
        const Vector residual = chain.transitions.transpose() * chain.steady_dist - chain.steady_dist;
        CHECK(residual.cwiseAbs().maxCoeff() < 1e-8);
        CHECK(std::abs(chain.steady_dist.sum() - 1.0) < 1e-9);
        CHECK(std::abs(chain.initial_dist.sum() - 1.0) < 1e-9);
    }
    CHECK_THROWS(build_chain(3, 1.0));
    CHECK_THROWS(build_chain(30, 0.0));
}

TEST_CASE("steady_state handles periodic and near-uniform chains") {
    // Cyclic permutation on 5 states: uniform is stationary and the damped
    // iteration seeded uniform lands on it immediately.
    const MarkovChain cyc = test::cyclic_chain(5);
    for (int i = 0; i < 5; ++i) CHECK(cyc.steady_dist[i] == doctest::Approx(0.2).epsilon(1e-12));

    // A ring where every row spreads 1/3 over its three targets is doubly
    // stochastic, so the stationary distribution is exactly uniform.
    const int n = 30;
    Matrix P = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        P(i, (i + 1) % n) = 1.0 / 3.0;
        P(i, (i + 3) % n) = 1.0 / 3.0;
        P(i, (i + n - 2) % n) = 1.0 / 3.0;
    }
    const Vector mu = steady_state(P);
    for (int i = 0; i < n; ++i) CHECK(mu[i] == doctest::Approx(1.0 / n).epsilon(1e-9));

    // The paper-scale chain converges well below the residual tolerance.
    const MarkovChain chain = build_chain(30, 32.0);
    const Vector res = chain.transitions.transpose() * chain.steady_dist - chain.steady_dist;
    CHECK(res.cwiseAbs().maxCoeff() < 1e-10);

    // A chain whose second eigenvalue sits at 1 - 3e-9 cannot reach the
    // residual tolerance within the iteration budget.
    Matrix slow(2, 2);
    slow << 1.0 - 1e-9, 1e-9, 2e-9, 1.0 - 2e-9;
    CHECK_THROWS_AS(steady_state(slow, 1e-12, 100'000), std::runtime_error);
}

TEST_CASE("matrix powers are memoized and stay row-stochastic") {
    const MarkovChain chain = build_chain(30, 32.0);
    MatrixPowerCache cache(chain);

    CHECK(matrix_power(cache, 0).isIdentity(0.0));
    CHECK(matrix_power(cache, 1) == chain.transitions);
    CHECK_THROWS(matrix_power(cache, -1));

    for (int k : {2, 5, 10}) {
        const Matrix& Pk = matrix_power(cache, k);
        for (int i = 0; i < chain.size; ++i)
            CHECK(std::abs(Pk.row(i).sum() - 1.0) < 1e-9);
    }
    // P^(a+b) = P^a P^b on sampled exponent pairs.
    for (auto [a, b] : {std::pair{1, 1}, {2, 3}, {4, 6}, {7, 5}}) {
        const Matrix lhs = matrix_power(cache, a + b);
        const Matrix rhs = matrix_power(cache, a) * matrix_power(cache, b);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("entropy matches hand values and rejects bad input") {
    CHECK(entropy(Vector::Constant(4, 0.25)) == 2.0);
    Vector point = Vector::Zero(6);
    point[3] = 1.0;
    CHECK(entropy(point) == 0.0);
    Vector half(2);
    half << 0.5, 0.5;
    CHECK(entropy(half) == 1.0);

    Vector negative(2);
    negative << 1.2, -0.2;
    CHECK_THROWS_AS(entropy(negative), std::domain_error);
    CHECK_THROWS_AS(entropy(Vector::Constant(4, 0.2)), std::domain_error);
}

TEST_CASE("sample_path is deterministic on deterministic chains") {
    Rng rng(7);
    const MarkovChain id = test::identity_chain(5);
    const auto constant = sample_path(id, 3, 5, rng);
    CHECK(constant == std::vector<int>{3, 3, 3, 3, 3, 3});

    const MarkovChain cyc = test::cyclic_chain(4);
    const auto around = sample_path(cyc, 1, 3, rng);
    CHECK(around == std::vector<int>{1, 2, 3, 4});

    CHECK_THROWS(sample_path(id, 0, 3, rng));
    CHECK_THROWS(sample_path(id, 6, 3, rng));
}

TEST_CASE("long-run state frequencies match the stationary distribution") {
    const MarkovChain chain = build_chain(30, 1.0);
    Rng rng(12345);
    const auto path = sample_path(chain, 1, 1'000'000, rng);

    Vector freq = Vector::Zero(chain.size);
    for (int s : path) freq[s - 1] += 1.0;
    freq /= static_cast<double>(path.size());

    const double tv = 0.5 * (freq - chain.steady_dist).cwiseAbs().sum();
    CHECK(tv < 0.01);
}

TEST_CASE("empirical transition frequencies converge to the rows") {
    const MarkovChain chain = build_chain(4, 1.0);
    Rng rng(99);
    const long per_row = 100'000;
    for (int s = 1; s <= 4; ++s) {
        Vector counts = Vector::Zero(4);
        for (long k = 0; k < per_row; ++k)
            counts[sample_discrete(chain.transitions.row(s - 1).transpose(), rng) - 1] += 1.0;
        // Chi-square statistic over the support; 3 dof, so < 30 is a very
        // loose bound that still catches a wrong row.
        double chi2 = 0.0;
        for (int j = 0; j < 4; ++j) {
            const double expected = per_row * chain.p(s, j + 1);
            if (expected > 0.0)
                chi2 += (counts[j] - expected) * (counts[j] - expected) / expected;
            else
                CHECK(counts[j] == 0.0);
        }
        CAPTURE(s);
        CHECK(chi2 < 30.0);
    }
}

TEST_CASE("chains round-trip through JSON") {
    const MarkovChain chain = build_chain(12, 8.0);
    const auto text = to_json(chain).dump();
    const MarkovChain back = chain_from_json(nlohmann::json::parse(text));
    CHECK(back.size == chain.size);
    CHECK(back.transitions == chain.transitions);
    CHECK(back.initial_dist == chain.initial_dist);
    CHECK(back.steady_dist == chain.steady_dist);
}
