#include "tleak/markov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tleak {

double g_factor(int i, double theta, int size) {
    if (i < 1 || i > size)
        throw std::domain_error("g_factor: state index " + std::to_string(i) +
                                " outside 1.." + std::to_string(size));
    if (theta <= 0.0) throw std::domain_error("g_factor: theta must be positive");
    const double base = std::abs(2.0 * i - size) / static_cast<double>(size);
    return std::pow(base, theta);
}

Vector steady_state(const Matrix& transitions, double tol, long max_iters) {
    const auto n = transitions.rows();
    Vector mu = Vector::Constant(n, 1.0 / static_cast<double>(n));
    for (long it = 0; it < max_iters; ++it) {
        Vector next = transitions.transpose() * mu;
        if ((next - mu).cwiseAbs().maxCoeff() < tol) {
            next /= next.sum();
            return next;
        }
        // Averaging consecutive iterates damps the period-2 oscillation of
        // nearly periodic chains without moving the fixed point.
        mu = 0.5 * (mu + next);
    }
    throw std::runtime_error("steady_state: power iteration did not converge "
                             "(periodic or reducible transition matrix?)");
}

namespace {

// 1-based ring arithmetic: shift may be negative.
int wrap(int i, int shift, int size) {
    int z = (i - 1 + shift) % size;
    if (z < 0) z += size;
    return z + 1;
}

}  // namespace

MarkovChain build_chain(int size, double theta) {
    if (size < 4) throw std::invalid_argument("build_chain: size must be >= 4");
    if (theta <= 0.0) throw std::invalid_argument("build_chain: theta must be positive");

    Matrix P = Matrix::Zero(size, size);
    for (int i = 1; i <= size; ++i) {
        const double g = g_factor(i, theta, size);
        const bool reversed = (i % 4 == 2);
        const double to_next = reversed ? (2.0 - 2.0 * g) / 3.0 : (1.0 + 2.0 * g) / 3.0;
        const double to_side = reversed ? (2.0 + g) / 3.0 : (1.0 - g) / 3.0;
        P(i - 1, wrap(i, 1, size) - 1) = to_next;
        P(i - 1, wrap(i, 3, size) - 1) = to_side;
        P(i - 1, wrap(i, -2, size) - 1) = to_side;

        const double raw = P.row(i - 1).sum();
        if (raw <= 0.0)
            throw std::runtime_error("build_chain: row " + std::to_string(i) +
                                     " has non-positive raw sum");
        P.row(i - 1) /= raw;
    }

    MarkovChain chain;
    chain.size = size;
    chain.transitions = std::move(P);
    chain.initial_dist = Vector::Constant(size, 1.0 / static_cast<double>(size));
    chain.steady_dist = steady_state(chain.transitions);
    return chain;
}

double entropy(const Vector& dist) {
    double sum = 0.0;
    double h = 0.0;
    for (Eigen::Index i = 0; i < dist.size(); ++i) {
        const double p = dist[i];
        if (p < 0.0) throw std::domain_error("entropy: negative probability entry");
        sum += p;
        if (p > 0.0) h -= p * std::log2(p);
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw std::domain_error("entropy: distribution sums to " + std::to_string(sum));
    return h;
}

MatrixPowerCache::MatrixPowerCache(Matrix base) : base_(std::move(base)) {
    powers_.emplace(0, Matrix::Identity(base_.rows(), base_.cols()));
    powers_.emplace(1, base_);
}

const Matrix& MatrixPowerCache::power(int k) const {
    if (k < 0) throw std::invalid_argument("matrix_power: negative exponent");
    std::lock_guard lock(mutex_);
    auto it = powers_.lower_bound(k);
    if (it != powers_.end() && it->first == k) return it->second;
    // Extend from the largest cached exponent below k.
    --it;
    int have = it->first;
    Matrix acc = it->second;
    while (have < k) {
        acc = acc * base_;
        ++have;
        it = powers_.emplace_hint(powers_.end(), have, acc);
    }
    return it->second;
}

int sample_discrete(const Vector& dist, Rng& rng) {
    const double u = canonical(rng);
    double cum = 0.0;
    for (Eigen::Index i = 0; i < dist.size(); ++i) {
        cum += dist[i];
        if (u < cum) return static_cast<int>(i) + 1;
    }
    return static_cast<int>(dist.size());  // guard against cum < 1 from rounding
}

std::vector<int> sample_path(const MarkovChain& chain, int start_state, int n_steps, Rng& rng) {
    if (start_state < 1 || start_state > chain.size)
        throw std::invalid_argument("sample_path: start state out of range");
    std::vector<int> path;
    path.reserve(static_cast<size_t>(n_steps) + 1);
    path.push_back(start_state);
    int s = start_state;
    for (int t = 0; t < n_steps; ++t) {
        s = sample_discrete(chain.transitions.row(s - 1).transpose(), rng);
        path.push_back(s);
    }
    return path;
}

}  // namespace tleak
