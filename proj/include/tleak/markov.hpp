#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <vector>

namespace tleak {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// States are numbered 1..size everywhere in the public interface.
struct MarkovChain {
    int size = 0;
    Matrix transitions;   // row-stochastic, size x size
    Vector initial_dist;  // mu0
    Vector steady_dist;   // mu, with mu^T P = mu^T

    const double& p(int from, int to) const { return transitions(from - 1, to - 1); }
};

// Decay factor of the parameterized source family: (|2i - S|/S)^theta.
double g_factor(int i, double theta, int size);

// Stationary distribution by damped power iteration (handles nearly
// periodic chains; the plain iteration oscillates on them).
Vector steady_state(const Matrix& transitions, double tol = 1e-12,
                    long max_iters = 1'000'000);

// Recurrent ring source with one reversed state every 4. Rows are filled
// from the three allowed targets i+1, i+3, i-2 (mod size) and then divided
// by their raw sum; the reversed rows sum to 2 as written.
MarkovChain build_chain(int size, double theta);

// Shannon entropy in bits, with 0 log 0 := 0. Throws on negative entries
// or a sum farther than 1e-6 from 1.
double entropy(const Vector& dist);

// Memoizing cache for P^k. Thread-safe on miss.
class MatrixPowerCache {
  public:
    explicit MatrixPowerCache(Matrix base);
    explicit MatrixPowerCache(const MarkovChain& chain) : MatrixPowerCache(chain.transitions) {}

    // Returns P^k, k >= 0. References stay valid for the cache lifetime.
    const Matrix& power(int k) const;

  private:
    Matrix base_;
    mutable std::map<int, Matrix> powers_;
    mutable std::mutex mutex_;
};

inline const Matrix& matrix_power(const MatrixPowerCache& cache, int k) { return cache.power(k); }

using Rng = std::mt19937_64;

// Uniform double in [0,1) using the top 53 bits; implementation-defined
// distributions are avoided so seeded runs are reproducible everywhere.
inline double canonical(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF draw from a probability vector; returns a 1-based state.
int sample_discrete(const Vector& dist, Rng& rng);

// Sequence of n_steps+1 states starting at start_state (1-based).
std::vector<int> sample_path(const MarkovChain& chain, int start_state, int n_steps, Rng& rng);

}  // namespace tleak
