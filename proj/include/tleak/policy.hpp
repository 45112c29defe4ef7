#pragma once

#include "tleak/markov.hpp"

#include <Eigen/Dense>

namespace tleak {

enum class PolicyKind { GoalOriented, Periodic, Adaptive };

const char* to_string(PolicyKind kind);
PolicyKind policy_kind_from_string(const std::string& name);

// A committed-interval scheduling policy. For GoalOriented, sigma[s-1] is
// the interval after receiving state s; for Periodic every interval is
// `period`. Adaptive carries both and switches at runtime.
struct SchedulingPolicy {
    PolicyKind kind = PolicyKind::GoalOriented;
    Eigen::VectorXi sigma;  // per-state interval, 1..t_max
    int period = 1;
    int t_max = 1;
    Matrix value_table;  // V(s, delta), diagnostic; empty unless solved

    // Interval committed after receiving state s under the base policy.
    int interval_for(int s) const {
        return kind == PolicyKind::Periodic ? period : sigma[s - 1];
    }
};

struct PolicyAnalytics {
    double timing_entropy = 0.0;    // bits, entropy of the interval distribution
    double transmission_prob = 0.0; // 1 / E[interval] under the embedded chain
    Vector embedded_stationary;     // state distribution at transmission instants
    Vector timing_dist;             // P(interval = t), index t-1, length t_max
};

// Decision table pi(s, delta) in {0,1} -> least delta with pi = 1, or
// t_max when the row never selects 1 (transmission is forced at the cap).
Eigen::VectorXi extract_sigma(const Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>& pi,
                              int t_max);

// Optimal goal-oriented policy by value iteration over (last state,
// elapsed time). Stay pays the MAP-estimate hit probability, requesting
// pays 1-beta and resets the clock; transmission is forced at t_max.
// Ties prefer staying, so the extracted intervals are maximal among
// optimal policies. sweep_deltas, when given, receives the sup-norm
// change of every sweep.
SchedulingPolicy solve_optimal_policy(const MarkovChain& chain, double beta, double gamma,
                                      int t_max, double tol = 1e-10, long max_sweeps = 100'000,
                                      std::vector<double>* sweep_deltas = nullptr);

// Best fixed period by exact per-step average reward over one cycle,
// ties broken toward the larger (cheaper) period.
SchedulingPolicy tune_periodic(const MarkovChain& chain, double beta, int t_max);

// Exact per-step average reward of a fixed period (exposed for tests).
double periodic_average_reward(const MarkovChain& chain, double beta, int period);

// Embedded-chain characterization of a per-state interval map: stationary
// distribution at transmission instants, interval distribution weighted by
// it, entropy of that distribution, and long-run transmission probability.
PolicyAnalytics policy_analytics(const MarkovChain& chain, const Eigen::VectorXi& sigma);

}  // namespace tleak
