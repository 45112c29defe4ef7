#pragma once

#include "tleak/eavesdropper.hpp"
#include "tleak/policy.hpp"

#include <ostream>
#include <vector>

namespace tleak {

// Independent verification paths. Everything here deliberately avoids the
// solver/estimator code it is used to check: policies are scored by solving
// their induced reward process exactly, posteriors by enumerating every
// trajectory.

// Discounted value per state of a fixed interval map, from the linear
// system the map induces (solved directly, no value iteration).
Vector evaluate_threshold_policy(const MarkovChain& chain, const Eigen::VectorXi& sigma,
                                 double beta, double gamma);

struct EnumerationResult {
    Eigen::VectorXi best_sigma;
    Vector best_value;
    long policies_scanned = 0;
};

// Scans every interval map in {1..t_max}^S and keeps the one with the
// largest total value.
EnumerationResult enumerate_threshold_policies(const MarkovChain& chain, double beta,
                                               double gamma, int t_max);

struct PolicyCheck {
    Eigen::VectorXi dp_sigma;
    Eigen::VectorXi enum_sigma;
    double value_gap = 0.0;  // sup-norm gap between the two exact values
    bool identical = false;
    bool ok = false;  // identical or value-tied within tolerance
};

PolicyCheck check_policy_against_enumeration(const MarkovChain& chain, double beta, double gamma,
                                             int t_max, double tol = 1e-9);

// Exact posteriors over the state at every time 0..t_K given the observed
// intervals, by enumerating all |S|^(t_K+1) trajectories.
struct ExactSmoothing {
    std::vector<Vector> at_time;  // index = time step m
    std::vector<int> epochs;
};

ExactSmoothing enumerate_posteriors(const MarkovChain& chain, const std::vector<int>& intervals,
                                    const std::vector<Eigen::VectorXi>& sigma_history);

// Largest absolute gap between the forward-backward epoch beliefs and the
// enumeration posteriors for the same observations.
double smoothing_gap(const MarkovChain& chain, const std::vector<int>& intervals,
                     const std::vector<Eigen::VectorXi>& sigma_history);

// Long-run timing behaviour of an interval map by plain simulation.
struct TimingStats {
    Vector interval_freq;  // empirical P(interval = t), index t-1
    double tx_prob = 0.0;  // transmissions per step
    double entropy_bits = 0.0;
};

TimingStats simulate_timing(const MarkovChain& chain, const Eigen::VectorXi& sigma, long steps,
                            Rng& rng);

// The verification suites behind the `oracle` CLI subcommand; prints one
// line per check. Returns true when every check passes.
bool run_oracle_suites(std::ostream& os);

}  // namespace tleak
