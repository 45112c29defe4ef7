#pragma once

#include "tleak/adaptive.hpp"
#include "tleak/eavesdropper.hpp"
#include "tleak/policy.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace tleak {

struct EpisodeConfig {
    int size = 30;
    double theta = 32.0;
    double beta = 1.0;
    double gamma = 0.95;
    int t_max = 10;
    int d_max = 5;
    PolicyKind kind = PolicyKind::GoalOriented;
    double l_min = 0.4;
    double l_max = 0.6;
    int initial_xi = 0;
    int n_steps = 200;
    double epsilon = 0.0;
    std::uint64_t seed = 1;
    bool eta_b_excludes_tx = false;  // drop transmission steps from eta_B
};

// Chain and solved policies shared by every episode of a configuration.
struct EpisodeContext {
    MarkovChain chain;
    std::shared_ptr<MatrixPowerCache> powers;
    SchedulingPolicy goal;      // solved goal-oriented policy
    SchedulingPolicy periodic;  // tuned fixed period
};

EpisodeContext prepare_episode(const EpisodeConfig& cfg);

// Seed for episode `index` under a master seed; episodes get independent,
// reproducible streams.
Rng episode_rng(std::uint64_t master_seed, int index);

struct EpisodeTrace {
    std::vector<int> state;         // s(n)
    std::vector<int> action;        // a(n), 1 at transmission epochs
    std::vector<int> estimate;      // Bob's s_hat(n)
    std::vector<double> reward;     // r(n)
    std::vector<int> mode;          // xi in force during step n
    std::vector<double> leak;       // L_E(n; D)
    std::vector<int> eve_estimate;  // Eve's delayed estimate of the state at n
    std::vector<int> epochs;        // t_k
    std::vector<int> intervals;     // tau(k)
    std::vector<AdeDecision> decisions;   // adaptive runs only
    std::vector<StepLeakage> step_detail; // per-(n,d) beliefs behind leak[n]
    long forward_fallbacks = 0;
    long pass_fallbacks = 0;

    int steps() const { return static_cast<int>(state.size()); }
};

// One full episode: the source path is presampled from the episode stream,
// so policies acting on the same seed see the same trajectory.
EpisodeTrace run_episode(const EpisodeContext& ctx, const EpisodeConfig& cfg,
                         int episode_index = 0);
EpisodeTrace run_episode(const EpisodeConfig& cfg, int episode_index = 0);

struct MetricsReport {
    double mean_reward = 0.0;
    double mean_leakage = 0.0;
    double max_leakage = 0.0;
    double eta_b = 0.0;
    double eta_e = 0.0;
    double r_b = 0.0;  // per-step average of r(n) - epsilon * L_E(n;D)
    long fallback_count = 0;
};

MetricsReport compute_metrics(const EpisodeTrace& trace, double epsilon,
                              bool eta_b_excludes_tx = false);

}  // namespace tleak
