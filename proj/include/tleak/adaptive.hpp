#pragma once

#include "tleak/eavesdropper.hpp"
#include "tleak/policy.hpp"

namespace tleak {

// Hysteresis controller parameters. The controller flips between the
// goal-oriented interval map and the fixed period when the leakage it
// predicts for the next interval crosses l_max / drops below l_min.
struct AdeConfig {
    double l_min = 0.4;
    double l_max = 0.6;
    int period = 1;        // T of the periodic fallback
    Eigen::VectorXi sigma; // goal-oriented interval map
    int d_max = 5;         // delay window used for the predictions
    int initial_xi = 0;    // 0 = goal-oriented, 1 = periodic
};

struct AdeMode {
    int xi = 0;  // 0 = goal-oriented active, 1 = periodic active
};

// One committed scheduling decision, loggable as CSV.
struct AdeDecision {
    int epoch = 0;
    int state = 0;
    double l_sem = 0.0;  // predicted leakage if the next interval is sigma(s)
    double l_per = 0.0;  // predicted leakage if the next interval is T
    int xi_before = 0;
    int xi_after = 0;
    int interval = 0;
};

// Leakage the scheduler would hand the eavesdropper were the next interval
// `hypothetical_tau` under `sigma_eff_next`: clone the shadow state, append
// the interval, and evaluate the delay window at the hypothetical next
// transmission. Uses only information available at decision time (uniform
// terminal backward vector).
double predict_leakage(const EveState& shadow, int hypothetical_tau,
                       const Eigen::VectorXi& sigma_eff_next, const Vector& mu, int d_max,
                       int* fallbacks = nullptr);

// The hysteresis rule: evaluated once per transmission instant, commits the
// whole next interval and the mode it runs under.
AdeDecision ade_schedule(int s, const AdeConfig& cfg, AdeMode& mode, const EveState& shadow);

}  // namespace tleak
