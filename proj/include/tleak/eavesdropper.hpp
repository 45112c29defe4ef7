#pragma once

#include "tleak/markov.hpp"

#include <Eigen/Dense>

#include <vector>

namespace tleak {

struct Belief {
    int target_time = 0;  // m, the step the distribution refers to
    int horizon = 0;      // n, observations up to here were used
    Vector dist;
};

// Everything the timing eavesdropper has accumulated: transmission epochs,
// the interval map in force during each interval (per-interval so mode
// switches are replayed exactly), and the filtered forward vectors.
struct EveState {
    const MarkovChain* chain = nullptr;
    const MatrixPowerCache* powers = nullptr;

    std::vector<int> epochs;                       // t_0 = 0 < t_1 < ...
    std::vector<int> intervals;                    // tau(k) = t_k - t_{k-1}, index k-1
    std::vector<Eigen::VectorXi> sigma_history;    // map in force during interval k, index k-1
    std::vector<Vector> forwards;                  // f_0 .. f_K, normalized
    int horizon = 0;                               // current time n
    int forward_fallbacks = 0;                     // zero-likelihood blind updates

    EveState() = default;
    EveState(const MarkovChain& c, const MatrixPowerCache& p);

    int last_epoch() const { return epochs.back(); }
    // Index of the last transmission at or before time n.
    int k_at(int n) const;
};

// Filtered distribution after observing an interval of tau steps under the
// given per-state interval map. A zero-likelihood observation falls back to
// the blind update and reports it through `fallback`.
Vector forward_update(const Vector& f_prev, int tau, const Eigen::VectorXi& sigma_eff,
                      const MatrixPowerCache& powers, bool* fallback = nullptr);

// Feed the transmission observed at `epoch` into the state.
void observe_transmission(EveState& eve, int epoch, const Eigen::VectorXi& sigma_eff);

// One full smoothing pass at horizon n: backward vectors and the smoothed
// per-epoch beliefs phi_k for k = 0..K(n).
struct SmoothingPass {
    int horizon = 0;
    std::vector<Vector> backwards;
    std::vector<Vector> smoothed;
    int fallbacks = 0;  // degenerate vectors replaced by uniform
};

// Backward vectors b_k(.;n) for k = 0..K(n), rescaled to sum 1 at every
// step. The terminal vector is uniform: timing after the last transmission
// carries no information yet.
std::vector<Vector> backward_pass(const EveState& eve, int n, int* fallbacks = nullptr);

SmoothingPass smoothing_pass(const EveState& eve, int n);

// phi_k proportional to f_k .* b_k.
Vector smooth_at_transmission(const Vector& f_k, const Vector& b_k, bool* fallback = nullptr);

// Product-of-marginals interpolation ell steps after epoch k, given the
// beliefs at the flanking transmissions and the interval between them.
Vector smooth_between(const Vector& phi_k, const Vector& phi_k1, int ell, int tau_k1,
                      const MatrixPowerCache& powers, bool* fallback = nullptr);

// Eve's belief about time n-d given observations up to n. Dispatches to the
// epoch belief, the between-epoch interpolation, or forward extrapolation
// past the last transmission.
Belief belief_at(const EveState& eve, const SmoothingPass& pass, int n, int d,
                 int* fallbacks = nullptr);
Belief belief_at(const EveState& eve, int n, int d);

// Normalized entropy deficit of the sharpest belief in the window, in [0,1].
double leakage(const std::vector<Vector>& beliefs, const Vector& mu);

// Argmax state (1-based), lowest index on ties.
int map_estimate(const Vector& belief);

// Per-step leakage evaluation: beliefs for d = 0..min(d_max, n) from one
// smoothing pass, their entropies, per-delay deficits and MAP estimates.
struct StepLeakage {
    double value = 0.0;
    std::vector<double> deficit;    // clamped per-d leakage, index d
    std::vector<double> entropies;  // H(phi(n;d)), index d
    std::vector<int> map_states;    // MAP estimate per d
    int fallbacks = 0;
};

StepLeakage step_leakage(const EveState& eve, int n, int d_max, const Vector& mu);

}  // namespace tleak
