#include "tleak/eavesdropper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tleak {

namespace {

Vector uniform_like(Eigen::Index n) { return Vector::Constant(n, 1.0 / static_cast<double>(n)); }

// Rescale to sum 1; an all-zero or non-finite vector becomes uniform.
Vector normalized_or_uniform(Vector v, bool* fallback) {
    const double sum = v.sum();
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        if (fallback) *fallback = true;
        return uniform_like(v.size());
    }
    v /= sum;
    return v;
}

}  // namespace

EveState::EveState(const MarkovChain& c, const MatrixPowerCache& p) : chain(&c), powers(&p) {
    epochs.push_back(0);
    forwards.push_back(c.initial_dist);
    horizon = 0;
}

int EveState::k_at(int n) const {
    auto it = std::upper_bound(epochs.begin(), epochs.end(), n);
    if (it == epochs.begin()) throw std::invalid_argument("EveState: time precedes first epoch");
    return static_cast<int>(it - epochs.begin()) - 1;
}

Vector forward_update(const Vector& f_prev, int tau, const Eigen::VectorXi& sigma_eff,
                      const MatrixPowerCache& powers, bool* fallback) {
    if (tau < 1) throw std::invalid_argument("forward_update: interval must be >= 1");
    const Matrix& Ptau = powers.power(tau);

    Vector gated = f_prev;
    for (Eigen::Index s = 0; s < gated.size(); ++s)
        if (sigma_eff[s] != tau) gated[s] = 0.0;

    Vector next = Ptau.transpose() * gated;
    double sum = next.sum();
    if (!(sum > 0.0)) {
        // Observation impossible under the interval map: fall back to the
        // blind update so the estimator keeps running.
        if (fallback) *fallback = true;
        next = Ptau.transpose() * f_prev;
        sum = next.sum();
    }
    return next / sum;
}

void observe_transmission(EveState& eve, int epoch, const Eigen::VectorXi& sigma_eff) {
    const int tau = epoch - eve.last_epoch();
    if (tau < 1) throw std::invalid_argument("observe_transmission: epoch must advance");
    bool fellback = false;
    Vector f = forward_update(eve.forwards.back(), tau, sigma_eff, *eve.powers, &fellback);
    if (fellback) ++eve.forward_fallbacks;
    eve.epochs.push_back(epoch);
    eve.intervals.push_back(tau);
    eve.sigma_history.push_back(sigma_eff);
    eve.forwards.push_back(std::move(f));
    eve.horizon = epoch;
}

std::vector<Vector> backward_pass(const EveState& eve, int n, int* fallbacks) {
    const int K = eve.k_at(n);
    const Eigen::Index S = eve.chain->size;
    std::vector<Vector> b(static_cast<size_t>(K) + 1);
    b[K] = uniform_like(S);
    for (int k = K - 1; k >= 0; --k) {
        const int tau = eve.intervals[k];  // tau(k+1)
        const Eigen::VectorXi& sig = eve.sigma_history[k];
        Vector v = eve.powers->power(tau) * b[k + 1];
        for (Eigen::Index s = 0; s < S; ++s)
            if (sig[s] != tau) v[s] = 0.0;
        bool fellback = false;
        b[k] = normalized_or_uniform(std::move(v), &fellback);
        if (fellback && fallbacks) ++*fallbacks;
    }
    return b;
}

Vector smooth_at_transmission(const Vector& f_k, const Vector& b_k, bool* fallback) {
    if (f_k.size() != b_k.size())
        throw std::invalid_argument("smooth_at_transmission: size mismatch");
    return normalized_or_uniform(f_k.cwiseProduct(b_k), fallback);
}

SmoothingPass smoothing_pass(const EveState& eve, int n) {
    SmoothingPass pass;
    pass.horizon = n;
    pass.backwards = backward_pass(eve, n, &pass.fallbacks);
    pass.smoothed.resize(pass.backwards.size());
    for (size_t k = 0; k < pass.backwards.size(); ++k) {
        bool fellback = false;
        pass.smoothed[k] = smooth_at_transmission(eve.forwards[k], pass.backwards[k], &fellback);
        if (fellback) ++pass.fallbacks;
    }
    return pass;
}

Vector smooth_between(const Vector& phi_k, const Vector& phi_k1, int ell, int tau_k1,
                      const MatrixPowerCache& powers, bool* fallback) {
    if (ell < 0 || ell > tau_k1) throw std::invalid_argument("smooth_between: ell outside 0..tau");
    const Vector from_left = powers.power(ell).transpose() * phi_k;
    const Vector to_right = powers.power(tau_k1 - ell) * phi_k1;
    return normalized_or_uniform(from_left.cwiseProduct(to_right), fallback);
}

Belief belief_at(const EveState& eve, const SmoothingPass& pass, int n, int d, int* fallbacks) {
    if (d < 0 || d > n) throw std::invalid_argument("belief_at: need 0 <= d <= n");
    const int m = n - d;
    const int K = static_cast<int>(pass.smoothed.size()) - 1;

    Belief out;
    out.target_time = m;
    out.horizon = n;

    const int t_last = eve.epochs[K];
    if (m >= t_last) {
        if (m == t_last) {
            out.dist = pass.smoothed[K];
        } else {
            // Nothing observed constrains times past the last transmission;
            // propagate the last smoothed belief forward.
            out.dist = (eve.powers->power(m - t_last).transpose() * pass.smoothed[K]).eval();
            out.dist /= out.dist.sum();
        }
        return out;
    }

    const int k = eve.k_at(m);
    if (eve.epochs[k] == m) {
        out.dist = pass.smoothed[k];
        return out;
    }
    const int ell = m - eve.epochs[k];
    bool fellback = false;
    out.dist = smooth_between(pass.smoothed[k], pass.smoothed[k + 1], ell, eve.intervals[k],
                              *eve.powers, &fellback);
    if (fellback && fallbacks) ++*fallbacks;
    return out;
}

Belief belief_at(const EveState& eve, int n, int d) {
    const SmoothingPass pass = smoothing_pass(eve, n);
    return belief_at(eve, pass, n, d);
}

double leakage(const std::vector<Vector>& beliefs, const Vector& mu) {
    const double h_mu = entropy(mu);
    if (h_mu <= 0.0) throw std::domain_error("leakage: degenerate source, H(mu) = 0");
    double best = 0.0;
    for (const Vector& phi : beliefs) {
        const double v = 1.0 - entropy(phi) / h_mu;
        best = std::max(best, v);
    }
    return std::clamp(best, 0.0, 1.0);
}

int map_estimate(const Vector& belief) {
    Eigen::Index idx = 0;
    belief.maxCoeff(&idx);
    return static_cast<int>(idx) + 1;
}

StepLeakage step_leakage(const EveState& eve, int n, int d_max, const Vector& mu) {
    const double h_mu = entropy(mu);
    if (h_mu <= 0.0) throw std::domain_error("step_leakage: degenerate source, H(mu) = 0");

    SmoothingPass pass = smoothing_pass(eve, n);
    StepLeakage out;
    out.fallbacks = pass.fallbacks;
    const int d_hi = std::min(d_max, n);
    out.deficit.reserve(d_hi + 1);
    out.entropies.reserve(d_hi + 1);
    out.map_states.reserve(d_hi + 1);
    for (int d = 0; d <= d_hi; ++d) {
        const Belief phi = belief_at(eve, pass, n, d, &out.fallbacks);
        const double h = entropy(phi.dist);
        out.entropies.push_back(h);
        out.deficit.push_back(std::clamp(1.0 - h / h_mu, 0.0, 1.0));
        out.map_states.push_back(map_estimate(phi.dist));
        out.value = std::max(out.value, out.deficit.back());
    }
    return out;
}

}  // namespace tleak
