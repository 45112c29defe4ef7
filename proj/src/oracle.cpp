#include "tleak/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace tleak {

Vector evaluate_threshold_policy(const MarkovChain& chain, const Eigen::VectorXi& sigma,
                                 double beta, double gamma) {
    const int n = chain.size;
    MatrixPowerCache powers(chain);

    Matrix A(n, n);
    Vector c(n);
    for (int s = 0; s < n; ++s) {
        const int tau = sigma[s];
        double reward = 0.0;
        double disc = 1.0;
        for (int j = 1; j < tau; ++j) {
            reward += disc * powers.power(j).row(s).maxCoeff();
            disc *= gamma;
        }
        reward += disc * (1.0 - beta);
        c[s] = reward;
        A.row(s) = disc * gamma * powers.power(tau).row(s);
    }
    return (Matrix::Identity(n, n) - A).partialPivLu().solve(c);
}

EnumerationResult enumerate_threshold_policies(const MarkovChain& chain, double beta,
                                               double gamma, int t_max) {
    const int n = chain.size;
    Eigen::VectorXi sigma = Eigen::VectorXi::Ones(n);

    EnumerationResult result;
    result.best_sigma = sigma;
    result.best_value = evaluate_threshold_policy(chain, sigma, beta, gamma);
    result.policies_scanned = 1;
    double best_score = result.best_value.sum();

    // Odometer over {1..t_max}^n.
    while (true) {
        int pos = 0;
        while (pos < n && sigma[pos] == t_max) sigma[pos++] = 1;
        if (pos == n) break;
        ++sigma[pos];

        const Vector value = evaluate_threshold_policy(chain, sigma, beta, gamma);
        ++result.policies_scanned;
        const double score = value.sum();
        if (score > best_score) {
            best_score = score;
            result.best_sigma = sigma;
            result.best_value = value;
        }
    }
    return result;
}

PolicyCheck check_policy_against_enumeration(const MarkovChain& chain, double beta, double gamma,
                                             int t_max, double tol) {
    PolicyCheck check;
    check.dp_sigma = solve_optimal_policy(chain, beta, gamma, t_max).sigma;
    const EnumerationResult en = enumerate_threshold_policies(chain, beta, gamma, t_max);
    check.enum_sigma = en.best_sigma;
    const Vector dp_value = evaluate_threshold_policy(chain, check.dp_sigma, beta, gamma);
    check.value_gap = (dp_value - en.best_value).cwiseAbs().maxCoeff();
    check.identical = check.dp_sigma == check.enum_sigma;
    check.ok = check.identical || check.value_gap <= tol;
    return check;
}

ExactSmoothing enumerate_posteriors(const MarkovChain& chain, const std::vector<int>& intervals,
                                    const std::vector<Eigen::VectorXi>& sigma_history) {
    if (intervals.size() != sigma_history.size())
        throw std::invalid_argument("enumerate_posteriors: history length mismatch");
    const int n = chain.size;

    ExactSmoothing out;
    out.epochs.push_back(0);
    for (int tau : intervals) out.epochs.push_back(out.epochs.back() + tau);
    const int horizon = out.epochs.back();
    if (std::pow(static_cast<double>(n), horizon + 1) > 5e7)
        throw std::invalid_argument("enumerate_posteriors: trajectory space too large");

    std::vector<Vector> acc(horizon + 1, Vector::Zero(n));

    std::vector<bool> is_epoch(horizon + 1, false);
    std::vector<int> epoch_index(horizon + 1, -1);
    for (size_t k = 0; k < out.epochs.size(); ++k) {
        is_epoch[out.epochs[k]] = true;
        epoch_index[out.epochs[k]] = static_cast<int>(k);
    }

    // DFS over all trajectories, running prefix weight kept per depth.
    std::vector<int> traj(horizon + 1, -1);
    std::vector<double> prefix(horizon + 1, 0.0);
    int depth = 0;
    while (depth >= 0) {
        if (++traj[depth] >= n) {
            traj[depth] = -1;
            --depth;
            continue;
        }
        const int s = traj[depth];
        double w = depth == 0 ? chain.initial_dist[s]
                              : prefix[depth - 1] * chain.transitions(traj[depth - 1], s);
        // The state at epoch t_k pins interval k+1.
        if (w > 0.0 && is_epoch[depth]) {
            const int k = epoch_index[depth];
            if (k < static_cast<int>(intervals.size()) && sigma_history[k][s] != intervals[k])
                w = 0.0;
        }
        if (w <= 0.0) continue;
        prefix[depth] = w;
        if (depth == horizon) {
            for (int m = 0; m <= horizon; ++m) acc[m][traj[m]] += w;
            continue;
        }
        ++depth;
    }

    out.at_time.resize(horizon + 1);
    for (int m = 0; m <= horizon; ++m) {
        const double total = acc[m].sum();
        if (!(total > 0.0))
            throw std::runtime_error("enumerate_posteriors: observations have zero likelihood");
        out.at_time[m] = acc[m] / total;
    }
    return out;
}

double smoothing_gap(const MarkovChain& chain, const std::vector<int>& intervals,
                     const std::vector<Eigen::VectorXi>& sigma_history) {
    const ExactSmoothing exact = enumerate_posteriors(chain, intervals, sigma_history);

    MatrixPowerCache powers(chain);
    EveState eve(chain, powers);
    for (size_t k = 0; k < intervals.size(); ++k)
        observe_transmission(eve, eve.last_epoch() + intervals[k], sigma_history[k]);

    const SmoothingPass pass = smoothing_pass(eve, eve.last_epoch());
    double gap = 0.0;
    for (size_t k = 0; k < pass.smoothed.size(); ++k) {
        const Vector& exact_k = exact.at_time[exact.epochs[k]];
        gap = std::max(gap, (pass.smoothed[k] - exact_k).cwiseAbs().maxCoeff());
    }
    return gap;
}

TimingStats simulate_timing(const MarkovChain& chain, const Eigen::VectorXi& sigma, long steps,
                            Rng& rng) {
    std::vector<long> counts(sigma.maxCoeff(), 0);
    long transmissions = 0;

    int s = sample_discrete(chain.initial_dist, rng);
    int committed = sigma[s - 1];
    int since_tx = 0;
    for (long n = 1; n <= steps; ++n) {
        s = sample_discrete(chain.transitions.row(s - 1).transpose(), rng);
        ++since_tx;
        if (since_tx == committed) {
            ++counts[committed - 1];
            ++transmissions;
            committed = sigma[s - 1];
            since_tx = 0;
        }
    }

    TimingStats stats;
    stats.interval_freq = Vector::Zero(static_cast<Eigen::Index>(counts.size()));
    for (size_t t = 0; t < counts.size(); ++t)
        stats.interval_freq[static_cast<Eigen::Index>(t)] =
            transmissions > 0 ? static_cast<double>(counts[t]) / transmissions : 0.0;
    stats.tx_prob = static_cast<double>(transmissions) / static_cast<double>(steps);
    stats.entropy_bits = transmissions > 0 ? entropy(stats.interval_freq) : 0.0;
    return stats;
}

bool run_oracle_suites(std::ostream& os) {
    bool all_ok = true;

    os << "policy enumeration oracle (|S|=4, t_max=3, gamma=0.9)\n";
    for (double theta : {1.0, 8.0}) {
        const MarkovChain chain = build_chain(4, theta);
        for (double beta : {0.0, 0.5, 1.0}) {
            const PolicyCheck check = check_policy_against_enumeration(chain, beta, 0.9, 3);
            all_ok = all_ok && check.ok;
            os << "  [" << (check.ok ? "PASS" : "FAIL") << "] theta=" << theta
               << " beta=" << beta << " scanned=81 value_gap=" << check.value_gap
               << (check.identical ? " (identical policy)" : " (value tie)") << "\n";
        }
    }

    os << "exact smoothing oracle (|S|=3, <=3 transmissions)\n";
    Rng rng(20240811);
    for (int instance = 0; instance < 4; ++instance) {
        // Random ergodic 3-state chain and interval map.
        Matrix P(3, 3);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) P(i, j) = 0.05 + canonical(rng);
            P.row(i) /= P.row(i).sum();
        }
        MarkovChain chain;
        chain.size = 3;
        chain.transitions = P;
        chain.initial_dist = Vector::Constant(3, 1.0 / 3.0);
        chain.steady_dist = steady_state(P);

        Eigen::VectorXi sigma(3);
        for (int i = 0; i < 3; ++i) sigma[i] = 1 + static_cast<int>(canonical(rng) * 3.0);

        // Walk the source to get a consistent observation sequence.
        std::vector<int> intervals;
        std::vector<Eigen::VectorXi> history;
        int s = sample_discrete(chain.initial_dist, rng);
        while (intervals.size() < 3) {
            const int tau = sigma[s - 1];
            for (int t = 0; t < tau; ++t)
                s = sample_discrete(chain.transitions.row(s - 1).transpose(), rng);
            intervals.push_back(tau);
            history.push_back(sigma);
        }

        const double gap = smoothing_gap(chain, intervals, history);
        const bool ok = gap < 1e-9;
        all_ok = all_ok && ok;
        os << "  [" << (ok ? "PASS" : "FAIL") << "] instance " << instance
           << " max_gap=" << gap << "\n";
    }

    return all_ok;
}

}  // namespace tleak
