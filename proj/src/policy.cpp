#include "tleak/policy.hpp"

#include <stdexcept>
#include <string>

namespace tleak {

const char* to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::GoalOriented: return "mpi";
        case PolicyKind::Periodic: return "pp";
        case PolicyKind::Adaptive: return "ade";
    }
    return "?";
}

PolicyKind policy_kind_from_string(const std::string& name) {
    if (name == "mpi") return PolicyKind::GoalOriented;
    if (name == "pp") return PolicyKind::Periodic;
    if (name == "ade") return PolicyKind::Adaptive;
    throw std::invalid_argument("unknown policy kind: " + name);
}

Eigen::VectorXi extract_sigma(const Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>& pi,
                              int t_max) {
    const auto n = pi.rows();
    Eigen::VectorXi sigma(n);
    for (Eigen::Index s = 0; s < n; ++s) {
        int chosen = t_max;
        for (int d = 1; d <= t_max; ++d) {
            if (pi(s, d - 1) == 1) {
                chosen = d;
                break;
            }
        }
        sigma[s] = chosen;
    }
    return sigma;
}

SchedulingPolicy solve_optimal_policy(const MarkovChain& chain, double beta, double gamma,
                                      int t_max, double tol, long max_sweeps,
                                      std::vector<double>* sweep_deltas) {
    if (gamma <= 0.0 || gamma >= 1.0)
        throw std::invalid_argument("solve_optimal_policy: gamma must lie in (0,1)");
    if (t_max < 1) throw std::invalid_argument("solve_optimal_policy: t_max must be >= 1");

    const int n = chain.size;
    MatrixPowerCache powers(chain);

    // hit(s, d): probability Bob's MAP estimate is right d steps after
    // receiving s, i.e. the row maximum of P^d.
    Matrix hit(n, t_max);
    for (int d = 1; d <= t_max; ++d)
        hit.col(d - 1) = powers.power(d).rowwise().maxCoeff();

    Matrix V = Matrix::Zero(n, t_max);  // V(s, delta), delta = 1..t_max
    Matrix Vnext(n, t_max);
    bool converged = false;
    for (long sweep = 0; sweep < max_sweeps; ++sweep) {
        const Vector v1 = V.col(0);
        for (int d = t_max; d >= 1; --d) {
            // Expected continuation after a request at elapsed d.
            const Vector req = (1.0 - beta) + gamma * (powers.power(d) * v1).array();
            if (d == t_max) {
                Vnext.col(d - 1) = req;
            } else {
                const Vector stay = hit.col(d - 1) + gamma * V.col(d);
                Vnext.col(d - 1) = stay.cwiseMax(req);
            }
        }
        const double diff = (Vnext - V).cwiseAbs().maxCoeff();
        if (sweep_deltas) sweep_deltas->push_back(diff);
        V.swap(Vnext);
        if (diff < tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw std::runtime_error("solve_optimal_policy: value iteration did not converge");

    // Greedy decision table; exact ties keep a = 0 (no transmission).
    Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic> pi(n, t_max);
    const Vector v1 = V.col(0);
    for (int d = 1; d <= t_max; ++d) {
        const Vector req = (1.0 - beta) + gamma * (powers.power(d) * v1).array();
        for (int s = 0; s < n; ++s) {
            if (d == t_max) {
                pi(s, d - 1) = 1;
            } else {
                const double stay = hit(s, d - 1) + gamma * V(s, d);
                pi(s, d - 1) = req[s] > stay ? 1 : 0;
            }
        }
    }

    SchedulingPolicy policy;
    policy.kind = PolicyKind::GoalOriented;
    policy.sigma = extract_sigma(pi, t_max);
    policy.period = 1;
    policy.t_max = t_max;
    policy.value_table = std::move(V);
    return policy;
}

double periodic_average_reward(const MarkovChain& chain, double beta, int period) {
    MatrixPowerCache powers(chain);
    double total = 1.0 - beta;
    for (int j = 1; j < period; ++j)
        total += chain.steady_dist.dot(powers.power(j).rowwise().maxCoeff());
    return total / period;
}

SchedulingPolicy tune_periodic(const MarkovChain& chain, double beta, int t_max) {
    if (t_max < 1) throw std::invalid_argument("tune_periodic: t_max must be >= 1");
    MatrixPowerCache powers(chain);

    int best_period = 1;
    double best_reward = 1.0 - beta;
    double cycle_sum = 1.0 - beta;
    for (int T = 2; T <= t_max; ++T) {
        cycle_sum += chain.steady_dist.dot(powers.power(T - 1).rowwise().maxCoeff());
        const double avg = cycle_sum / T;
        if (avg >= best_reward) {  // ties go to the longer period
            best_reward = avg;
            best_period = T;
        }
    }

    SchedulingPolicy policy;
    policy.kind = PolicyKind::Periodic;
    policy.sigma = Eigen::VectorXi::Constant(chain.size, best_period);
    policy.period = best_period;
    policy.t_max = t_max;
    return policy;
}

PolicyAnalytics policy_analytics(const MarkovChain& chain, const Eigen::VectorXi& sigma) {
    const int n = chain.size;
    if (sigma.size() != n) throw std::invalid_argument("policy_analytics: sigma size mismatch");
    MatrixPowerCache powers(chain);

    Matrix embedded(n, n);
    for (int s = 0; s < n; ++s) embedded.row(s) = powers.power(sigma[s]).row(s);

    PolicyAnalytics out;
    out.embedded_stationary = steady_state(embedded);

    const int t_max = sigma.maxCoeff();
    out.timing_dist = Vector::Zero(t_max);
    double mean_interval = 0.0;
    for (int s = 0; s < n; ++s) {
        out.timing_dist[sigma[s] - 1] += out.embedded_stationary[s];
        mean_interval += out.embedded_stationary[s] * sigma[s];
    }
    out.timing_entropy = entropy(out.timing_dist);
    out.transmission_prob = 1.0 / mean_interval;
    return out;
}

}  // namespace tleak
