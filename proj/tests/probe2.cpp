// Scratch probe: policy shape across theta and gamma.
#include "tleak/oracle.hpp"
#include "tleak/sim.hpp"

#include <iostream>

using namespace tleak;

int main() {
    for (double theta : {1.0, 4.0, 8.0, 32.0, 128.0}) {
        const MarkovChain chain = build_chain(30, theta);
        for (double gamma : {0.9, 0.95, 0.99}) {
            const SchedulingPolicy pol = solve_optimal_policy(chain, 1.0, gamma, 10);
            const SchedulingPolicy per = tune_periodic(chain, 1.0, 10);
            const PolicyAnalytics an = policy_analytics(chain, pol.sigma);
            std::cout << "theta=" << theta << " gamma=" << gamma
                      << " sigma=" << pol.sigma.transpose() << " H=" << an.timing_entropy
                      << " T*=" << per.period << "\n";
        }
    }

    std::cout << "\nepisode snapshot at gamma=0.95, beta=1:\n";
    for (double theta : {1.0, 8.0, 32.0}) {
        EpisodeConfig cfg;
        cfg.theta = theta;
        cfg.beta = 1.0;
        const EpisodeContext ctx = prepare_episode(cfg);
        for (PolicyKind kind : {PolicyKind::GoalOriented, PolicyKind::Periodic}) {
            cfg.kind = kind;
            double mr = 0, ml = 0, ee = 0, eb = 0;
            for (int ep = 0; ep < 10; ++ep) {
                const MetricsReport m = compute_metrics(run_episode(ctx, cfg, ep), 0.0);
                mr += m.mean_reward / 10;
                ml += m.mean_leakage / 10;
                ee += m.eta_e / 10;
                eb += m.eta_b / 10;
            }
            std::cout << "theta=" << theta << " " << to_string(kind) << " reward=" << mr
                      << " leak=" << ml << " etaB=" << eb << " etaE=" << ee << "\n";
        }
    }
    return 0;
}
