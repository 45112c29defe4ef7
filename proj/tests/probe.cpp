// Scratch probe (not part of the build): paper-scale behavior snapshot.
#include "tleak/oracle.hpp"
#include "tleak/sim.hpp"

#include <iostream>

using namespace tleak;

int main() {
    EpisodeConfig cfg;
    cfg.size = 30;
    cfg.theta = 32.0;
    cfg.beta = 1.0;
    cfg.d_max = 5;
    cfg.n_steps = 200;
    cfg.seed = 1;

    const EpisodeContext ctx = prepare_episode(cfg);
    std::cout << "sigma: " << ctx.goal.sigma.transpose() << "\n";
    std::cout << "tuned period: " << ctx.periodic.period << "\n";
    const PolicyAnalytics an = policy_analytics(ctx.chain, ctx.goal.sigma);
    std::cout << "timing entropy: " << an.timing_entropy
              << " tx_prob: " << an.transmission_prob << "\n";

    for (PolicyKind kind :
         {PolicyKind::GoalOriented, PolicyKind::Periodic, PolicyKind::Adaptive}) {
        cfg.kind = kind;
        double mr = 0, ml = 0, eb = 0, ee = 0;
        double max_l = 0;
        long fb = 0;
        for (int ep = 0; ep < 10; ++ep) {
            const EpisodeTrace tr = run_episode(ctx, cfg, ep);
            const MetricsReport m = compute_metrics(tr, 0.0);
            mr += m.mean_reward / 10;
            ml += m.mean_leakage / 10;
            eb += m.eta_b / 10;
            ee += m.eta_e / 10;
            max_l = std::max(max_l, m.max_leakage);
            fb += m.fallback_count;
        }
        std::cout << to_string(kind) << ": reward=" << mr << " leak=" << ml
                  << " maxleak=" << max_l << " etaB=" << eb << " etaE=" << ee
                  << " fallbacks=" << fb << "\n";
    }

    // Single MPI episode: fraction of steps with leakage >= 0.85.
    cfg.kind = PolicyKind::GoalOriented;
    int high = 0, total = 0;
    for (int ep = 0; ep < 10; ++ep) {
        const EpisodeTrace tr = run_episode(ctx, cfg, ep);
        for (double l : tr.leak) {
            high += l >= 0.85 ? 1 : 0;
            ++total;
        }
    }
    std::cout << "MPI steps with L>=0.85: " << static_cast<double>(high) / total << "\n";
    return 0;
}
