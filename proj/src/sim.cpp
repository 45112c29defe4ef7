#include "tleak/sim.hpp"

#include <stdexcept>

namespace tleak {

EpisodeContext prepare_episode(const EpisodeConfig& cfg) {
    if (cfg.n_steps < 1) throw std::invalid_argument("run_episode: n_steps must be >= 1");
    if (cfg.d_max > cfg.n_steps) throw std::invalid_argument("run_episode: d_max > n_steps");

    EpisodeContext ctx;
    ctx.chain = build_chain(cfg.size, cfg.theta);
    ctx.powers = std::make_shared<MatrixPowerCache>(ctx.chain);
    ctx.goal = solve_optimal_policy(ctx.chain, cfg.beta, cfg.gamma, cfg.t_max);
    ctx.periodic = tune_periodic(ctx.chain, cfg.beta, cfg.t_max);
    return ctx;
}

Rng episode_rng(std::uint64_t master_seed, int index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(index)};
    return Rng(seq);
}

namespace {

int bob_estimate(const MatrixPowerCache& powers, int s_last, int delta) {
    Eigen::Index idx = 0;
    powers.power(delta).row(s_last - 1).maxCoeff(&idx);
    return static_cast<int>(idx) + 1;
}

}  // namespace

EpisodeTrace run_episode(const EpisodeContext& ctx, const EpisodeConfig& cfg,
                         int episode_index) {
    if (cfg.n_steps < 1) throw std::invalid_argument("run_episode: n_steps must be >= 1");
    if (cfg.d_max > cfg.n_steps) throw std::invalid_argument("run_episode: d_max > n_steps");
    const int N = cfg.n_steps;
    const MarkovChain& chain = ctx.chain;
    const MatrixPowerCache& powers = *ctx.powers;
    const Vector& mu = chain.steady_dist;

    Rng rng = episode_rng(cfg.seed, episode_index);
    const int s0 = sample_discrete(chain.initial_dist, rng);
    const std::vector<int> path = sample_path(chain, s0, N - 1, rng);

    const Eigen::VectorXi periodic_map = Eigen::VectorXi::Constant(chain.size, ctx.periodic.period);
    AdeConfig ade;
    ade.l_min = cfg.l_min;
    ade.l_max = cfg.l_max;
    ade.period = ctx.periodic.period;
    ade.sigma = ctx.goal.sigma;
    ade.d_max = cfg.d_max;
    ade.initial_xi = cfg.initial_xi;

    EpisodeTrace trace;
    trace.state = path;
    trace.action.assign(N, 0);
    trace.estimate.assign(N, 0);
    trace.reward.assign(N, 0.0);
    trace.mode.assign(N, 0);
    trace.leak.assign(N, 0.0);
    trace.eve_estimate.assign(N, 0);

    EveState eve(chain, powers);
    AdeMode mode{cfg.kind == PolicyKind::Adaptive ? ade.initial_xi
                                                  : (cfg.kind == PolicyKind::Periodic ? 1 : 0)};

    int s_last = 0;
    int t_last = 0;
    int next_tx = 0;
    int xi_now = mode.xi;
    Eigen::VectorXi sigma_next;  // map in force for the committed interval

    // Commits the interval that starts at the transmission just handled.
    auto commit = [&](int n, int s) {
        int tau = 0;
        switch (cfg.kind) {
            case PolicyKind::GoalOriented:
                tau = ctx.goal.sigma[s - 1];
                sigma_next = ctx.goal.sigma;
                xi_now = 0;
                break;
            case PolicyKind::Periodic:
                tau = ctx.periodic.period;
                sigma_next = periodic_map;
                xi_now = 1;
                break;
            case PolicyKind::Adaptive: {
                AdeDecision dec = ade_schedule(s, ade, mode, eve);
                trace.decisions.push_back(dec);
                tau = dec.interval;
                sigma_next = mode.xi == 0 ? ctx.goal.sigma : periodic_map;
                xi_now = mode.xi;
                break;
            }
        }
        next_tx = n + tau;
    };

    for (int n = 0; n < N; ++n) {
        if (n == next_tx) {
            if (n > 0) {
                observe_transmission(eve, n, sigma_next);
                t_last = n;
            }
            s_last = path[n];
            trace.action[n] = 1;
            trace.estimate[n] = s_last;
            trace.reward[n] = 1.0 - cfg.beta;
            trace.epochs.push_back(n);
            if (n > 0) trace.intervals.push_back(eve.intervals.back());
            commit(n, s_last);
        } else {
            const int delta = n - t_last;
            trace.estimate[n] = bob_estimate(powers, s_last, delta);
            trace.reward[n] = trace.estimate[n] == path[n] ? 1.0 : 0.0;
        }
        trace.mode[n] = xi_now;

        StepLeakage sl = step_leakage(eve, n, cfg.d_max, mu);
        trace.leak[n] = sl.value;
        trace.pass_fallbacks += sl.fallbacks;
        // Eve commits her estimate of time n - d_max once the delay window
        // has fully elapsed.
        if (n >= cfg.d_max) trace.eve_estimate[n - cfg.d_max] = sl.map_states[cfg.d_max];
        if (n == N - 1) {
            // Episode end: remaining estimates use the final horizon.
            const int d_hi = std::min(cfg.d_max, n);
            for (int d = 0; d < d_hi; ++d) trace.eve_estimate[n - d] = sl.map_states[d];
            if (n < cfg.d_max) trace.eve_estimate[0] = sl.map_states[n];
        }
        trace.step_detail.push_back(std::move(sl));
    }
    trace.forward_fallbacks = eve.forward_fallbacks;
    return trace;
}

EpisodeTrace run_episode(const EpisodeConfig& cfg, int episode_index) {
    return run_episode(prepare_episode(cfg), cfg, episode_index);
}

MetricsReport compute_metrics(const EpisodeTrace& trace, double epsilon,
                              bool eta_b_excludes_tx) {
    const int N = trace.steps();
    if (N == 0) throw std::invalid_argument("compute_metrics: empty trace");

    MetricsReport rep;
    int bob_hits = 0;
    int bob_steps = 0;
    int eve_hits = 0;
    for (int n = 0; n < N; ++n) {
        rep.mean_reward += trace.reward[n];
        rep.mean_leakage += trace.leak[n];
        rep.max_leakage = std::max(rep.max_leakage, trace.leak[n]);
        rep.r_b += trace.reward[n] - epsilon * trace.leak[n];
        if (!(eta_b_excludes_tx && trace.action[n] == 1)) {
            bob_hits += trace.estimate[n] == trace.state[n] ? 1 : 0;
            ++bob_steps;
        }
        eve_hits += trace.eve_estimate[n] == trace.state[n] ? 1 : 0;
    }
    rep.mean_reward /= N;
    rep.mean_leakage /= N;
    rep.r_b /= N;
    rep.eta_b = bob_steps > 0 ? static_cast<double>(bob_hits) / bob_steps : 1.0;
    rep.eta_e = static_cast<double>(eve_hits) / N;
    rep.fallback_count = trace.forward_fallbacks + trace.pass_fallbacks;
    return rep;
}

}  // namespace tleak
