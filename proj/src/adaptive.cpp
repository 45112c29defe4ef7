#include "tleak/adaptive.hpp"

#include <stdexcept>

namespace tleak {

double predict_leakage(const EveState& shadow, int hypothetical_tau,
                       const Eigen::VectorXi& sigma_eff_next, const Vector& mu, int d_max,
                       int* fallbacks) {
    EveState hypo = shadow;  // cheap copy: vectors of small dense types
    const int next_epoch = hypo.last_epoch() + hypothetical_tau;
    observe_transmission(hypo, next_epoch, sigma_eff_next);
    const StepLeakage sl = step_leakage(hypo, next_epoch, d_max, mu);
    if (fallbacks) *fallbacks += sl.fallbacks + hypo.forward_fallbacks - shadow.forward_fallbacks;
    return sl.value;
}

AdeDecision ade_schedule(int s, const AdeConfig& cfg, AdeMode& mode, const EveState& shadow) {
    if (!(cfg.l_min < cfg.l_max))
        throw std::invalid_argument("ade_schedule: need l_min < l_max");

    const Vector& mu = shadow.chain->steady_dist;
    const Eigen::VectorXi periodic_map =
        Eigen::VectorXi::Constant(shadow.chain->size, cfg.period);

    AdeDecision dec;
    dec.epoch = shadow.last_epoch();
    dec.state = s;
    dec.xi_before = mode.xi;
    dec.l_sem = predict_leakage(shadow, cfg.sigma[s - 1], cfg.sigma, mu, cfg.d_max);
    dec.l_per = predict_leakage(shadow, cfg.period, periodic_map, mu, cfg.d_max);

    if (mode.xi == 0) {
        if (dec.l_sem >= cfg.l_max) {
            mode.xi = 1;
            dec.interval = cfg.period;
        } else {
            dec.interval = cfg.sigma[s - 1];
        }
    } else {
        if (dec.l_per < cfg.l_min) {
            mode.xi = 0;
            dec.interval = cfg.sigma[s - 1];
        } else {
            dec.interval = cfg.period;
        }
    }
    dec.xi_after = mode.xi;
    return dec;
}

}  // namespace tleak
