#include "tleak/io.hpp"

#include <charconv>
#include <stdexcept>

namespace tleak {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

nlohmann::json to_json(const MarkovChain& chain) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < chain.size; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < chain.size; ++j) row.push_back(chain.transitions(i, j));
        rows.push_back(std::move(row));
    }
    return {{"size", chain.size},
            {"transitions", std::move(rows)},
            {"initial_dist", std::vector<double>(chain.initial_dist.begin(), chain.initial_dist.end())},
            {"steady_state", std::vector<double>(chain.steady_dist.begin(), chain.steady_dist.end())}};
}

MarkovChain chain_from_json(const nlohmann::json& j) {
    MarkovChain chain;
    chain.size = j.at("size").get<int>();
    chain.transitions = Matrix(chain.size, chain.size);
    const auto& rows = j.at("transitions");
    for (int i = 0; i < chain.size; ++i)
        for (int k = 0; k < chain.size; ++k) chain.transitions(i, k) = rows.at(i).at(k).get<double>();
    const auto mu0 = j.at("initial_dist").get<std::vector<double>>();
    const auto mu = j.at("steady_state").get<std::vector<double>>();
    chain.initial_dist = Eigen::Map<const Vector>(mu0.data(), static_cast<Eigen::Index>(mu0.size()));
    chain.steady_dist = Eigen::Map<const Vector>(mu.data(), static_cast<Eigen::Index>(mu.size()));
    return chain;
}

nlohmann::json to_json(const SchedulingPolicy& policy) {
    return {{"kind", to_string(policy.kind)},
            {"sigma", std::vector<int>(policy.sigma.begin(), policy.sigma.end())},
            {"period", policy.period},
            {"t_max", policy.t_max}};
}

SchedulingPolicy policy_from_json(const nlohmann::json& j) {
    SchedulingPolicy policy;
    policy.kind = policy_kind_from_string(j.at("kind").get<std::string>());
    const auto sigma = j.at("sigma").get<std::vector<int>>();
    policy.sigma = Eigen::Map<const Eigen::VectorXi>(sigma.data(), static_cast<Eigen::Index>(sigma.size()));
    policy.period = j.at("period").get<int>();
    policy.t_max = j.at("t_max").get<int>();
    return policy;
}

nlohmann::json to_json(const PolicyAnalytics& analytics) {
    return {{"timing_entropy", analytics.timing_entropy},
            {"transmission_prob", analytics.transmission_prob},
            {"embedded_stationary",
             std::vector<double>(analytics.embedded_stationary.begin(),
                                 analytics.embedded_stationary.end())},
            {"timing_dist",
             std::vector<double>(analytics.timing_dist.begin(), analytics.timing_dist.end())}};
}

nlohmann::json to_json(const MetricsReport& report, const EpisodeConfig& cfg) {
    return {{"mean_reward", report.mean_reward},
            {"mean_leakage", report.mean_leakage},
            {"max_leakage", report.max_leakage},
            {"eta_B", report.eta_b},
            {"eta_E", report.eta_e},
            {"R_B", report.r_b},
            {"fallback_count", report.fallback_count},
            {"config",
             {{"size", cfg.size},
              {"theta", cfg.theta},
              {"beta", cfg.beta},
              {"gamma", cfg.gamma},
              {"t_max", cfg.t_max},
              {"d_max", cfg.d_max},
              {"policy", to_string(cfg.kind)},
              {"l_min", cfg.l_min},
              {"l_max", cfg.l_max},
              {"n_steps", cfg.n_steps},
              {"epsilon", cfg.epsilon},
              {"seed", cfg.seed}}}};
}

void write_trace_csv(const EpisodeTrace& trace, const EpisodeConfig& cfg, std::ostream& os) {
    os << "# L_min=" << format_double(cfg.l_min) << "\n";
    os << "# L_max=" << format_double(cfg.l_max) << "\n";
    os << "n,s,a,s_hat,r,xi,leakage\n";
    for (int n = 0; n < trace.steps(); ++n) {
        os << n << ',' << trace.state[n] << ',' << trace.action[n] << ',' << trace.estimate[n]
           << ',' << format_double(trace.reward[n]) << ',' << trace.mode[n] << ','
           << format_double(trace.leak[n]) << '\n';
    }
}

void write_belief_csv(const std::vector<StepLeakage>& steps, std::ostream& os) {
    os << "n,d,entropy,leakage,map_state\n";
    for (size_t n = 0; n < steps.size(); ++n) {
        const StepLeakage& sl = steps[n];
        for (size_t d = 0; d < sl.deficit.size(); ++d) {
            os << n << ',' << d << ',' << format_double(sl.entropies[d]) << ','
               << format_double(sl.deficit[d]) << ',' << sl.map_states[d] << '\n';
        }
    }
}

void write_decision_csv(const std::vector<AdeDecision>& decisions, std::ostream& os) {
    os << "epoch,s,L_sem,L_per,xi_before,xi_after,interval\n";
    for (const AdeDecision& d : decisions) {
        os << d.epoch << ',' << d.state << ',' << format_double(d.l_sem) << ','
           << format_double(d.l_per) << ',' << d.xi_before << ',' << d.xi_after << ','
           << d.interval << '\n';
    }
}

}  // namespace tleak
