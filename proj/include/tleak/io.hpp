#pragma once

#include "tleak/markov.hpp"
#include "tleak/policy.hpp"
#include "tleak/sim.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace tleak {

// Shortest round-trip decimal form; keeps CSV output byte-stable.
std::string format_double(double v);

nlohmann::json to_json(const MarkovChain& chain);
MarkovChain chain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SchedulingPolicy& policy);
SchedulingPolicy policy_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PolicyAnalytics& analytics);
nlohmann::json to_json(const MetricsReport& report, const EpisodeConfig& cfg);

// Per-step episode CSV: n,s,a,s_hat,r,xi,leakage. The leakage thresholds
// ride along as comment lines so plots can draw them.
void write_trace_csv(const EpisodeTrace& trace, const EpisodeConfig& cfg, std::ostream& os);

// Eavesdropper belief trace, one row per (n, d): n,d,entropy,leakage,map_state.
void write_belief_csv(const std::vector<StepLeakage>& steps, std::ostream& os);

// Adaptive-controller decision log: epoch,s,L_sem,L_per,xi_before,xi_after,interval.
void write_decision_csv(const std::vector<AdeDecision>& decisions, std::ostream& os);

}  // namespace tleak
