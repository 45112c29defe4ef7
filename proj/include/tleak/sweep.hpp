#pragma once

#include "tleak/sim.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace tleak {

// Full experiment grid: the cross product of betas, thetas, delay windows
// and policies, each cell averaged over `episodes` seeded runs.
struct SweepSpec {
    std::vector<double> betas{0.2, 0.5, 1.0, 2.0};
    std::vector<double> thetas{1.0, 8.0, 32.0, 128.0};
    std::vector<int> d_values{5};
    std::vector<PolicyKind> policies{PolicyKind::GoalOriented, PolicyKind::Periodic,
                                     PolicyKind::Adaptive};
    int episodes = 10;
    int steps = 200;
    std::uint64_t seed = 1;
    int size = 30;
    int t_max = 10;
    double gamma = 0.95;
    double l_min = 0.4;
    double l_max = 0.6;
    double epsilon = 0.0;
    int jobs = 0;  // 0 = hardware concurrency
    std::string out = "sweep.csv";
    std::string format = "csv";  // csv | json
};

struct SweepRow {
    double beta = 0.0;
    double theta = 0.0;
    int d_max = 0;
    PolicyKind policy = PolicyKind::GoalOriented;
    double mean_reward = 0.0;
    double sd_reward = 0.0;
    double mean_leakage = 0.0;
    double max_leakage = 0.0;
    double eta_b = 0.0;
    double eta_e = 0.0;
    double timing_entropy = 0.0;  // of the cell's base interval map
    double tx_prob = 0.0;
    long fallback_count = 0;
    std::string error;  // empty on success

    bool ok() const { return error.empty(); }
};

// Runs every cell (concurrently up to spec.jobs) and returns rows sorted by
// (beta, theta, D, policy). A failing cell yields a row with `error` set;
// the sweep itself never aborts.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os);
void write_sweep_json(const std::vector<SweepRow>& rows, std::ostream& os);

// Convenience: run, write to spec.out in spec.format. Returns true when
// every cell succeeded.
bool run_sweep_to_file(const SweepSpec& spec);

// Single-episode trace writer behind the `trace` subcommand; optional
// belief and decision logs land next to the main CSV when paths are given.
void emit_trace(const EpisodeConfig& cfg, const std::string& out_path,
                const std::string& beliefs_path = "", const std::string& decisions_path = "",
                const std::string& metrics_path = "");

}  // namespace tleak
