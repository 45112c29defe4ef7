// Experiment driver: sweeps the (beta, theta, D, policy) grid, dumps
// single-episode traces, prints solved policies, and runs the brute-force
// verification suites.
#include "tleak/io.hpp"
#include "tleak/oracle.hpp"
#include "tleak/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

using tleak::SweepSpec;

void apply_config_file(SweepSpec& spec, const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("--config", "cannot open " + path);
    nlohmann::json j;
    is >> j;
    if (j.contains("beta")) spec.betas = j["beta"].get<std::vector<double>>();
    if (j.contains("theta")) spec.thetas = j["theta"].get<std::vector<double>>();
    if (j.contains("dmax")) spec.d_values = j["dmax"].get<std::vector<int>>();
    if (j.contains("policy")) {
        spec.policies.clear();
        for (const auto& name : j["policy"])
            spec.policies.push_back(tleak::policy_kind_from_string(name.get<std::string>()));
    }
    if (j.contains("episodes")) spec.episodes = j["episodes"].get<int>();
    if (j.contains("steps")) spec.steps = j["steps"].get<int>();
    if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("size")) spec.size = j["size"].get<int>();
    if (j.contains("tmax")) spec.t_max = j["tmax"].get<int>();
    if (j.contains("gamma")) spec.gamma = j["gamma"].get<double>();
    if (j.contains("lmin")) spec.l_min = j["lmin"].get<double>();
    if (j.contains("lmax")) spec.l_max = j["lmax"].get<double>();
    if (j.contains("epsilon")) spec.epsilon = j["epsilon"].get<double>();
    if (j.contains("jobs")) spec.jobs = j["jobs"].get<int>();
    if (j.contains("out")) spec.out = j["out"].get<std::string>();
    if (j.contains("format")) spec.format = j["format"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Timing-leakage simulator for goal-oriented update scheduling"};
    app.require_subcommand(1);

    // ---- sweep ----
    auto* sweep_cmd = app.add_subcommand("sweep", "Run the experiment grid");
    std::string config_path;
    SweepSpec spec;
    std::vector<std::string> policy_names;
    sweep_cmd->add_option("--config", config_path, "JSON config file (flags override it)");
    auto* beta_opt = sweep_cmd->add_option("--beta", spec.betas, "Transmission cost grid");
    auto* theta_opt = sweep_cmd->add_option("--theta", spec.thetas, "Density decay grid");
    auto* dmax_opt = sweep_cmd->add_option("--dmax", spec.d_values, "Delay window grid");
    auto* policy_opt =
        sweep_cmd->add_option("--policy", policy_names, "Policies to run (mpi, pp, ade)");
    auto* episodes_opt = sweep_cmd->add_option("--episodes", spec.episodes, "Episodes per cell");
    auto* steps_opt = sweep_cmd->add_option("--steps", spec.steps, "Steps per episode");
    auto* seed_opt = sweep_cmd->add_option("--seed", spec.seed, "Master seed");
    auto* size_opt = sweep_cmd->add_option("--size", spec.size, "Number of source states");
    auto* tmax_opt = sweep_cmd->add_option("--tmax", spec.t_max, "Maximum interval");
    auto* gamma_opt = sweep_cmd->add_option("--gamma", spec.gamma, "Discount factor");
    auto* lmin_opt = sweep_cmd->add_option("--lmin", spec.l_min, "Lower leakage threshold");
    auto* lmax_opt = sweep_cmd->add_option("--lmax", spec.l_max, "Upper leakage threshold");
    auto* eps_opt = sweep_cmd->add_option("--epsilon", spec.epsilon, "Leakage weight in R_B");
    auto* jobs_opt = sweep_cmd->add_option("--jobs", spec.jobs, "Concurrent cells (0 = auto)");
    auto* out_opt = sweep_cmd->add_option("--out", spec.out, "Output file");
    auto* format_opt = sweep_cmd->add_option("--format", spec.format, "csv or json");

    // ---- trace ----
    auto* trace_cmd = app.add_subcommand("trace", "Emit one episode as CSV");
    tleak::EpisodeConfig ep;
    std::string trace_policy = "mpi";
    std::string trace_out = "trace.csv";
    std::string beliefs_out;
    std::string decisions_out;
    std::string metrics_out;
    trace_cmd->add_option("--beta", ep.beta, "Transmission cost");
    trace_cmd->add_option("--theta", ep.theta, "Density decay");
    trace_cmd->add_option("--dmax", ep.d_max, "Delay window");
    trace_cmd->add_option("--policy", trace_policy, "mpi, pp or ade");
    trace_cmd->add_option("--seed", ep.seed, "Episode seed");
    trace_cmd->add_option("--steps", ep.n_steps, "Steps");
    trace_cmd->add_option("--size", ep.size, "Number of source states");
    trace_cmd->add_option("--tmax", ep.t_max, "Maximum interval");
    trace_cmd->add_option("--gamma", ep.gamma, "Discount factor");
    trace_cmd->add_option("--lmin", ep.l_min, "Lower leakage threshold");
    trace_cmd->add_option("--lmax", ep.l_max, "Upper leakage threshold");
    trace_cmd->add_option("--epsilon", ep.epsilon, "Leakage weight in R_B");
    trace_cmd->add_option("--out", trace_out, "Trace CSV path");
    trace_cmd->add_option("--beliefs", beliefs_out, "Also write the per-(n,d) belief CSV");
    trace_cmd->add_option("--decisions", decisions_out, "Also write the controller decision CSV");
    trace_cmd->add_option("--metrics", metrics_out, "Also write the metrics JSON");

    // ---- policy ----
    auto* policy_cmd = app.add_subcommand("policy", "Solve and print a policy");
    tleak::EpisodeConfig pc;
    std::string policy_out;
    policy_cmd->add_option("--beta", pc.beta, "Transmission cost");
    policy_cmd->add_option("--theta", pc.theta, "Density decay");
    policy_cmd->add_option("--size", pc.size, "Number of source states");
    policy_cmd->add_option("--tmax", pc.t_max, "Maximum interval");
    policy_cmd->add_option("--gamma", pc.gamma, "Discount factor");
    policy_cmd->add_option("--out", policy_out, "Write JSON here instead of stdout");

    // ---- oracle ----
    auto* oracle_cmd = app.add_subcommand("oracle", "Run the brute-force verification suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep_cmd) {
            if (!config_path.empty()) {
                // Re-parse after the file so explicit flags win.
                SweepSpec from_file;
                apply_config_file(from_file, config_path);
                if (!*beta_opt) spec.betas = from_file.betas;
                if (!*theta_opt) spec.thetas = from_file.thetas;
                if (!*dmax_opt) spec.d_values = from_file.d_values;
                if (!*policy_opt) spec.policies = from_file.policies;
                if (!*episodes_opt) spec.episodes = from_file.episodes;
                if (!*steps_opt) spec.steps = from_file.steps;
                if (!*seed_opt) spec.seed = from_file.seed;
                if (!*size_opt) spec.size = from_file.size;
                if (!*tmax_opt) spec.t_max = from_file.t_max;
                if (!*gamma_opt) spec.gamma = from_file.gamma;
                if (!*lmin_opt) spec.l_min = from_file.l_min;
                if (!*lmax_opt) spec.l_max = from_file.l_max;
                if (!*eps_opt) spec.epsilon = from_file.epsilon;
                if (!*jobs_opt) spec.jobs = from_file.jobs;
                if (!*out_opt) spec.out = from_file.out;
                if (!*format_opt) spec.format = from_file.format;
            }
            if (*policy_opt) {
                spec.policies.clear();
                for (const std::string& name : policy_names)
                    spec.policies.push_back(tleak::policy_kind_from_string(name));
            }
            const bool all_ok = tleak::run_sweep_to_file(spec);
            std::cout << "wrote " << spec.out << (all_ok ? "" : " (with cell errors)") << "\n";
            return all_ok ? 0 : 1;
        }

        if (*trace_cmd) {
            ep.kind = tleak::policy_kind_from_string(trace_policy);
            tleak::emit_trace(ep, trace_out, beliefs_out, decisions_out, metrics_out);
            std::cout << "wrote " << trace_out << "\n";
            return 0;
        }

        if (*policy_cmd) {
            const tleak::MarkovChain chain = tleak::build_chain(pc.size, pc.theta);
            const tleak::SchedulingPolicy solved =
                tleak::solve_optimal_policy(chain, pc.beta, pc.gamma, pc.t_max);
            const tleak::SchedulingPolicy periodic =
                tleak::tune_periodic(chain, pc.beta, pc.t_max);
            nlohmann::json j = tleak::to_json(solved);
            j["analytics"] = tleak::to_json(tleak::policy_analytics(chain, solved.sigma));
            j["tuned_period"] = periodic.period;
            if (policy_out.empty()) {
                std::cout << j.dump(2) << "\n";
            } else {
                std::ofstream os(policy_out);
                if (!os) throw std::runtime_error("cannot open " + policy_out);
                os << j.dump(2) << "\n";
            }
            return 0;
        }

        if (*oracle_cmd) return tleak::run_oracle_suites(std::cout) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
