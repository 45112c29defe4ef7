#include "tleak/sweep.hpp"

#include "tleak/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace tleak {

namespace {

SweepRow run_cell(const SweepSpec& spec, double beta, double theta, int d_max,
                  PolicyKind policy) {
    SweepRow row;
    row.beta = beta;
    row.theta = theta;
    row.d_max = d_max;
    row.policy = policy;
    try {
        EpisodeConfig cfg;
        cfg.size = spec.size;
        cfg.theta = theta;
        cfg.beta = beta;
        cfg.gamma = spec.gamma;
        cfg.t_max = spec.t_max;
        cfg.d_max = d_max;
        cfg.kind = policy;
        cfg.l_min = spec.l_min;
        cfg.l_max = spec.l_max;
        cfg.n_steps = spec.steps;
        cfg.epsilon = spec.epsilon;
        cfg.seed = spec.seed;

        const EpisodeContext ctx = prepare_episode(cfg);

        std::vector<MetricsReport> reports;
        reports.reserve(spec.episodes);
        for (int ep = 0; ep < spec.episodes; ++ep) {
            const EpisodeTrace trace = run_episode(ctx, cfg, ep);
            reports.push_back(compute_metrics(trace, cfg.epsilon, cfg.eta_b_excludes_tx));
        }

        const double n_ep = static_cast<double>(reports.size());
        for (const MetricsReport& rep : reports) {
            row.mean_reward += rep.mean_reward / n_ep;
            row.mean_leakage += rep.mean_leakage / n_ep;
            row.max_leakage = std::max(row.max_leakage, rep.max_leakage);
            row.eta_b += rep.eta_b / n_ep;
            row.eta_e += rep.eta_e / n_ep;
            row.fallback_count += rep.fallback_count;
        }
        if (reports.size() > 1) {
            double ss = 0.0;
            for (const MetricsReport& rep : reports)
                ss += (rep.mean_reward - row.mean_reward) * (rep.mean_reward - row.mean_reward);
            row.sd_reward = std::sqrt(ss / (n_ep - 1.0));
        }

        // Interval-map characterization of the cell: the fixed period for
        // pp, the goal-oriented map otherwise (ade switches between them).
        const Eigen::VectorXi& sigma =
            policy == PolicyKind::Periodic ? ctx.periodic.sigma : ctx.goal.sigma;
        const PolicyAnalytics analytics = policy_analytics(ctx.chain, sigma);
        row.timing_entropy = analytics.timing_entropy;
        row.tx_prob = analytics.transmission_prob;
    } catch (const std::exception& e) {
        row.error = e.what();
        std::replace(row.error.begin(), row.error.end(), ',', ';');
        std::replace(row.error.begin(), row.error.end(), '\n', ' ');
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.episodes < 1) throw std::invalid_argument("run_sweep: episodes must be >= 1");
    if (spec.betas.empty() || spec.thetas.empty() || spec.d_values.empty() ||
        spec.policies.empty())
        throw std::invalid_argument("run_sweep: empty grid dimension");

    struct Cell {
        double beta;
        double theta;
        int d_max;
        PolicyKind policy;
    };
    std::vector<Cell> cells;
    for (double beta : spec.betas)
        for (double theta : spec.thetas)
            for (int d : spec.d_values)
                for (PolicyKind policy : spec.policies) cells.push_back({beta, theta, d, policy});

    std::vector<SweepRow> rows(cells.size());
    unsigned jobs = spec.jobs > 0 ? static_cast<unsigned>(spec.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, cells.size());

    std::atomic<size_t> cursor{0};
    auto worker = [&] {
        for (size_t i = cursor.fetch_add(1); i < cells.size(); i = cursor.fetch_add(1))
            rows[i] = run_cell(spec, cells[i].beta, cells[i].theta, cells[i].d_max,
                               cells[i].policy);
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return std::make_tuple(a.beta, a.theta, a.d_max, std::string(to_string(a.policy))) <
               std::make_tuple(b.beta, b.theta, b.d_max, std::string(to_string(b.policy)));
    });
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "beta,theta,D,policy,mean_reward,sd_reward,mean_leakage,max_leakage,eta_B,eta_E,"
          "timing_entropy,tx_prob,fallback_count,error\n";
    for (const SweepRow& r : rows) {
        os << format_double(r.beta) << ',' << format_double(r.theta) << ',' << r.d_max << ','
           << to_string(r.policy) << ',' << format_double(r.mean_reward) << ','
           << format_double(r.sd_reward) << ',' << format_double(r.mean_leakage) << ','
           << format_double(r.max_leakage) << ',' << format_double(r.eta_b) << ','
           << format_double(r.eta_e) << ',' << format_double(r.timing_entropy) << ','
           << format_double(r.tx_prob) << ',' << r.fallback_count << ',' << r.error << '\n';
    }
}

void write_sweep_json(const std::vector<SweepRow>& rows, std::ostream& os) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepRow& r : rows) {
        arr.push_back({{"beta", r.beta},
                       {"theta", r.theta},
                       {"D", r.d_max},
                       {"policy", to_string(r.policy)},
                       {"mean_reward", r.mean_reward},
                       {"sd_reward", r.sd_reward},
                       {"mean_leakage", r.mean_leakage},
                       {"max_leakage", r.max_leakage},
                       {"eta_B", r.eta_b},
                       {"eta_E", r.eta_e},
                       {"timing_entropy", r.timing_entropy},
                       {"tx_prob", r.tx_prob},
                       {"fallback_count", r.fallback_count},
                       {"error", r.error}});
    }
    os << arr.dump(2) << '\n';
}

bool run_sweep_to_file(const SweepSpec& spec) {
    const std::vector<SweepRow> rows = run_sweep(spec);
    std::ofstream os(spec.out);
    if (!os) throw std::runtime_error("run_sweep: cannot open output file " + spec.out);
    if (spec.format == "json")
        write_sweep_json(rows, os);
    else if (spec.format == "csv")
        write_sweep_csv(rows, os);
    else
        throw std::invalid_argument("run_sweep: unknown format " + spec.format);
    return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.ok(); });
}

void emit_trace(const EpisodeConfig& cfg, const std::string& out_path,
                const std::string& beliefs_path, const std::string& decisions_path,
                const std::string& metrics_path) {
    const EpisodeTrace trace = run_episode(cfg);

    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("emit_trace: cannot open output file " + out_path);
    write_trace_csv(trace, cfg, os);

    if (!beliefs_path.empty()) {
        std::ofstream bs(beliefs_path);
        if (!bs) throw std::runtime_error("emit_trace: cannot open belief file " + beliefs_path);
        write_belief_csv(trace.step_detail, bs);
    }
    if (!decisions_path.empty()) {
        std::ofstream ds(decisions_path);
        if (!ds)
            throw std::runtime_error("emit_trace: cannot open decision file " + decisions_path);
        write_decision_csv(trace.decisions, ds);
    }
    if (!metrics_path.empty()) {
        std::ofstream ms(metrics_path);
        if (!ms) throw std::runtime_error("emit_trace: cannot open metrics file " + metrics_path);
        ms << to_json(compute_metrics(trace, cfg.epsilon, cfg.eta_b_excludes_tx), cfg).dump(2)
           << '\n';
    }
}

}  // namespace tleak
