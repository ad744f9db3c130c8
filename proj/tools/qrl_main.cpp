// Command-line driver: runs ensembles, prints analytic predictors, compares
// strategies and compiles the epoch circuits onto the 4-mode MZI mesh.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qrl/config.hpp"
#include "qrl/ensemble.hpp"
#include "qrl/photonic.hpp"
#include "qrl/photonic_backend.hpp"
#include "qrl/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_dir;
    std::string strategy;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::size_t agents = 0;
    bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_path, "Configuration file (key = value sections)");
    cmd->add_option("--seed", opts.seed, "Master seed override")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--out", opts.out_dir, "Output directory override");
    cmd->add_option("--strategy", opts.strategy, "Strategy override")
        ->check(CLI::IsMember({"classical", "quantum_only", "hybrid"}));
    cmd->add_option("--agents", opts.agents, "Ensemble size override");
    cmd->add_flag("--quiet", opts.quiet, "Suppress progress output");
}

qrl::RunConfig load_config(const CommonOptions& opts) {
    std::string text;
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) throw qrl::ConfigError({"cannot open config file '" + opts.config_path + "'"});
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    qrl::RunConfig cfg = qrl::parse_config(text);
    if (opts.seed_set) cfg.master_seed = opts.seed;
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.agents > 0) cfg.n_agents = opts.agents;
    if (opts.strategy == "classical") cfg.strategy = qrl::Strategy::classical;
    else if (opts.strategy == "quantum_only") cfg.strategy = qrl::Strategy::quantum_only;
    else if (opts.strategy == "hybrid") cfg.strategy = qrl::Strategy::hybrid;
    return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

qrl::EnsembleStats run_configured_ensemble(const qrl::RunConfig& cfg,
                                           const qrl::DseEnvironment& env) {
    const qrl::AgentConfig agent_cfg = cfg.agent_config();
    if (cfg.backend == qrl::Backend::photonic) {
        return qrl::run_ensemble_with(
            [&cfg, agent_cfg](qrl::RandomStream rng) {
                qrl::PhotonicBackend backend(cfg.environment.n, cfg.environment.winner,
                                             cfg.visibility);
                return backend.run_agent(agent_cfg, std::move(rng));
            },
            qrl::to_string(agent_cfg.strategy), agent_cfg.max_epochs, cfg.n_agents,
            cfg.master_seed, cfg.q_l, 0, cfg.distribute_reward);
    }
    return qrl::run_ensemble(agent_cfg, env, cfg.n_agents, cfg.master_seed, cfg.q_l, 0,
                             cfg.distribute_reward);
}

qrl::LearningTime learning_time_with_warning(const qrl::RunConfig& cfg,
                                             const qrl::EnsembleStats& stats, bool quiet) {
    if (cfg.q_l > cfg.switch_q && !quiet)
        std::cerr << "warning: Q_L exceeds the switch threshold Q; quantum and classical "
                     "agents need the same time beyond Q\n";
    return qrl::learning_time(stats, cfg.q_l, std::max(cfg.switch_q, cfg.q_l));
}

int cmd_run(const CommonOptions& opts) {
    const qrl::RunConfig cfg = load_config(opts);
    const qrl::DseEnvironment env = cfg.environment.make();
    const qrl::EnsembleStats stats = run_configured_ensemble(cfg, env);
    const qrl::LearningTime lt = learning_time_with_warning(cfg, stats, opts.quiet);

    qrl::PredictorReport predictors;
    const bool have_predictors =
        cfg.environment.kind == qrl::EnvironmentKind::one_winner && cfg.lambda > 0.0;
    if (have_predictors)
        predictors = qrl::predictor_report(cfg.environment.n, cfg.lambda, cfg.q_l, cfg.n_cap);

    std::filesystem::create_directories(cfg.out_dir);
    write_file(std::filesystem::path(cfg.out_dir) / "curve.csv", qrl::curve_csv(stats));
    write_file(std::filesystem::path(cfg.out_dir) / "summary.txt",
               qrl::summary_text(cfg, stats, lt, have_predictors ? &predictors : nullptr));

    if (cfg.dump_ledger || cfg.dump_policy) {
        // First agent, reproduced from its own substream.
        qrl::EpochLedger ledger =
            qrl::run_agent(cfg.agent_config(), env, qrl::RandomStream::derive(cfg.master_seed, 0));
        if (cfg.dump_ledger)
            write_file(std::filesystem::path(cfg.out_dir) / "ledger.csv",
                       qrl::ledger_dump(ledger));
        if (cfg.dump_policy) {
            qrl::Policy policy(env.sequence_count(), cfg.lambda);
            for (const auto& [seq, epoch] : ledger.trace().history) policy.update(seq, 1);
            write_file(std::filesystem::path(cfg.out_dir) / "policy.csv",
                       qrl::policy_dump(policy));
        }
    }

    if (!opts.quiet) {
        std::cout << "strategy " << stats.strategy << ": mean_T = " << lt.mean
                  << " +/- " << lt.std_err << " (censored " << lt.censored << ")\n"
                  << "outputs written to " << cfg.out_dir << "\n";
    }
    return kExitOk;
}

int cmd_predict(const CommonOptions& opts) {
    const qrl::RunConfig cfg = load_config(opts);
    if (cfg.environment.kind != qrl::EnvironmentKind::one_winner)
        throw qrl::ConfigError({"predict supports the one_winner environment only"});
    if (cfg.lambda <= 0.0) throw qrl::ConfigError({"run.lambda: policy never learns"});

    const qrl::QSchedule sched = qrl::q_schedule(cfg.environment.n, cfg.lambda, cfg.q_l);
    const qrl::PredictorReport r =
        qrl::predictor_report(cfg.environment.n, cfg.lambda, cfg.q_l, cfg.n_cap);

    std::cout << "q schedule (J = " << r.rewards << "):\n";
    for (std::size_t j = 0; j < sched.q.size(); ++j)
        std::cout << "  q_" << (j + 1) << " = " << qrl::format_double(sched.q[j]) << "\n";
    std::cout << "classical learning time <T>_C = " << qrl::format_double(r.classical) << "\n"
              << "quantum learning time <T(J," << cfg.n_cap
              << ")>_Q = " << qrl::format_double(r.quantum)
              << (r.quantum_valid ? "" : "  [outside (2n+1) xi <= pi/2 validity region]") << "\n"
              << "unbounded quantum time sum alpha/sqrt(q_j) = " << qrl::format_double(r.unbounded)
              << " (Cauchy-Schwarz bound " << qrl::format_double(r.bound) << ")\n"
              << "Q_n = " << qrl::format_double(r.q_n) << "\n"
              << "<T>_C/(4n) = " << qrl::format_double(r.approx)
              << "  [small-angle estimate, accurate only for n >> 1 and small xi_J]\n";
    return kExitOk;
}

int cmd_compare(const CommonOptions& opts) {
    qrl::RunConfig cfg = load_config(opts);
    const qrl::DseEnvironment env = cfg.environment.make();

    cfg.strategy = qrl::Strategy::classical;
    const qrl::EnsembleStats classical = run_configured_ensemble(cfg, env);
    const qrl::LearningTime lt_c = learning_time_with_warning(cfg, classical, opts.quiet);
    cfg.strategy = qrl::Strategy::hybrid;
    const qrl::EnsembleStats hybrid = run_configured_ensemble(cfg, env);
    const qrl::LearningTime lt_h = learning_time_with_warning(cfg, hybrid, true);

    std::filesystem::create_directories(cfg.out_dir);
    write_file(std::filesystem::path(cfg.out_dir) / "classical.csv", qrl::curve_csv(classical));
    write_file(std::filesystem::path(cfg.out_dir) / "hybrid.csv", qrl::curve_csv(hybrid));

    std::string summary;
    summary += "classical mean_T = " + qrl::format_double(lt_c.mean) + " +/- " +
               qrl::format_double(lt_c.std_err) + " (censored " + std::to_string(lt_c.censored) +
               ")\n";
    summary += "hybrid mean_T = " + qrl::format_double(lt_h.mean) + " +/- " +
               qrl::format_double(lt_h.std_err) + " (censored " + std::to_string(lt_h.censored) +
               ")\n";
    if (lt_h.mean > 0.0)
        summary += "speed-up ratio = " + qrl::format_double(lt_c.mean / lt_h.mean) + "\n";
    summary += "\n# resolved configuration (strategy field cycled internally)\n";
    summary += cfg.canonical_text();
    write_file(std::filesystem::path(cfg.out_dir) / "compare_summary.txt", summary);

    if (!opts.quiet) std::cout << summary;
    return kExitOk;
}

int cmd_compile(const std::string& kind, double xi, double visibility, bool quiet) {
    const qrl::EpochCircuit circuit =
        kind == "classical" ? qrl::EpochCircuit::classical : qrl::EpochCircuit::quantum;
    const qrl::ModeEncoding enc;
    const qrl::MziMesh mesh = qrl::compile_epoch_circuit(circuit, xi, enc);

    std::printf("index,mode_pair,theta,phi\n");
    for (std::size_t i = 0; i < mesh.settings.size(); ++i) {
        const auto& s = mesh.settings[i];
        std::printf("%zu,(%zu;%zu),%.9f,%.9f\n", i, s.mode, s.mode + 1, s.theta, s.phi);
    }

    const auto ideal = qrl::simulate_with_visibility(mesh, enc.input_mode(), 1.0);
    const auto noisy = qrl::simulate_with_visibility(mesh, enc.input_mode(), visibility);
    auto pair_sum = [](const std::array<double, 4>& p, std::array<std::size_t, 2> modes) {
        return p[modes[0]] + p[modes[1]];
    };
    if (!quiet) {
        if (circuit == qrl::EpochCircuit::classical) {
            std::printf("D1 ideal = %.9f  at V=%.4f = %.9f\n", pair_sum(ideal, enc.d1_modes()),
                        visibility, pair_sum(noisy, enc.d1_modes()));
            std::printf("D2 ideal = %.9f  at V=%.4f = %.9f\n", pair_sum(ideal, enc.d2_modes()),
                        visibility, pair_sum(noisy, enc.d2_modes()));
        } else {
            std::printf("D3 ideal = %.9f  at V=%.4f = %.9f\n", pair_sum(ideal, enc.d3_modes()),
                        visibility, pair_sum(noisy, enc.d3_modes()));
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid quantum-classical reinforcement-learning simulator"};
    app.require_subcommand(1);

    CommonOptions run_opts, predict_opts, compare_opts;
    auto* run = app.add_subcommand("run", "Run one ensemble and write curve + summary");
    add_common(run, run_opts);
    auto* predict = app.add_subcommand("predict", "Print analytic learning-time predictors");
    add_common(predict, predict_opts);
    auto* compare =
        app.add_subcommand("compare", "Run classical and hybrid with a shared seed base");
    add_common(compare, compare_opts);

    std::string compile_kind = "quantum";
    double compile_xi = std::asin(0.1);
    double compile_visibility = 1.0;
    bool compile_quiet = false;
    auto* compile = app.add_subcommand("compile", "Compile an epoch circuit onto the MZI mesh");
    compile->add_option("--kind", compile_kind, "classical or quantum")
        ->check(CLI::IsMember({"classical", "quantum"}));
    compile->add_option("--xi", compile_xi, "Preparation angle xi in (0, pi/2)");
    compile->add_option("--visibility", compile_visibility, "Interference visibility V in [0,1]");
    compile->add_flag("--quiet", compile_quiet, "Table only, no detector probabilities");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_opts);
        if (predict->parsed()) return cmd_predict(predict_opts);
        if (compare->parsed()) return cmd_compare(compare_opts);
        if (compile->parsed())
            return cmd_compile(compile_kind, compile_xi, compile_visibility, compile_quiet);
    } catch (const qrl::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return kExitOk;
}
