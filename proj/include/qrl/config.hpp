#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qrl/agent.hpp"
#include "qrl/environment.hpp"

namespace qrl {

struct ConfigError : std::runtime_error {
    explicit ConfigError(std::vector<std::string> problems)
        : std::runtime_error(join(problems)), errors(std::move(problems)) {}

    std::vector<std::string> errors;

    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid configuration:";
        for (const auto& e : v) s += "\n  - " + e;
        return s;
    }
};

enum class EnvironmentKind { one_winner, grid_world };

struct EnvironmentSpec {
    EnvironmentKind kind = EnvironmentKind::one_winner;
    // one_winner
    std::size_t n = 100;
    std::size_t winner = 0;
    // grid_world
    int width = 2, height = 2;
    int start_x = 0, start_y = 0;
    int goal_x = 1, goal_y = 1;
    std::size_t steps = 2;

    DseEnvironment make() const {
        if (kind == EnvironmentKind::one_winner) return make_one_winner(n, winner);
        return make_grid_world(width, height, start_x, start_y, goal_x, goal_y, steps);
    }
};

enum class Backend { abstract, photonic };

struct RunConfig {
    EnvironmentSpec environment;
    Strategy strategy = Strategy::hybrid;
    std::size_t n_agents = 10000;
    std::uint64_t master_seed = 42;
    double lambda = 2.0;
    std::size_t n_cap = 1;
    double switch_q = default_switch_threshold();
    double q_l = 0.37;
    std::size_t max_epochs = 1000;
    bool distribute_reward = true;
    Backend backend = Backend::abstract;
    double visibility = 1.0;
    std::string out_dir = "out";
    bool dump_policy = false;
    bool dump_ledger = false;

    AgentConfig agent_config() const {
        AgentConfig c;
        c.strategy = strategy;
        c.coherence_cap = n_cap;
        c.switch_threshold = switch_q;
        c.lambda = lambda;
        c.max_epochs = max_epochs;
        return c;
    }

    // Canonical text form; used for the summary echo and the config hash.
    std::string canonical_text() const {
        std::ostringstream os;
        os.precision(17);
        os << "[environment]\n";
        if (environment.kind == EnvironmentKind::one_winner) {
            os << "kind = one_winner\n"
               << "n = " << environment.n << "\n"
               << "winner = " << environment.winner << "\n";
        } else {
            os << "kind = grid_world\n"
               << "width = " << environment.width << "\n"
               << "height = " << environment.height << "\n"
               << "start_x = " << environment.start_x << "\n"
               << "start_y = " << environment.start_y << "\n"
               << "goal_x = " << environment.goal_x << "\n"
               << "goal_y = " << environment.goal_y << "\n"
               << "steps = " << environment.steps << "\n";
        }
        os << "[run]\n"
           << "strategy = " << to_string(strategy) << "\n"
           << "agents = " << n_agents << "\n"
           << "seed = " << master_seed << "\n"
           << "lambda = " << lambda << "\n"
           << "n_cap = " << n_cap << "\n"
           << "switch_q = " << switch_q << "\n"
           << "q_l = " << q_l << "\n"
           << "max_epochs = " << max_epochs << "\n"
           << "distribute_reward = " << (distribute_reward ? "true" : "false") << "\n"
           << "backend = " << (backend == Backend::abstract ? "abstract" : "photonic") << "\n"
           << "visibility = " << visibility << "\n"
           << "[output]\n"
           << "dir = " << out_dir << "\n"
           << "dump_policy = " << (dump_policy ? "true" : "false") << "\n"
           << "dump_ledger = " << (dump_ledger ? "true" : "false") << "\n";
        return os.str();
    }

    std::uint64_t hash() const {  // FNV-1a over the canonical text
        std::uint64_t h = 0xCBF29CE484222325ull;
        for (unsigned char c : canonical_text()) {
            h ^= c;
            h *= 0x100000001B3ull;
        }
        return h;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct ConfigParser {
    std::vector<std::string> errors;

    bool parse_bool(const std::string& key, const std::string& v, bool& out) {
        if (v == "true" || v == "1") { out = true; return true; }
        if (v == "false" || v == "0") { out = false; return true; }
        errors.push_back(key + ": expected true/false, got '" + v + "'");
        return false;
    }

    template <typename T>
    bool parse_unsigned(const std::string& key, const std::string& v, T& out) {
        try {
            std::size_t pos = 0;
            const unsigned long long x = std::stoull(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            out = static_cast<T>(x);
            return true;
        } catch (const std::exception&) {
            errors.push_back(key + ": expected a non-negative integer, got '" + v + "'");
            return false;
        }
    }

    bool parse_int(const std::string& key, const std::string& v, int& out) {
        try {
            std::size_t pos = 0;
            out = std::stoi(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return true;
        } catch (const std::exception&) {
            errors.push_back(key + ": expected an integer, got '" + v + "'");
            return false;
        }
    }

    bool parse_double(const std::string& key, const std::string& v, double& out) {
        try {
            std::size_t pos = 0;
            out = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return true;
        } catch (const std::exception&) {
            errors.push_back(key + ": expected a number, got '" + v + "'");
            return false;
        }
    }
};

}  // namespace detail

// Parses the flat-section key=value grammar documented in the README.
// Collects every violation instead of stopping at the first one.
inline RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    detail::ConfigParser p;
    std::string section;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                p.errors.push_back("line " + std::to_string(line_no) + ": malformed section header");
                continue;
            }
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section != "environment" && section != "run" && section != "output")
                p.errors.push_back("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            p.errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
            continue;
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (section == "environment") {
            if (key == "kind") {
                if (value == "one_winner") cfg.environment.kind = EnvironmentKind::one_winner;
                else if (value == "grid_world") cfg.environment.kind = EnvironmentKind::grid_world;
                else p.errors.push_back(qual + ": unknown environment kind '" + value + "'");
            } else if (key == "n") p.parse_unsigned(qual, value, cfg.environment.n);
            else if (key == "winner") p.parse_unsigned(qual, value, cfg.environment.winner);
            else if (key == "width") p.parse_int(qual, value, cfg.environment.width);
            else if (key == "height") p.parse_int(qual, value, cfg.environment.height);
            else if (key == "start_x") p.parse_int(qual, value, cfg.environment.start_x);
            else if (key == "start_y") p.parse_int(qual, value, cfg.environment.start_y);
            else if (key == "goal_x") p.parse_int(qual, value, cfg.environment.goal_x);
            else if (key == "goal_y") p.parse_int(qual, value, cfg.environment.goal_y);
            else if (key == "steps") p.parse_unsigned(qual, value, cfg.environment.steps);
            else p.errors.push_back("unknown key '" + qual + "'");
        } else if (section == "run") {
            if (key == "strategy") {
                if (value == "classical") cfg.strategy = Strategy::classical;
                else if (value == "quantum_only") cfg.strategy = Strategy::quantum_only;
                else if (value == "hybrid") cfg.strategy = Strategy::hybrid;
                else p.errors.push_back(qual + ": unknown strategy '" + value + "'");
            } else if (key == "agents") p.parse_unsigned(qual, value, cfg.n_agents);
            else if (key == "seed") p.parse_unsigned(qual, value, cfg.master_seed);
            else if (key == "lambda") p.parse_double(qual, value, cfg.lambda);
            else if (key == "n_cap") p.parse_unsigned(qual, value, cfg.n_cap);
            else if (key == "switch_q") p.parse_double(qual, value, cfg.switch_q);
            else if (key == "q_l") p.parse_double(qual, value, cfg.q_l);
            else if (key == "max_epochs") p.parse_unsigned(qual, value, cfg.max_epochs);
            else if (key == "distribute_reward") p.parse_bool(qual, value, cfg.distribute_reward);
            else if (key == "backend") {
                if (value == "abstract") cfg.backend = Backend::abstract;
                else if (value == "photonic") cfg.backend = Backend::photonic;
                else p.errors.push_back(qual + ": unknown backend '" + value + "'");
            } else if (key == "visibility") p.parse_double(qual, value, cfg.visibility);
            else p.errors.push_back("unknown key '" + qual + "'");
        } else if (section == "output") {
            if (key == "dir") cfg.out_dir = value;
            else if (key == "dump_policy") p.parse_bool(qual, value, cfg.dump_policy);
            else if (key == "dump_ledger") p.parse_bool(qual, value, cfg.dump_ledger);
            else p.errors.push_back("unknown key '" + qual + "'");
        } else {
            p.errors.push_back("key '" + key + "' outside any known section");
        }
    }

    // Range validation, reported together with parse problems.
    if (cfg.n_agents < 1) p.errors.push_back("run.agents: must be >= 1");
    if (cfg.max_epochs < 1) p.errors.push_back("run.max_epochs: must be >= 1");
    if (cfg.n_cap < 1) p.errors.push_back("run.n_cap: must be >= 1");
    if (cfg.lambda < 0.0) p.errors.push_back("run.lambda: must be non-negative");
    if (!(cfg.switch_q > 0.0 && cfg.switch_q < 1.0))
        p.errors.push_back("run.switch_q: must lie in (0,1)");
    if (!(cfg.q_l > 0.0 && cfg.q_l < 1.0)) p.errors.push_back("run.q_l: must lie in (0,1)");
    if (cfg.visibility < 0.0 || cfg.visibility > 1.0)
        p.errors.push_back("run.visibility: must lie in [0,1]");
    if (cfg.environment.kind == EnvironmentKind::one_winner &&
        cfg.environment.winner >= cfg.environment.n)
        p.errors.push_back("environment.winner: must be < n");
    if (cfg.backend == Backend::photonic) {
        if (cfg.environment.kind != EnvironmentKind::one_winner)
            p.errors.push_back("run.backend: photonic backend supports one_winner only");
        if (cfg.n_cap != 1)
            p.errors.push_back("run.backend: photonic backend supports n_cap = 1 only");
    }

    if (!p.errors.empty()) throw ConfigError(std::move(p.errors));
    return cfg;
}

}  // namespace qrl
