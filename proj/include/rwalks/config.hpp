#pragma once

// Line-oriented experiment configuration: one `key = value` per line,
// `#` comments, optional bracketed section headers (cosmetic grouping).
// Validation collects every error with its line number instead of stopping
// at the first.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwalks {

enum class ExperimentKind {
    TwoPlayerUrn,
    MultiWalkerLine,
    LambdaStarLine,
    LambdaStarCycle,
    LambdaPlusLine,
    TransientEnv,
    Polya,
    ReinforcedUrn,
    RwreAnalysis,
    OdeTriangle,
    CouplingCheck,
    DecayProbe,
};

inline const std::vector<std::pair<std::string, ExperimentKind>>& experiment_kinds() {
    static const std::vector<std::pair<std::string, ExperimentKind>> kinds{
        {"two-player-urn", ExperimentKind::TwoPlayerUrn},
        {"multi-walker-line", ExperimentKind::MultiWalkerLine},
        {"lambda-star-line", ExperimentKind::LambdaStarLine},
        {"lambda-star-cycle", ExperimentKind::LambdaStarCycle},
        {"lambda-plus-line", ExperimentKind::LambdaPlusLine},
        {"transient-env", ExperimentKind::TransientEnv},
        {"polya", ExperimentKind::Polya},
        {"reinforced-urn", ExperimentKind::ReinforcedUrn},
        {"rwre-analysis", ExperimentKind::RwreAnalysis},
        {"ode-triangle", ExperimentKind::OdeTriangle},
        {"coupling-check", ExperimentKind::CouplingCheck},
        {"decay-probe", ExperimentKind::DecayProbe},
    };
    return kinds;
}

inline std::string kind_name(ExperimentKind k) {
    for (const auto& [name, kind] : experiment_kinds())
        if (kind == k) return name;
    return "?";
}

struct ConfigError {
    int line;
    std::string message;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Polya;
    std::uint64_t seed = 0;
    std::uint64_t replicates = 1;
    std::uint64_t steps = 1000;
    std::optional<std::uint64_t> full_replicates; // used under --full
    std::optional<std::uint64_t> full_steps;
    std::string output = ""; // output file name; empty = derived from kind

    std::vector<double> lambdas{1.0};   // grids allowed where meaningful
    std::string scheduler = "uniform";  // two-player-urn: uniform | alternating | single
    int walkers = 2;                    // multi-walker-line
    double a = 1.0;                     // initial weights / urn contents
    double b = 1.0;
    double white = 1.0, black = 1.0, delta = 2.0;            // polya
    int mu = 3, nu = 2;                                       // reinforced-urn
    double w0 = 1.0, b0 = 1.0;
    std::int64_t range = 200;                                 // environment half-range
    std::string law = "additive-bias";                        // rwre-analysis
    double alpha = 1.0, beta = 1.0;                           // iid law
    std::int64_t cycle_len = 3;                               // lambda-star-cycle
    std::vector<double> initial_weights{1.0, 1.0, 1.0};       // cycle / ode start
    std::vector<double> c0{1.0 / 3, 1.0 / 3, 1.0 / 3};        // ode-triangle
    double horizon = 50.0;                                    // ode time
    double step_size = 1e-3;
    std::uint64_t store_every = 100;
    int degree_bound = 3;                                     // coupling K
    int path_len = 3;                                         // coupling |gamma|
    double s_exponent = 0.2;                                  // decay probe
    std::int64_t radius = 6;

    std::uint64_t effective_steps(bool full) const {
        return full && full_steps ? *full_steps : steps;
    }
    std::uint64_t effective_replicates(bool full) const {
        return full && full_replicates ? *full_replicates : replicates;
    }
};

struct ParseResult {
    std::optional<ExperimentConfig> config;
    std::vector<ConfigError> errors;

    bool ok() const { return config.has_value() && errors.empty(); }
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline std::vector<double> parse_double_list(const std::string& v, bool& ok) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    ok = true;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) ok = false;
        } catch (...) {
            ok = false;
        }
    }
    if (out.empty()) ok = false;
    return out;
}

} // namespace detail

// Parse and validate; returns the config together with every error found.
inline ParseResult parse_config(const std::string& text) {
    ParseResult result;
    ExperimentConfig cfg;
    std::vector<ConfigError>& errors = result.errors;
    bool kind_seen = false;

    std::map<std::string, std::pair<int, std::string>> entries; // key -> (line, value)
    {
        std::stringstream ss(text);
        std::string raw;
        int line_no = 0;
        while (std::getline(ss, raw)) {
            ++line_no;
            std::string line = raw;
            auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = detail::trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']')
                    errors.push_back({line_no, "unterminated section header"});
                continue; // sections are cosmetic
            }
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                errors.push_back({line_no, "expected `key = value`"});
                continue;
            }
            std::string key = detail::trim(line.substr(0, eq));
            std::string value = detail::trim(line.substr(eq + 1));
            if (key.empty() || value.empty()) {
                errors.push_back({line_no, "empty key or value"});
                continue;
            }
            if (entries.count(key))
                errors.push_back({line_no, "duplicate key `" + key + "`"});
            entries[key] = {line_no, value};
        }
    }

    auto take = [&](const std::string& key) -> std::optional<std::pair<int, std::string>> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        auto v = it->second;
        entries.erase(it);
        return v;
    };
    auto parse_u64 = [&](const std::string& key, std::uint64_t& dst) {
        if (auto e = take(key)) {
            try {
                long long v = std::stoll(e->second);
                if (v < 0) throw std::out_of_range("negative");
                dst = static_cast<std::uint64_t>(v);
            } catch (...) {
                errors.push_back({e->first, key + ": expected a nonnegative integer"});
            }
        }
    };
    auto parse_i64 = [&](const std::string& key, std::int64_t& dst) {
        if (auto e = take(key)) {
            try {
                dst = std::stoll(e->second);
            } catch (...) {
                errors.push_back({e->first, key + ": expected an integer"});
            }
        }
    };
    auto parse_int = [&](const std::string& key, int& dst) {
        std::int64_t v = dst;
        parse_i64(key, v);
        dst = static_cast<int>(v);
    };
    auto parse_double = [&](const std::string& key, double& dst) {
        if (auto e = take(key)) {
            try {
                dst = std::stod(e->second);
            } catch (...) {
                errors.push_back({e->first, key + ": expected a number"});
            }
        }
    };
    auto parse_list = [&](const std::string& key, std::vector<double>& dst) {
        if (auto e = take(key)) {
            bool ok = false;
            auto v = detail::parse_double_list(e->second, ok);
            if (ok) dst = v;
            else errors.push_back({e->first, key + ": expected a comma-separated number list"});
        }
    };
    auto parse_string = [&](const std::string& key, std::string& dst) {
        if (auto e = take(key)) dst = e->second;
    };

    if (auto e = take("kind")) {
        kind_seen = true;
        bool found = false;
        for (const auto& [name, kind] : experiment_kinds()) {
            if (name == e->second) {
                cfg.kind = kind;
                found = true;
                break;
            }
        }
        if (!found) errors.push_back({e->first, "unknown experiment kind `" + e->second + "`"});
    } else {
        errors.push_back({0, "missing required key `kind`"});
    }

    parse_u64("seed", cfg.seed);
    parse_u64("replicates", cfg.replicates);
    parse_u64("steps", cfg.steps);
    {
        std::uint64_t tmp = 0;
        if (entries.count("full_steps")) {
            parse_u64("full_steps", tmp);
            cfg.full_steps = tmp;
        }
        if (entries.count("full_replicates")) {
            parse_u64("full_replicates", tmp);
            cfg.full_replicates = tmp;
        }
    }
    parse_string("output", cfg.output);
    parse_list("lambda", cfg.lambdas);
    parse_string("scheduler", cfg.scheduler);
    parse_int("walkers", cfg.walkers);
    parse_double("a", cfg.a);
    parse_double("b", cfg.b);
    parse_double("white", cfg.white);
    parse_double("black", cfg.black);
    parse_double("delta", cfg.delta);
    parse_int("mu", cfg.mu);
    parse_int("nu", cfg.nu);
    parse_double("w0", cfg.w0);
    parse_double("b0", cfg.b0);
    parse_i64("range", cfg.range);
    parse_string("law", cfg.law);
    parse_double("alpha", cfg.alpha);
    parse_double("beta", cfg.beta);
    parse_i64("cycle_len", cfg.cycle_len);
    parse_list("initial_weights", cfg.initial_weights);
    parse_list("c0", cfg.c0);
    parse_double("horizon", cfg.horizon);
    parse_double("step_size", cfg.step_size);
    parse_u64("store_every", cfg.store_every);
    parse_int("K", cfg.degree_bound);
    parse_int("path_len", cfg.path_len);
    parse_double("s", cfg.s_exponent);
    parse_i64("radius", cfg.radius);

    for (const auto& [key, entry] : entries)
        errors.push_back({entry.first, "unknown key `" + key + "`"});

    // range and cross-field validation (reported with line 0: semantic)
    auto fail = [&](const std::string& msg) { errors.push_back({0, msg}); };
    if (kind_seen) {
        for (double l : cfg.lambdas) {
            if (cfg.kind == ExperimentKind::LambdaStarLine ||
                cfg.kind == ExperimentKind::LambdaStarCycle) {
                if (!(l > 0.0)) fail("lambda: multiplicative bias needs lambda > 0");
            } else if (cfg.kind == ExperimentKind::LambdaPlusLine ||
                       cfg.kind == ExperimentKind::TransientEnv) {
                if (!(l >= 0.0)) fail("lambda: needs lambda >= 0");
            }
        }
        if (cfg.kind == ExperimentKind::TransientEnv)
            for (double l : cfg.lambdas)
                if (!(l > 0.0)) fail("lambda: transient environment needs lambda > 0");
        if (cfg.kind == ExperimentKind::TwoPlayerUrn) {
            if (cfg.scheduler != "uniform" && cfg.scheduler != "alternating" &&
                cfg.scheduler != "single")
                fail("scheduler: expected uniform, alternating or single");
            if (!(cfg.a > 0.0) || !(cfg.b > 0.0)) fail("a, b: initial weights must be positive");
        }
        if (cfg.kind == ExperimentKind::MultiWalkerLine && cfg.walkers < 1)
            fail("walkers: need at least one");
        if (cfg.scheduler == "alternating" && cfg.walkers != 2)
            fail("scheduler: alternating requires exactly 2 walkers");
        if (cfg.kind == ExperimentKind::Polya &&
            (!(cfg.white > 0.0) || !(cfg.black > 0.0) || !(cfg.delta > 0.0)))
            fail("white, black, delta: must be positive");
        if (cfg.kind == ExperimentKind::ReinforcedUrn && (cfg.mu < 1 || cfg.nu < 0))
            fail("mu, nu: mu must be >= 1 and nu >= 0");
        if (cfg.kind == ExperimentKind::RwreAnalysis && cfg.law != "additive-bias" &&
            cfg.law != "transient-initial" && cfg.law != "iid")
            fail("law: expected additive-bias, transient-initial or iid");
        if (cfg.kind == ExperimentKind::OdeTriangle) {
            if (cfg.c0.size() != 3) fail("c0: expected three components");
            else {
                double sum = cfg.c0[0] + cfg.c0[1] + cfg.c0[2];
                if (std::abs(sum - 1.0) > 1e-9) fail("c0: components must sum to 1");
            }
            if (!(cfg.step_size > 0.0)) fail("step_size: must be positive");
        }
        if (cfg.kind == ExperimentKind::LambdaStarCycle) {
            if (cfg.cycle_len < 3) fail("cycle_len: at least 3");
            if (cfg.initial_weights.size() != static_cast<std::size_t>(cfg.cycle_len))
                fail("initial_weights: need one weight per cycle edge");
        }
        if (cfg.kind == ExperimentKind::CouplingCheck) {
            if (!(cfg.a > 0.0)) fail("a: must be positive");
            if (cfg.path_len < 2) fail("path_len: at least 2");
            if (cfg.degree_bound < 2) fail("K: at least 2");
        }
        if (cfg.kind == ExperimentKind::DecayProbe) {
            if (!(cfg.s_exponent > 0.0 && cfg.s_exponent < 0.25))
                fail("s: must lie in (0, 1/4)");
            if (cfg.radius < 0) fail("radius: must be nonnegative");
        }
        if (cfg.kind == ExperimentKind::TransientEnv || cfg.kind == ExperimentKind::RwreAnalysis)
            if (cfg.range < 10) fail("range: at least 10");
    }

    if (errors.empty()) result.config = cfg;
    return result;
}

} // namespace rwalks
