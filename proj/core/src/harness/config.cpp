#include "ulnse/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ulnse/harness/csv.hpp"
#include "ulnse/harness/generators.hpp"

namespace ulnse::harness {

namespace {

constexpr double pi = std::numbers::pi;

// A parsed right-hand side: a scalar token or a list of them.
struct Value {
    std::vector<std::string> items;
    bool list = false;
    bool quoted = false;
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_quote = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        if (line[k] == '"') in_quote = !in_quote;
        if (line[k] == '#' && !in_quote) return line.substr(0, k);
    }
    return line;
}

double parse_number(const std::string& token, const std::string& key) {
    std::string t = trim(token);
    double factor = 1.0;
    if (t == "pi") return pi;
    if (t.size() > 3 && t.ends_with("*pi")) {
        factor = pi;
        t = trim(t.substr(0, t.size() - 3));
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw ConfigError("key '" + key + "': expected a number, got '" + token + "'");
    }
    return v * factor;
}

long parse_integer(const std::string& token, const std::string& key) {
    const double v = parse_number(token, key);
    if (v != std::floor(v) || std::abs(v) > 9e15) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + token + "'");
    }
    return static_cast<long>(v);
}

Value parse_value(const std::string& raw, const std::string& key) {
    Value v;
    const std::string s = trim(raw);
    if (s.empty()) throw ConfigError("key '" + key + "' has no value");
    if (s.front() == '[') {
        if (s.back() != ']') throw ConfigError("key '" + key + "': unterminated list");
        v.list = true;
        std::stringstream body(s.substr(1, s.size() - 2));
        std::string item;
        while (std::getline(body, item, ',')) {
            item = trim(item);
            if (!item.empty()) v.items.push_back(item);
        }
        return v;
    }
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"') throw ConfigError("key '" + key + "': unterminated string");
        v.quoted = true;
        v.items.push_back(s.substr(1, s.size() - 2));
        return v;
    }
    v.items.push_back(s);
    return v;
}

const std::string& scalar(const Value& v, const std::string& key) {
    if (v.list || v.items.size() != 1) throw ConfigError("key '" + key + "' expects a single value");
    return v.items.front();
}

std::vector<double> number_list(const Value& v, const std::string& key) {
    if (!v.list) throw ConfigError("key '" + key + "' expects a list like [1, 2]");
    std::vector<double> out;
    for (const auto& item : v.items) out.push_back(parse_number(item, key));
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const Value&, const std::string&)>;

template <class T>
Setter number(T ExperimentConfig::*field) {
    return [field](ExperimentConfig& c, const Value& v, const std::string& key) {
        if constexpr (std::is_integral_v<T>) {
            c.*field = static_cast<T>(parse_integer(scalar(v, key), key));
        } else {
            c.*field = parse_number(scalar(v, key), key);
        }
    };
}

Setter text(std::string ExperimentConfig::*field) {
    return [field](ExperimentConfig& c, const Value& v, const std::string& key) { c.*field = scalar(v, key); };
}

Setter numbers(std::vector<double> ExperimentConfig::*field) {
    return [field](ExperimentConfig& c, const Value& v, const std::string& key) { c.*field = number_list(v, key); };
}

struct KeySpec {
    std::string key;
    Setter set;
    std::function<std::string(const ExperimentConfig&)> show;
};

std::string join(const std::vector<double>& xs) {
    std::string s = "[";
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + format_double(xs[k]);
    return s + "]";
}

const std::vector<KeySpec>& schema() {
    using C = ExperimentConfig;
    auto d = [](double C::*f) { return [f](const C& c) { return format_double(c.*f); }; };
    auto i = [](int C::*f) { return [f](const C& c) { return std::to_string(c.*f); }; };
    auto s = [](std::string C::*f) { return [f](const C& c) { return c.*f; }; };
    auto l = [](std::vector<double> C::*f) { return [f](const C& c) { return join(c.*f); }; };
    static const std::vector<KeySpec> keys{
        {"experiment", text(&C::experiment), s(&C::experiment)},
        {"n", number(&C::n), i(&C::n)},
        {"L", number(&C::L), d(&C::L)},
        {"alpha", number(&C::alpha), d(&C::alpha)},
        {"dt", number(&C::dt), d(&C::dt)},
        {"t_end", number(&C::t_end), d(&C::t_end)},
        {"diag_every", number(&C::diag_every), i(&C::diag_every)},
        {"diag_R", number(&C::diag_R), d(&C::diag_R)},
        {"initial", text(&C::initial), s(&C::initial)},
        {"initial_amplitude", number(&C::initial_amplitude), d(&C::initial_amplitude)},
        {"forcing", text(&C::forcing), s(&C::forcing)},
        {"forcing_amplitude", number(&C::forcing_amplitude), d(&C::forcing_amplitude)},
        {"forcing_wavenumber", number(&C::forcing_wavenumber), i(&C::forcing_wavenumber)},
        {"seeds",
         [](C& c, const Value& v, const std::string& key) {
             if (!v.list) throw ConfigError("key 'seeds' expects a list like [1, 2]");
             c.seeds.clear();
             for (const auto& item : v.items) {
                 const long s = parse_integer(item, key);
                 if (s < 0) throw ConfigError("key 'seeds': seeds must be nonnegative");
                 c.seeds.push_back(static_cast<std::uint64_t>(s));
             }
         },
         [](const C& c) {
             std::string s = "[";
             for (std::size_t k = 0; k < c.seeds.size(); ++k) s += (k ? ", " : "") + std::to_string(c.seeds[k]);
             return s + "]";
         }},
        {"R_values", numbers(&C::R_values), l(&C::R_values)},
        {"centers", number(&C::centers), i(&C::centers)},
        {"alphas", numbers(&C::alphas), l(&C::alphas)},
        {"deltas", numbers(&C::deltas), l(&C::deltas)},
        {"level", number(&C::level), d(&C::level)},
        {"t_half", number(&C::t_half), d(&C::t_half)},
        {"gamma", number(&C::gamma), d(&C::gamma)},
        {"window_start", number(&C::window_start), d(&C::window_start)},
        {"window_end", number(&C::window_end), d(&C::window_end)},
        {"min_slope", number(&C::min_slope), d(&C::min_slope)},
        {"p", number(&C::p), d(&C::p)},
        {"q", number(&C::q), d(&C::q)},
        {"max_ratio", number(&C::max_ratio), d(&C::max_ratio)},
        {"max_spread", number(&C::max_spread), d(&C::max_spread)},
        {"output", text(&C::output), s(&C::output)},
    };
    return keys;
}

bool contains(const std::vector<std::string>& xs, const std::string& x) {
    return std::find(xs.begin(), xs.end(), x) != xs.end();
}

std::string listing(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + xs[k];
    return s;
}

}  // namespace

const std::vector<std::string>& registered_experiments() {
    static const std::vector<std::string> names{"max_principle", "dissipative", "growth",
                                                "uniqueness",    "smoothing",   "lemmas"};
    return names;
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& s : schema()) k.push_back(s.key);
        return k;
    }();
    return keys;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::echo() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : schema()) out.emplace_back(s.key, s.show(*this));
    return out;
}

SolverConfig ExperimentConfig::solver_config(std::optional<VectorField> forcing_field, double alpha_value) const {
    SolverConfig sc;
    sc.grid = grid();
    sc.alpha = alpha_value;
    sc.dt = dt;
    sc.t_end = t_end;
    sc.forcing = std::move(forcing_field);
    sc.diag_every = diag_every;
    sc.diag_R = diag_R;
    return sc;
}

void validate_static(const ExperimentConfig& c) {
    if (c.experiment.empty()) throw ConfigError("missing required key 'experiment'");
    if (!contains(registered_experiments(), c.experiment)) {
        throw ConfigError("unknown experiment '" + c.experiment + "' (registered: " +
                          listing(registered_experiments()) + ")");
    }
    if (c.n < 8 || (c.n & (c.n - 1)) != 0) throw ConfigError("n must be a power of two >= 8");
    if (!(c.L > 0.0)) throw ConfigError("L must be positive");
    if (!contains(initial_generators(), c.initial)) {
        throw ConfigError("unknown initial data generator '" + c.initial + "' (available: " +
                          listing(initial_generators()) + ")");
    }
    if (!contains(forcing_generators(), c.forcing)) {
        throw ConfigError("unknown forcing generator '" + c.forcing + "' (available: " +
                          listing(forcing_generators()) + ")");
    }
    if (c.initial == "taylor_green") {
        const double periods = c.L / (2.0 * pi);
        if (std::abs(periods - std::round(periods)) > 1e-9 * periods) {
            throw ConfigError("initial = taylor_green needs L to be a multiple of 2*pi");
        }
    }
    if (c.forcing == "kolmogorov" && (c.forcing_wavenumber < 1 || c.forcing_wavenumber >= c.n / 3)) {
        throw ConfigError("forcing_wavenumber must lie in [1, n/3)");
    }
    if (!(c.initial_amplitude > 0.0)) throw ConfigError("initial_amplitude must be positive");
    if (!(c.forcing_amplitude >= 0.0)) throw ConfigError("forcing_amplitude must be nonnegative");
    if (!(c.alpha >= 0.0)) throw ConfigError("alpha must be nonnegative");
    if (!(c.dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(c.t_end > 0.0)) throw ConfigError("t_end must be positive");
    const double steps = c.t_end / c.dt;
    if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
        throw ConfigError("t_end must be an integer multiple of dt");
    }
    if (c.diag_every < 1) throw ConfigError("diag_every must be at least 1");
    const double half = 0.5 * c.L;
    if (!(c.diag_R >= 1.0) || 2.0 * c.diag_R > half) {
        throw ConfigError("diag_R must satisfy 1 <= diag_R and 2 diag_R <= L/2");
    }
    if (c.seeds.empty()) throw ConfigError("seeds must not be empty");
    if (c.R_values.empty()) throw ConfigError("R_values must not be empty");
    for (double R : c.R_values) {
        if (!(R > 0.0) || 2.0 * R > half) {
            throw ConfigError("R_values entry " + format_double(R) + " must satisfy 0 < R and 2R <= L/2");
        }
    }
    if (c.centers < 1) throw ConfigError("centers must be at least 1");
    for (double a : c.alphas) {
        if (!(a >= 0.0)) throw ConfigError("alphas must be nonnegative");
    }
    for (double d : c.deltas) {
        if (!(d > 0.0)) throw ConfigError("deltas must be positive");
    }
    if (!(c.p > 1.0 && c.q > 1.0) || std::abs(1.0 / c.p + 1.0 / c.q - 1.0) > 1e-12) {
        throw ConfigError("exponents p = " + format_double(c.p) + ", q = " + format_double(c.q) +
                          " are not dual (need 1 < p, q and 1/p + 1/q = 1)");
    }
    if (!(c.level >= 0.0) || !(c.t_half >= 0.0) || c.t_half > c.t_end) {
        throw ConfigError("level must be nonnegative and t_half must lie in [0, t_end]");
    }
    if (!(c.gamma >= 0.0)) throw ConfigError("gamma must be nonnegative");
    if (!(c.window_start > 0.0 && c.window_start < c.window_end)) {
        throw ConfigError("smoothing window needs 0 < window_start < window_end");
    }
    if (!(c.max_ratio > 0.0) || !(c.max_spread >= 1.0)) {
        throw ConfigError("max_ratio must be positive and max_spread at least 1");
    }
    if (c.experiment == "growth" && c.alpha != 0.0) {
        throw ConfigError("growth runs the undamped system: alpha must be 0");
    }
    if (c.experiment == "dissipative" && !(c.alpha > 0.0)) {
        throw ConfigError("dissipative needs alpha > 0");
    }
    if (c.experiment == "smoothing" && c.window_end > c.t_end) {
        throw ConfigError("smoothing window_end exceeds t_end");
    }
    if (c.output.empty()) throw ConfigError("output must not be empty");
}

double cfl_bound(const ExperimentConfig& c) {
    const Grid g = c.grid();
    double umax = 0.0;
    for (std::uint64_t seed : c.seeds) umax = std::max(umax, initial_velocity(c.initial, g, seed, c.initial_amplitude).max_abs());
    if (umax == 0.0) return std::numeric_limits<double>::infinity();
    return g.spacing() / (2.0 * umax);
}

ExperimentConfig parse_config_string(const std::string& text, const std::string& origin) {
    std::map<std::string, const KeySpec*> by_key;
    for (const auto& s : schema()) by_key[s.key] = &s;
    ExperimentConfig cfg;
    std::map<std::string, int> seen;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        const std::string where = origin + ":" + std::to_string(lineno) + ": ";
        const auto eq = body.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value', got '" + body + "'");
        const std::string key = trim(body.substr(0, eq));
        const auto it = by_key.find(key);
        if (it == by_key.end()) throw ConfigError(where + "unknown key '" + key + "'");
        if (seen.count(key)) {
            throw ConfigError(where + "duplicate key '" + key + "' (first set on line " + std::to_string(seen[key]) + ")");
        }
        seen[key] = lineno;
        try {
            it->second->set(cfg, parse_value(body.substr(eq + 1), key), key);
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    validate_static(cfg);
    const double bound = cfl_bound(cfg);
    if (cfg.dt > bound) {
        throw ConfigError("dt = " + format_double(cfg.dt) + " violates the CFL bound dt <= h / (2 max|u0|) = " +
                          format_double(bound) + " for the configured initial data");
    }
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_string(buf.str(), path.string());
}

}  // namespace ulnse::harness
