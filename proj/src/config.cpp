#include "enactlab/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <sstream>

#include <nlohmann/json.hpp>

namespace enactlab {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse real '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size())
            throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': cannot parse integer '" + value + "'");
    }
}

} // namespace

void Options::apply(const std::string& key, const std::string& value) {
    if (key == "agent")
        agent = value;
    else if (key == "maze")
        maze = value;
    else if (key == "alpha")
        alpha = parse_real(key, value);
    else if (key == "d")
        d = static_cast<int>(parse_int(key, value));
    else if (key == "delta")
        delta = parse_real(key, value);
    else if (key == "seed")
        seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "ticks")
        ticks = static_cast<int>(parse_int(key, value));
    else if (key == "gamma")
        gamma = parse_real(key, value);
    else if (key == "vi_tolerance")
        vi_tolerance = parse_real(key, value);
    else if (key == "vi_max_iter")
        vi_max_iter = static_cast<int>(parse_int(key, value));
    else if (key == "replenish_interval")
        replenish_interval = static_cast<int>(parse_int(key, value));
    else if (key == "replenish_count")
        replenish_count = static_cast<int>(parse_int(key, value));
    else if (key == "initial_food")
        initial_food = static_cast<int>(parse_int(key, value));
    else if (key == "window")
        window = static_cast<int>(parse_int(key, value));
    else if (key == "empty_reward_override")
        empty_reward_override = parse_real(key, value);
    else
        throw ConfigError("unknown config key '" + key + "'");
}

void Options::validate() const {
    if (agent != "enactive" && agent != "rl")
        throw ConfigError("agent must be 'enactive' or 'rl', got '" + agent + "'");
    if (alpha < 0.0 || alpha > 1.0)
        throw ConfigError("alpha must be in [0,1]");
    if (d < 2)
        throw ConfigError("d must be at least 2 (composite interactions have length >= 2)");
    if (delta < 0.0)
        throw ConfigError("delta must be non-negative");
    if (ticks <= 0)
        throw ConfigError("ticks must be positive");
    if (gamma < 0.0 || gamma >= 1.0)
        throw ConfigError("gamma must be in [0,1)");
    if (vi_tolerance <= 0.0)
        throw ConfigError("vi_tolerance must be positive");
    if (vi_max_iter <= 0)
        throw ConfigError("vi_max_iter must be positive");
    if (replenish_interval <= 0)
        throw ConfigError("replenish_interval must be positive");
    if (replenish_count < 0)
        throw ConfigError("replenish_count must be non-negative");
    if (initial_food < 0)
        throw ConfigError("initial_food must be non-negative");
    if (window <= 0)
        throw ConfigError("window must be positive");
}

AgentKind Options::agent_kind() const {
    return agent == "rl" ? AgentKind::RL : AgentKind::Enactive;
}

TrialConfig Options::trial_config() const {
    TrialConfig cfg;
    cfg.agent = agent_kind();
    cfg.env.maze_file = maze;
    cfg.env.seed = seed;
    cfg.env.trial_length = ticks;
    cfg.env.replenish_interval = replenish_interval;
    cfg.env.replenish_count = replenish_count;
    cfg.env.initial_food = initial_food;
    cfg.alpha = alpha;
    cfg.d = d;
    cfg.delta = delta;
    cfg.gamma = gamma;
    cfg.vi_tolerance = vi_tolerance;
    cfg.vi_max_iter = vi_max_iter;
    cfg.empty_reward_override = empty_reward_override;
    cfg.seed = seed;
    return cfg;
}

std::map<std::string, std::string> parse_config_file(const std::string& text) {
    std::map<std::string, std::string> values;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        values[key] = value;
    }
    return values;
}

Options resolve_options(const std::map<std::string, std::string>& config_file_values) {
    Options opts;
    if (const char* env_seed = std::getenv("ENACTLAB_SEED"))
        opts.apply("seed", env_seed);
    for (const auto& [key, value] : config_file_values)
        opts.apply(key, value);
    return opts;
}

GridSpec parse_grid(const std::string& text) {
    if (trim(text).empty())
        throw ConfigError("empty --grid spec");
    GridSpec grid;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';')) {
        part = trim(part);
        if (part.empty())
            continue;
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw ConfigError("grid spec: expected key=v1,v2,... in '" + part + "'");
        const std::string key = trim(part.substr(0, eq));
        std::istringstream list(part.substr(eq + 1));
        std::string item;
        std::vector<std::string> items;
        while (std::getline(list, item, ','))
            items.push_back(trim(item));
        if (items.empty())
            throw ConfigError("grid spec: no values for '" + key + "'");
        if (key == "alpha") {
            for (const auto& v : items)
                grid.alphas.push_back(parse_real(key, v));
        } else if (key == "d") {
            for (const auto& v : items)
                grid.ds.push_back(static_cast<int>(parse_int(key, v)));
        } else if (key == "delta") {
            for (const auto& v : items)
                grid.deltas.push_back(parse_real(key, v));
        } else {
            throw ConfigError("grid spec: unknown key '" + key + "'");
        }
    }
    if (grid.alphas.empty())
        throw ConfigError("grid spec: alpha list is required");
    if (grid.ds.empty() && grid.deltas.empty())
        throw ConfigError("grid spec: need at least one of d= or delta=");
    for (int d : grid.ds)
        if (d < 2)
            throw ConfigError("grid spec: d values must be >= 2");
    return grid;
}

std::string default_grid() {
    // Foresights 2..20, scopes 2^1..2^11.
    return "alpha=0,0.5;"
           "d=2,4,6,8,10,12,14,16,18,20;"
           "delta=2,4,8,16,32,64,128,256,512,1024,2048";
}

std::string digest_bytes(const std::string& bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::json options_to_json(const Options& o) {
    nlohmann::json j{{"agent", o.agent},
                     {"maze", o.maze},
                     {"alpha", o.alpha},
                     {"d", o.d},
                     {"delta", o.delta},
                     {"seed", o.seed},
                     {"ticks", o.ticks},
                     {"gamma", o.gamma},
                     {"vi_tolerance", o.vi_tolerance},
                     {"vi_max_iter", o.vi_max_iter},
                     {"replenish_interval", o.replenish_interval},
                     {"replenish_count", o.replenish_count},
                     {"initial_food", o.initial_food},
                     {"window", o.window}};
    if (o.empty_reward_override)
        j["empty_reward_override"] = *o.empty_reward_override;
    else
        j["empty_reward_override"] = nullptr;
    return j;
}

Options options_from_json(const nlohmann::json& j) {
    Options o;
    o.agent = j.at("agent").get<std::string>();
    o.maze = j.at("maze").get<std::string>();
    o.alpha = j.at("alpha").get<double>();
    o.d = j.at("d").get<int>();
    o.delta = j.at("delta").get<double>();
    o.seed = j.at("seed").get<std::uint64_t>();
    o.ticks = j.at("ticks").get<int>();
    o.gamma = j.at("gamma").get<double>();
    o.vi_tolerance = j.at("vi_tolerance").get<double>();
    o.vi_max_iter = j.at("vi_max_iter").get<int>();
    o.replenish_interval = j.at("replenish_interval").get<int>();
    o.replenish_count = j.at("replenish_count").get<int>();
    o.initial_food = j.at("initial_food").get<int>();
    o.window = j.at("window").get<int>();
    if (j.contains("empty_reward_override") && !j.at("empty_reward_override").is_null())
        o.empty_reward_override = j.at("empty_reward_override").get<double>();
    return o;
}

namespace {

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

nlohmann::json manifest_header(const char* command, const std::string& config_digest) {
    return nlohmann::json{{"tool", kToolName},
                          {"version", kToolVersion},
                          {"command", command},
                          {"config_digest", config_digest},
                          {"timestamp", utc_timestamp()}};
}

} // namespace

nlohmann::json run_manifest(const Options& opts, const std::string& config_digest) {
    nlohmann::json m = manifest_header("run", config_digest);
    m["resolved"] = options_to_json(opts);
    return m;
}

nlohmann::json sweep_manifest(const Options& opts, const GridSpec& grid,
                              const std::vector<std::uint64_t>& seeds, int workers,
                              const SweepTable& table, const std::string& config_digest) {
    nlohmann::json m = manifest_header("sweep", config_digest);
    m["resolved"] = options_to_json(opts);
    m["grid"] = {{"alpha", grid.alphas}, {"d", grid.ds}, {"delta", grid.deltas}};
    m["seeds"] = seeds;
    m["workers"] = workers;
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& [d, delta] : table.d_delta_pairs)
        pairs.push_back({{"d", d}, {"delta", delta}});
    m["d_delta_pairs"] = pairs;
    return m;
}

nlohmann::json analyze_manifest(const Options& opts, const std::string& in_dir,
                                const std::vector<std::string>& logs,
                                const std::string& config_digest) {
    nlohmann::json m = manifest_header("analyze", config_digest);
    m["resolved"] = options_to_json(opts);
    m["in"] = in_dir;
    m["logs"] = logs;
    return m;
}

SweepSpec sweep_spec_from_manifest(const nlohmann::json& manifest) {
    const Options opts = options_from_json(manifest.at("resolved"));
    SweepSpec spec;
    spec.base = opts.trial_config();
    spec.alphas = manifest.at("grid").at("alpha").get<std::vector<double>>();
    spec.ds = manifest.at("grid").at("d").get<std::vector<int>>();
    spec.deltas = manifest.at("grid").at("delta").get<std::vector<double>>();
    spec.seeds = manifest.at("seeds").get<std::vector<std::uint64_t>>();
    return spec;
}

} // namespace enactlab
