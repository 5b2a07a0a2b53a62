#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "enactlab/harness.hpp"

namespace enactlab {

inline constexpr const char* kToolName = "enactlab";
inline constexpr const char* kToolVersion = "0.1.0";

/// Configuration problems exit the CLI with code 2; everything else is a
/// runtime failure (code 1).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fully resolved settings. Defaults are the values the experiments in
/// this repo use with no configuration at all.
struct Options {
    std::string agent = "enactive";
    std::string maze = "data/default_maze.txt";
    double alpha = 0.0;
    int d = 10;
    double delta = 4.0;
    std::uint64_t seed = 1;
    int ticks = 1000;
    double gamma = 0.9;
    double vi_tolerance = 1e-6;
    int vi_max_iter = 10000;
    int replenish_interval = 200;
    int replenish_count = 20;
    int initial_food = 18;
    int window = 100;
    std::optional<double> empty_reward_override; // +0.04 as printed unless set

    /// Apply one config key. Throws ConfigError on unknown keys or
    /// unparsable values.
    void apply(const std::string& key, const std::string& value);

    /// Range checks; throws ConfigError.
    void validate() const;

    AgentKind agent_kind() const;
    TrialConfig trial_config() const;
};

/// Flat "key = value" file; '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string& text);

/// defaults -> ENACTLAB_SEED -> config file; CLI flags are applied on top
/// by the caller.
Options resolve_options(const std::map<std::string, std::string>& config_file_values);

/// Grid spec for sweeps: "alpha=0,0.5;d=2,4;delta=2,4,8". Keys may be
/// omitted; at least one of d/delta must be present.
struct GridSpec {
    std::vector<double> alphas;
    std::vector<int> ds;
    std::vector<double> deltas;
};
GridSpec parse_grid(const std::string& text);

std::string default_grid();

/// FNV-1a 64 of the raw bytes, hex encoded.
std::string digest_bytes(const std::string& bytes);

nlohmann::json options_to_json(const Options& opts);
Options options_from_json(const nlohmann::json& j);

nlohmann::json run_manifest(const Options& opts, const std::string& config_digest);
nlohmann::json sweep_manifest(const Options& opts, const GridSpec& grid,
                              const std::vector<std::uint64_t>& seeds, int workers,
                              const SweepTable& table, const std::string& config_digest);
nlohmann::json analyze_manifest(const Options& opts, const std::string& in_dir,
                                const std::vector<std::string>& logs,
                                const std::string& config_digest);

/// Rebuild the sweep inputs recorded in a sweep manifest.
SweepSpec sweep_spec_from_manifest(const nlohmann::json& manifest);

} // namespace enactlab
