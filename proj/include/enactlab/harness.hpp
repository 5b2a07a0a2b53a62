#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "enactlab/enactive_agent.hpp"
#include "enactlab/grid_world.hpp"
#include "enactlab/rl_agent.hpp"

namespace enactlab {

enum class AgentKind : std::uint8_t { Enactive, RL };

const char* agent_kind_name(AgentKind kind);

struct TrialConfig {
    AgentKind agent = AgentKind::Enactive;
    EnvConfig env;                 // env.seed drives food placement
    double alpha = 0.0;
    int d = 10;                    // enactive foresight
    double delta = 4.0;            // rl scope radius
    double gamma = 0.9;
    double vi_tolerance = 1e-6;
    int vi_max_iter = 10000;
    std::optional<double> empty_reward_override;
    int stabilization_threshold = 2;
    std::uint64_t seed = 1;        // agent stream seed (exploration etc.)
    std::string maze_text;         // when set, used instead of env.maze_file
};

struct TickEntry {
    int tick = 0;
    AgentPose pose;
    Action action = Action::Step;
    double value = 0.0;            // valence (enactive) or reward (rl)
    bool ate_food = false;
    InteractionId enaction = kNoInteraction; // enclosing enacted interaction, enactive only
};

struct TrialResult {
    TrialConfig config;
    std::vector<TickEntry> log;    // one entry per tick, length <= trial_length
    int gain = 0;                  // food units eaten
    long long neg_valence_total = 0;
    // Final accounting snapshot (the conservation identity is also checked
    // after every tick during the run).
    long long food_placed = 0;
    long long food_eaten = 0;
    long long placements_skipped = 0;
    int food_on_grid = 0;
    int ticks = 0;
};

/// Optional per-trial captures for the CLI.
struct TrialObserver {
    int trace_every = 0;              // dump a maze frame every N ticks (0 = off)
    bool capture_memory = false;      // enactive memory dump at trial end
    std::vector<std::string> frames;
    std::string memory_dump;
};

/// Run one seeded trial to exactly trial_length ticks. Bit-deterministic
/// given the config. Verifies the food conservation identity after every
/// tick and throws std::logic_error when it fails.
TrialResult run_trial(const TrialConfig& config, TrialObserver* observer = nullptr);

struct WindowStats {
    int window_length = 0;
    int n_windows = 0;
    int n_trials = 0;
    // counts[trial][window] = negative-valence entries in that window
    std::vector<std::vector<long long>> counts;
    // population standard deviation across trials, per window
    std::vector<double> std_per_window;

    /// Mean of the per-window stds over 1-based window indices [first, last].
    double mean_std_over(int first, int last) const;
};

/// Per-trial per-window negative-valence counts, plus the cross-trial
/// standard deviation of each window. All trials must share a log length
/// divisible by the window.
WindowStats negative_valence_windows(const std::vector<std::vector<double>>& per_trial_values,
                                     int window);
WindowStats negative_valence_windows(const std::vector<TrialResult>& results, int window);

struct SweepSpec {
    std::vector<double> alphas;
    std::vector<int> ds;           // enactive cells; may be empty
    std::vector<double> deltas;    // rl cells; may be empty
    std::vector<std::uint64_t> seeds;
    TrialConfig base;              // env, maze, planner parameters
};

struct SweepCell {
    AgentKind agent = AgentKind::Enactive;
    double alpha = 0.0;
    std::string param_name;        // "d" or "delta"
    double param_value = 0.0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> gains;     // one per seed, same order
    std::vector<TrialResult> trials;
    double mean_gain = 0.0;
    double std_gain = 0.0;         // population convention
};

struct SweepTable {
    std::vector<SweepCell> cells;
    // d <-> delta axis alignment for cross-paradigm plots (metadata only).
    std::vector<std::pair<int, double>> d_delta_pairs;
};

/// Cartesian product of parameters x seeds, one trial each, run on up to
/// `workers` threads. Cell order and contents are independent of the
/// worker count.
SweepTable run_sweep(const SweepSpec& spec, int workers);

/// Config for a single sweep cell + seed; rerunning it in isolation
/// reproduces the cell's trial.
TrialConfig sweep_trial_config(const SweepSpec& spec, AgentKind agent, double alpha,
                               double param_value, std::uint64_t seed);

} // namespace enactlab
