#include "enactlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "enactlab/stats.hpp"

namespace enactlab {

const char* agent_kind_name(AgentKind kind) {
    return kind == AgentKind::Enactive ? "enactive" : "rl";
}

namespace {

// Replenishment identity, exact integer form. preplaced counts food cells
// shipped in the maze file.
void check_food_identity(const MazeState& env, const EnvConfig& cfg, long long preplaced) {
    const long long replenished =
        cfg.replenish_interval > 0
            ? static_cast<long long>(cfg.replenish_count) * (env.tick() / cfg.replenish_interval)
            : 0;
    const long long requested = preplaced + cfg.initial_food + replenished;
    if (env.food_placed() + env.placements_skipped() != requested)
        throw std::logic_error("food conservation violated: placement bookkeeping");
    if (env.food_on_grid() != env.food_placed() - env.food_eaten())
        throw std::logic_error("food conservation violated: grid count");
}

void observe(TrialObserver* obs, const MazeState& env) {
    if (!obs || obs->trace_every <= 0)
        return;
    if (env.tick() % obs->trace_every == 0) {
        std::ostringstream frame;
        frame << "tick " << env.tick() << "\n" << env.render();
        obs->frames.push_back(frame.str());
    }
}

} // namespace

TrialResult run_trial(const TrialConfig& config, TrialObserver* observer) {
    if (config.env.trial_length <= 0)
        throw std::invalid_argument("run_trial: trial_length must be positive");
    if (config.alpha < 0.0 || config.alpha > 1.0)
        throw std::invalid_argument("run_trial: alpha must be in [0,1]");

    const std::string maze_text =
        config.maze_text.empty() ? read_text_file(config.env.maze_file) : config.maze_text;
    MazeState env = load_maze(maze_text);
    const long long preplaced = env.food_placed();

    Rng env_rng(derive_seed(config.env.seed, /*stream=*/0));
    env.place_food(config.env.initial_food, env_rng);
    check_food_identity(env, config.env, preplaced);

    TrialResult result;
    result.config = config;
    observe(observer, env);

    if (config.agent == AgentKind::Enactive) {
        EnactiveConfig ac;
        ac.d = config.d;
        ac.alpha = config.alpha;
        ac.stabilization_threshold = config.stabilization_threshold;
        ac.seed = config.seed;
        EnactiveAgent agent(ac);

        while (env.tick() < config.env.trial_length) {
            const CycleRecord cycle = agent.decision_cycle(env, config.env, env_rng);
            for (const auto& p : cycle.primitives) {
                TickEntry e;
                e.tick = p.tick;
                e.pose = p.pose_after;
                e.action = p.action;
                e.value = p.valence;
                e.ate_food = p.ate_food;
                e.enaction = cycle.enacted;
                result.log.push_back(e);
                observe(observer, env);
            }
            check_food_identity(env, config.env, preplaced);
        }
        if (observer && observer->capture_memory)
            observer->memory_dump = agent.memory().dump();
    } else {
        RLParams rp;
        rp.gamma = config.gamma;
        rp.delta = config.delta;
        rp.alpha = config.alpha;
        rp.vi_tolerance = config.vi_tolerance;
        rp.vi_max_iter = config.vi_max_iter;
        rp.empty_reward_override = config.empty_reward_override;
        rp.seed = config.seed;
        RLAgent agent(rp);

        while (env.tick() < config.env.trial_length) {
            const int tick_before = env.tick();
            const auto decision = agent.decide(env);
            const ActionOutcome out = env.attempt_action(decision.action);

            TickEntry e;
            e.tick = tick_before;
            e.pose = out.new_pose;
            e.action = out.action;
            if (out.action == Action::Step && !out.succeeded)
                e.value = agent.reward_model().obstacle_penalty;
            else if (out.ate_food)
                e.value = agent.reward_model().food_reward;
            else
                e.value = agent.reward_model().empty_reward;
            e.ate_food = out.ate_food;
            result.log.push_back(e);

            env.tick_environment(config.env, env_rng);
            check_food_identity(env, config.env, preplaced);
            observe(observer, env);
        }
    }

    result.gain = static_cast<int>(env.food_eaten());
    for (const auto& e : result.log)
        if (e.value < 0.0)
            ++result.neg_valence_total;
    result.food_placed = env.food_placed();
    result.food_eaten = env.food_eaten();
    result.placements_skipped = env.placements_skipped();
    result.food_on_grid = env.food_on_grid();
    result.ticks = static_cast<int>(result.log.size());
    return result;
}

double WindowStats::mean_std_over(int first, int last) const {
    if (first < 1 || last > n_windows || first > last)
        throw std::invalid_argument("mean_std_over: window range out of bounds");
    double s = 0.0;
    for (int w = first; w <= last; ++w)
        s += std_per_window[static_cast<std::size_t>(w - 1)];
    return s / static_cast<double>(last - first + 1);
}

WindowStats negative_valence_windows(const std::vector<std::vector<double>>& per_trial_values,
                                     int window) {
    if (per_trial_values.empty())
        throw std::invalid_argument("negative_valence_windows: no trials");
    if (window <= 0)
        throw std::invalid_argument("negative_valence_windows: window must be positive");
    const std::size_t length = per_trial_values.front().size();
    for (const auto& values : per_trial_values) {
        if (values.size() != length)
            throw std::invalid_argument("negative_valence_windows: trials differ in length");
    }
    if (length % static_cast<std::size_t>(window) != 0)
        throw std::invalid_argument("negative_valence_windows: window must divide trial length");

    WindowStats stats;
    stats.window_length = window;
    stats.n_windows = static_cast<int>(length / static_cast<std::size_t>(window));
    stats.n_trials = static_cast<int>(per_trial_values.size());

    for (const auto& values : per_trial_values) {
        std::vector<long long> counts(static_cast<std::size_t>(stats.n_windows), 0);
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] < 0.0)
                ++counts[i / static_cast<std::size_t>(window)];
        }
        stats.counts.push_back(std::move(counts));
    }

    for (int w = 0; w < stats.n_windows; ++w) {
        std::vector<double> across;
        across.reserve(static_cast<std::size_t>(stats.n_trials));
        for (const auto& counts : stats.counts)
            across.push_back(static_cast<double>(counts[static_cast<std::size_t>(w)]));
        stats.std_per_window.push_back(population_std(across));
    }
    return stats;
}

WindowStats negative_valence_windows(const std::vector<TrialResult>& results, int window) {
    std::vector<std::vector<double>> values;
    values.reserve(results.size());
    for (const auto& r : results) {
        std::vector<double> v;
        v.reserve(r.log.size());
        for (const auto& e : r.log)
            v.push_back(e.value);
        values.push_back(std::move(v));
    }
    return negative_valence_windows(values, window);
}

TrialConfig sweep_trial_config(const SweepSpec& spec, AgentKind agent, double alpha,
                               double param_value, std::uint64_t seed) {
    TrialConfig cfg = spec.base;
    cfg.agent = agent;
    cfg.alpha = alpha;
    cfg.seed = seed;
    cfg.env.seed = seed; // per-seed food schedule; agent/env streams stay separate
    if (agent == AgentKind::Enactive)
        cfg.d = static_cast<int>(param_value);
    else
        cfg.delta = param_value;
    return cfg;
}

SweepTable run_sweep(const SweepSpec& spec, int workers) {
    if (spec.seeds.empty())
        throw std::invalid_argument("run_sweep: seed set must be non-empty");
    if (spec.ds.empty() && spec.deltas.empty())
        throw std::invalid_argument("run_sweep: no parameter values given");
    if (workers < 1)
        workers = 1;

    SweepTable table;
    for (std::size_t i = 0; i < spec.ds.size() && i < spec.deltas.size(); ++i)
        table.d_delta_pairs.emplace_back(spec.ds[i], spec.deltas[i]);

    // Cell layout is fixed up front so results are mergeable in order no
    // matter how tasks get scheduled.
    for (double alpha : spec.alphas) {
        for (int d : spec.ds) {
            SweepCell cell;
            cell.agent = AgentKind::Enactive;
            cell.alpha = alpha;
            cell.param_name = "d";
            cell.param_value = d;
            cell.seeds = spec.seeds;
            table.cells.push_back(std::move(cell));
        }
    }
    for (double alpha : spec.alphas) {
        for (double delta : spec.deltas) {
            SweepCell cell;
            cell.agent = AgentKind::RL;
            cell.alpha = alpha;
            cell.param_name = "delta";
            cell.param_value = delta;
            cell.seeds = spec.seeds;
            table.cells.push_back(std::move(cell));
        }
    }

    struct Task {
        std::size_t cell;
        std::size_t seed_index;
    };
    std::vector<Task> tasks;
    for (std::size_t c = 0; c < table.cells.size(); ++c) {
        table.cells[c].trials.resize(spec.seeds.size());
        for (std::size_t s = 0; s < spec.seeds.size(); ++s)
            tasks.push_back({c, s});
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size())
                return;
            const Task t = tasks[i];
            SweepCell& cell = table.cells[t.cell];
            try {
                const TrialConfig cfg = sweep_trial_config(
                    spec, cell.agent, cell.alpha, cell.param_value, cell.seeds[t.seed_index]);
                cell.trials[t.seed_index] = run_trial(cfg);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    const std::size_t n_threads =
        std::min(static_cast<std::size_t>(workers), tasks.size());
    for (std::size_t i = 0; i < n_threads; ++i)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);

    for (auto& cell : table.cells) {
        cell.gains.reserve(cell.trials.size());
        for (const auto& trial : cell.trials)
            cell.gains.push_back(static_cast<double>(trial.gain));
        cell.mean_gain = mean(cell.gains);
        cell.std_gain = population_std(cell.gains);
    }
    return table;
}

} // namespace enactlab
