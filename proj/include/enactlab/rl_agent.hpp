#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "enactlab/grid_world.hpp"
#include "enactlab/rng.hpp"

namespace enactlab {

struct RLState {
    Vec2i position;
    Heading heading = Heading::North;
    friend bool operator==(const RLState& a, const RLState& b) {
        return a.position == b.position && a.heading == b.heading;
    }
};

struct RewardModel {
    double food_reward = 5.0;
    double empty_reward = 0.04; // sign as printed; override via config
    double obstacle_penalty = -9.0;
};

/// Non-obstacle positions within `delta` of the center, four headings
/// each, in row-major x-then-heading order.
class ScopedStateSpace {
public:
    ScopedStateSpace() = default;
    ScopedStateSpace(Vec2i center, double delta, const MazeState& env,
                     DistanceNorm norm = DistanceNorm::Euclidean);

    Vec2i center() const { return center_; }
    double delta() const { return delta_; }
    const std::vector<RLState>& states() const { return states_; }
    bool contains(const RLState& s) const { return index_of(s) >= 0; }
    bool contains_position(Vec2i p) const;
    int index_of(const RLState& s) const;

private:
    Vec2i center_;
    double delta_ = 0.0;
    std::vector<RLState> states_;
    std::unordered_map<std::uint64_t, int> index_;
};

ScopedStateSpace scoped_states(const MazeState& env, double delta,
                               DistanceNorm norm = DistanceNorm::Euclidean);

/// Pose the environment would yield: turns rotate, Step advances unless
/// blocked by an obstacle or the border, in which case the state is
/// unchanged.
RLState transition(const RLState& s, Action a, const MazeState& env);

/// +food for entering a food cell, the obstacle penalty for a blocked
/// step, the empty-cell value otherwise.
double reward(const RLState& s, Action a, const RLState& next, const MazeState& env,
              const RewardModel& model);

struct ValueTable {
    std::vector<double> values; // indexed like ScopedStateSpace::states()
    double gamma = 0.9;
    double tolerance = 1e-6;
    int iterations_used = 0;
    bool converged = false;
};

struct Policy {
    std::vector<Action> actions; // greedy action per state index
};

/// Synchronous Bellman backups over the scoped states until the residual
/// drops below tolerance (or max_iter). Transitions that leave the scope
/// are treated as self-loops earning the empty-cell reward. Greedy policy
/// ties resolve Step < TurnLeft < TurnRight.
std::pair<ValueTable, Policy> value_iteration(const ScopedStateSpace& scope,
                                              const MazeState& env, const RewardModel& model,
                                              double gamma, double tolerance, int max_iter);

struct RLParams {
    double gamma = 0.9;
    double delta = 4.0;
    double alpha = 0.0;
    double vi_tolerance = 1e-6;
    int vi_max_iter = 10000;
    std::optional<double> empty_reward_override;
    DistanceNorm norm = DistanceNorm::Euclidean;
    std::uint64_t seed = 1;
};

/// Model-based planner with random-walk mixing. Replans when the scoped
/// neighbourhood changed (food appeared or was eaten) or when the agent
/// left the planned scope; otherwise the cached policy stands.
class RLAgent {
public:
    explicit RLAgent(const RLParams& params);

    struct Decision {
        Action action = Action::Step;
        bool explored = false;
        bool replanned = false;
    };

    Decision decide(const MazeState& env);

    const RLParams& params() const { return params_; }
    const RewardModel& reward_model() const { return reward_model_; }
    int plans_made() const { return plans_made_; }
    const ValueTable* values() const { return plan_ ? &plan_->values : nullptr; }
    const ScopedStateSpace* scope() const { return plan_ ? &plan_->scope : nullptr; }

private:
    struct Plan {
        ScopedStateSpace scope;
        ValueTable values;
        Policy policy;
        std::vector<Cell> cell_snapshot; // full grid at plan time
    };

    bool needs_replan(const MazeState& env) const;
    void replan(const MazeState& env);

    RLParams params_;
    RewardModel reward_model_;
    Rng rng_;
    std::optional<Plan> plan_;
    int plans_made_ = 0;
};

} // namespace enactlab
