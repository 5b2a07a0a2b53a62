#include "enactlab/rl_agent.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace enactlab {

namespace {

constexpr Action kActionOrder[3] = {Action::Step, Action::TurnLeft, Action::TurnRight};

std::uint64_t state_key(const RLState& s) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.position.x)) << 34) |
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.position.y)) << 2) |
           static_cast<std::uint64_t>(s.heading);
}

} // namespace

ScopedStateSpace::ScopedStateSpace(Vec2i center, double delta, const MazeState& env,
                                   DistanceNorm norm)
    : center_(center), delta_(delta) {
    for (int y = 0; y < env.height(); ++y) {
        for (int x = 0; x < env.width(); ++x) {
            const Vec2i p{x, y};
            if (env.at(p) == Cell::Obstacle)
                continue;
            if (!within_distance(center, p, delta, norm))
                continue;
            for (Heading h : {Heading::North, Heading::East, Heading::South, Heading::West}) {
                const RLState s{p, h};
                index_.emplace(state_key(s), static_cast<int>(states_.size()));
                states_.push_back(s);
            }
        }
    }
}

bool ScopedStateSpace::contains_position(Vec2i p) const {
    return index_.count(state_key(RLState{p, Heading::North})) != 0;
}

int ScopedStateSpace::index_of(const RLState& s) const {
    auto it = index_.find(state_key(s));
    return it == index_.end() ? -1 : it->second;
}

ScopedStateSpace scoped_states(const MazeState& env, double delta, DistanceNorm norm) {
    if (delta < 0)
        throw std::invalid_argument("scoped_states: delta must be non-negative");
    return {env.pose().position, delta, env, norm};
}

RLState transition(const RLState& s, Action a, const MazeState& env) {
    RLState next = s;
    switch (a) {
    case Action::TurnLeft:
        next.heading = turn_left(s.heading);
        break;
    case Action::TurnRight:
        next.heading = turn_right(s.heading);
        break;
    case Action::Step: {
        const Vec2i d = heading_delta(s.heading);
        const Vec2i target{s.position.x + d.x, s.position.y + d.y};
        if (env.in_bounds(target) && env.at(target) != Cell::Obstacle)
            next.position = target;
        break;
    }
    }
    return next;
}

double reward(const RLState& s, Action a, const RLState& next, const MazeState& env,
              const RewardModel& model) {
    if (a == Action::Step && next.position == s.position)
        return model.obstacle_penalty; // a successful step always moves
    if (env.at(next.position) == Cell::Food)
        return model.food_reward;
    return model.empty_reward;
}

std::pair<ValueTable, Policy> value_iteration(const ScopedStateSpace& scope,
                                              const MazeState& env, const RewardModel& model,
                                              double gamma, double tolerance, int max_iter) {
    const auto& states = scope.states();
    if (states.empty())
        throw std::invalid_argument("value_iteration: empty scope");
    if (gamma < 0.0 || gamma >= 1.0)
        throw std::invalid_argument("value_iteration: gamma must be in [0,1)");
    if (tolerance <= 0.0)
        throw std::invalid_argument("value_iteration: tolerance must be positive");

    const int n = static_cast<int>(states.size());

    // Precompute successors and immediate rewards. Out-of-scope targets
    // become self-loops with the empty-cell reward.
    std::vector<std::array<int, 3>> succ(static_cast<std::size_t>(n));
    std::vector<std::array<double, 3>> imm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (int ai = 0; ai < 3; ++ai) {
            const Action a = kActionOrder[ai];
            const RLState next = transition(states[static_cast<std::size_t>(i)], a, env);
            const int j = scope.index_of(next);
            if (j < 0) {
                succ[static_cast<std::size_t>(i)][static_cast<std::size_t>(ai)] = i;
                imm[static_cast<std::size_t>(i)][static_cast<std::size_t>(ai)] = model.empty_reward;
            } else {
                succ[static_cast<std::size_t>(i)][static_cast<std::size_t>(ai)] = j;
                imm[static_cast<std::size_t>(i)][static_cast<std::size_t>(ai)] =
                    reward(states[static_cast<std::size_t>(i)], a, next, env, model);
            }
        }
    }

    ValueTable table;
    table.gamma = gamma;
    table.tolerance = tolerance;
    table.values.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<double> next_values(static_cast<std::size_t>(n), 0.0);
    for (int iter = 1; iter <= max_iter; ++iter) {
        double residual = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = -std::numeric_limits<double>::infinity();
            for (int ai = 0; ai < 3; ++ai) {
                const double q =
                    imm[static_cast<std::size_t>(i)][static_cast<std::size_t>(ai)] +
                    gamma * table.values[static_cast<std::size_t>(
                                succ[static_cast<std::size_t>(i)][static_cast<std::size_t>(ai)])];
                if (q > best)
                    best = q;
            }
            next_values[static_cast<std::size_t>(i)] = best;
            const double diff = std::abs(best - table.values[static_cast<std::size_t>(i)]);
            if (diff > residual)
                residual = diff;
        }
        table.values.swap(next_values);
        table.iterations_used = iter;
        if (residual <= tolerance) {
            table.converged = true;
            break;
        }
    }

    Policy policy;
    policy.actions.assign(static_cast<std::size_t>(n), Action::Step);
    for (int i = 0; i < n; ++i) {
        double best = -std::numeric_limits<double>::infinity();
        Action best_action = Action::Step;
        for (int ai = 0; ai < 3; ++ai) {
            const double q =
                imm[static_cast<std::size_t>(i)][static_cast<std::size_t>(ai)] +
                gamma * table.values[static_cast<std::size_t>(
                            succ[static_cast<std::size_t>(i)][static_cast<std::size_t>(ai)])];
            if (q > best) { // strict: first action in the fixed order wins ties
                best = q;
                best_action = kActionOrder[ai];
            }
        }
        policy.actions[static_cast<std::size_t>(i)] = best_action;
    }
    return {table, policy};
}

RLAgent::RLAgent(const RLParams& params)
    : params_(params), rng_(derive_seed(params.seed, /*stream=*/2)) {
    if (params_.empty_reward_override)
        reward_model_.empty_reward = *params_.empty_reward_override;
}

bool RLAgent::needs_replan(const MazeState& env) const {
    if (!plan_)
        return true;
    const RLState here{env.pose().position, env.pose().heading};
    if (!plan_->scope.contains(here))
        return true;
    // Any cell within delta of the agent that changed kind since planning.
    for (int y = 0; y < env.height(); ++y) {
        for (int x = 0; x < env.width(); ++x) {
            const Vec2i p{x, y};
            if (!within_distance(env.pose().position, p, params_.delta, params_.norm))
                continue;
            if (env.at(p) != plan_->cell_snapshot[static_cast<std::size_t>(y * env.width() + x)])
                return true;
        }
    }
    return false;
}

void RLAgent::replan(const MazeState& env) {
    Plan plan;
    plan.scope = scoped_states(env, params_.delta, params_.norm);
    auto [values, policy] = value_iteration(plan.scope, env, reward_model_, params_.gamma,
                                            params_.vi_tolerance, params_.vi_max_iter);
    plan.values = std::move(values);
    plan.policy = std::move(policy);
    plan.cell_snapshot.reserve(static_cast<std::size_t>(env.width()) * env.height());
    for (int y = 0; y < env.height(); ++y)
        for (int x = 0; x < env.width(); ++x)
            plan.cell_snapshot.push_back(env.at(Vec2i{x, y}));
    plan_ = std::move(plan);
    ++plans_made_;
}

RLAgent::Decision RLAgent::decide(const MazeState& env) {
    Decision d;
    if (needs_replan(env)) {
        replan(env);
        d.replanned = true;
    }
    if (rng_.unit() < params_.alpha) {
        d.action = kActionOrder[rng_.below(3)];
        d.explored = true;
        return d;
    }
    const RLState here{env.pose().position, env.pose().heading};
    const int idx = plan_->scope.index_of(here);
    d.action = plan_->policy.actions[static_cast<std::size_t>(idx)];
    return d;
}

} // namespace enactlab
