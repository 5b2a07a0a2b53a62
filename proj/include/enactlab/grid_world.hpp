#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "enactlab/rng.hpp"

namespace enactlab {

enum class Cell : std::uint8_t { Empty, Obstacle, Food };
enum class Heading : std::uint8_t { North, East, South, West };
enum class Action : std::uint8_t { Step, TurnLeft, TurnRight };

/// Raised for malformed maze text or unusable environment parameters.
struct MazeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Vec2i {
    int x = 0;
    int y = 0;
    friend bool operator==(Vec2i a, Vec2i b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(Vec2i a, Vec2i b) { return !(a == b); }
};

// Coordinate convention: x grows East, y grows South, North = decreasing y
// (matches the row order of the ASCII maze format).
Heading turn_left(Heading h);
Heading turn_right(Heading h);
Vec2i heading_delta(Heading h);
char heading_char(Heading h);

struct AgentPose {
    Vec2i position;
    Heading heading = Heading::North;
    friend bool operator==(const AgentPose& a, const AgentPose& b) {
        return a.position == b.position && a.heading == b.heading;
    }
};

struct EnvConfig {
    int replenish_interval = 200;
    int replenish_count = 20;
    int trial_length = 1000;
    int initial_food = 18;
    std::string maze_file;
    std::uint64_t seed = 1;
};

struct ActionOutcome {
    Action action = Action::Step;
    bool succeeded = false;
    bool ate_food = false;
    AgentPose new_pose;
};

enum class DistanceNorm : std::uint8_t { Euclidean, Manhattan };

bool within_distance(Vec2i a, Vec2i b, double delta,
                     DistanceNorm norm = DistanceNorm::Euclidean);

/// Deterministic maze environment. Cells are Empty, Obstacle or Food; the
/// agent occupies one non-obstacle cell and has a heading. Moving off-grid
/// behaves exactly like hitting an obstacle. Food is consumed by stepping
/// onto it and is never placed on the agent's own cell.
///
/// Placement bookkeeping (food_placed / food_eaten / placements_skipped)
/// supports the conservation identity checked after every tick:
///   food on grid == food_placed - food_eaten
///   food_placed + placements_skipped == everything ever requested
class MazeState {
public:
    int width() const { return width_; }
    int height() const { return height_; }
    int tick() const { return tick_; }
    const AgentPose& pose() const { return pose_; }

    /// Teleport the agent (tests, scenario setup). The target must be a
    /// non-obstacle cell.
    void set_pose(const AgentPose& pose);

    bool in_bounds(Vec2i p) const {
        return p.x >= 0 && p.x < width_ && p.y >= 0 && p.y < height_;
    }
    Cell at(Vec2i p) const { return cells_[index(p)]; }

    int food_on_grid() const { return food_on_grid_; }
    long long food_placed() const { return food_placed_; }
    long long food_eaten() const { return food_eaten_; }
    long long placements_skipped() const { return placements_skipped_; }

    /// Turn Empty non-agent cells into Food, chosen uniformly without
    /// replacement. Requests beyond the number of free cells are skipped
    /// and recorded. Returns the number actually placed.
    int place_food(int count, Rng& rng);

    /// Apply one action. Turns always succeed; Step fails against an
    /// obstacle or the grid border and leaves the pose unchanged.
    ActionOutcome attempt_action(Action action);

    /// Advance the clock by one tick; on every positive multiple of
    /// config.replenish_interval, replenishment food is placed.
    void tick_environment(const EnvConfig& config, Rng& rng);

    /// All grid positions within `delta` of the agent, with their cells,
    /// in row-major order.
    std::vector<std::pair<Vec2i, Cell>> visible_states(
        double delta, DistanceNorm norm = DistanceNorm::Euclidean) const;

    /// ASCII rendering in the maze file format, agent drawn as its heading.
    std::string render() const;

    friend MazeState load_maze(const std::string& text);

private:
    int index(Vec2i p) const { return p.y * width_ + p.x; }

    int width_ = 0;
    int height_ = 0;
    std::vector<Cell> cells_;
    AgentPose pose_;
    int tick_ = 0;
    int food_on_grid_ = 0;
    long long food_placed_ = 0;
    long long food_eaten_ = 0;
    long long placements_skipped_ = 0;
};

/// Parse maze text: '#' obstacle, '.' empty, 'F' food, one of '^' '>' 'v'
/// '<' marks the agent start and its heading. Lines must be equal length
/// and exactly one agent marker must be present.
MazeState load_maze(const std::string& text);

MazeState load_maze_file(const std::string& path);

std::string read_text_file(const std::string& path);

/// The 10x8 maze the experiments use by default (also shipped as
/// data/default_maze.txt).
const std::string& default_maze_text();

} // namespace enactlab
