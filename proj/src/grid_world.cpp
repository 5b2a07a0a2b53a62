#include "enactlab/grid_world.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace enactlab {

Heading turn_left(Heading h) {
    switch (h) {
    case Heading::North: return Heading::West;
    case Heading::West: return Heading::South;
    case Heading::South: return Heading::East;
    case Heading::East: return Heading::North;
    }
    return Heading::North;
}

Heading turn_right(Heading h) {
    switch (h) {
    case Heading::North: return Heading::East;
    case Heading::East: return Heading::South;
    case Heading::South: return Heading::West;
    case Heading::West: return Heading::North;
    }
    return Heading::North;
}

Vec2i heading_delta(Heading h) {
    switch (h) {
    case Heading::North: return {0, -1};
    case Heading::East: return {1, 0};
    case Heading::South: return {0, 1};
    case Heading::West: return {-1, 0};
    }
    return {0, 0};
}

char heading_char(Heading h) {
    switch (h) {
    case Heading::North: return '^';
    case Heading::East: return '>';
    case Heading::South: return 'v';
    case Heading::West: return '<';
    }
    return '?';
}

bool within_distance(Vec2i a, Vec2i b, double delta, DistanceNorm norm) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    if (norm == DistanceNorm::Manhattan)
        return std::abs(dx) + std::abs(dy) <= delta;
    return dx * dx + dy * dy <= delta * delta;
}

void MazeState::set_pose(const AgentPose& pose) {
    if (!in_bounds(pose.position) || at(pose.position) == Cell::Obstacle)
        throw MazeError("set_pose: target is not a free cell");
    pose_ = pose;
}

int MazeState::place_food(int count, Rng& rng) {
    if (count < 0)
        throw MazeError("place_food: negative count");

    // Free slots in row-major order; the draw sequence is fixed by this
    // ordering plus the generator state.
    std::vector<int> free_cells;
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            const Vec2i p{x, y};
            if (cells_[index(p)] == Cell::Empty && p != pose_.position)
                free_cells.push_back(index(p));
        }
    }

    const int avail = static_cast<int>(free_cells.size());
    const int placing = count < avail ? count : avail;

    // Partial Fisher-Yates: the first `placing` slots end up a uniform
    // sample without replacement.
    for (int i = 0; i < placing; ++i) {
        const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(avail - i)));
        std::swap(free_cells[i], free_cells[j]);
        cells_[free_cells[i]] = Cell::Food;
    }

    food_on_grid_ += placing;
    food_placed_ += placing;
    placements_skipped_ += count - placing;
    return placing;
}

ActionOutcome MazeState::attempt_action(Action action) {
    ActionOutcome out;
    out.action = action;

    switch (action) {
    case Action::TurnLeft:
        pose_.heading = turn_left(pose_.heading);
        out.succeeded = true;
        break;
    case Action::TurnRight:
        pose_.heading = turn_right(pose_.heading);
        out.succeeded = true;
        break;
    case Action::Step: {
        const Vec2i d = heading_delta(pose_.heading);
        const Vec2i target{pose_.position.x + d.x, pose_.position.y + d.y};
        if (!in_bounds(target) || at(target) == Cell::Obstacle) {
            out.succeeded = false;
        } else {
            if (at(target) == Cell::Food) {
                cells_[index(target)] = Cell::Empty;
                --food_on_grid_;
                ++food_eaten_;
                out.ate_food = true;
            }
            pose_.position = target;
            out.succeeded = true;
        }
        break;
    }
    }

    out.new_pose = pose_;
    return out;
}

void MazeState::tick_environment(const EnvConfig& config, Rng& rng) {
    if (tick_ >= config.trial_length)
        throw std::logic_error("tick_environment: trial length exhausted");
    ++tick_;
    if (config.replenish_interval > 0 && tick_ % config.replenish_interval == 0)
        place_food(config.replenish_count, rng);
}

std::vector<std::pair<Vec2i, Cell>> MazeState::visible_states(double delta,
                                                              DistanceNorm norm) const {
    std::vector<std::pair<Vec2i, Cell>> result;
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            const Vec2i p{x, y};
            if (within_distance(pose_.position, p, delta, norm))
                result.emplace_back(p, at(p));
        }
    }
    return result;
}

std::string MazeState::render() const {
    std::string out;
    out.reserve(static_cast<std::size_t>((width_ + 1) * height_));
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            const Vec2i p{x, y};
            if (p == pose_.position) {
                out += heading_char(pose_.heading);
            } else {
                switch (at(p)) {
                case Cell::Empty: out += '.'; break;
                case Cell::Obstacle: out += '#'; break;
                case Cell::Food: out += 'F'; break;
                }
            }
        }
        out += '\n';
    }
    return out;
}

MazeState load_maze(const std::string& text) {
    std::vector<std::string> rows;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() && in.peek() == std::char_traits<char>::eof())
            break;
        rows.push_back(line);
    }
    if (rows.empty())
        throw MazeError("maze text is empty");

    const std::size_t width = rows.front().size();
    if (width == 0)
        throw MazeError("maze rows are empty");
    for (const auto& r : rows) {
        if (r.size() != width)
            throw MazeError("maze text is not rectangular");
    }

    MazeState s;
    s.width_ = static_cast<int>(width);
    s.height_ = static_cast<int>(rows.size());
    s.cells_.assign(static_cast<std::size_t>(s.width_) * s.height_, Cell::Empty);

    int agents = 0;
    for (int y = 0; y < s.height_; ++y) {
        for (int x = 0; x < s.width_; ++x) {
            const char c = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
            const Vec2i p{x, y};
            switch (c) {
            case '#': s.cells_[s.index(p)] = Cell::Obstacle; break;
            case '.': break;
            case 'F':
                s.cells_[s.index(p)] = Cell::Food;
                ++s.food_on_grid_;
                ++s.food_placed_;
                break;
            case '^':
            case '>':
            case 'v':
            case '<':
                ++agents;
                s.pose_.position = p;
                s.pose_.heading = c == '^'   ? Heading::North
                                  : c == '>' ? Heading::East
                                  : c == 'v' ? Heading::South
                                             : Heading::West;
                break;
            default:
                throw MazeError(std::string("unknown maze character '") + c + "'");
            }
        }
    }
    if (agents != 1)
        throw MazeError("maze must contain exactly one agent marker, found " +
                        std::to_string(agents));
    return s;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw MazeError("cannot read file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

MazeState load_maze_file(const std::string& path) {
    return load_maze(read_text_file(path));
}

const std::string& default_maze_text() {
    // A corridor spine with three deep side pockets. The pockets hold food
    // that only exploratory behaviour reaches reliably, which is what the
    // foraging comparisons are about.
    static const std::string text = "##########\n"
                                    "##.##.##.#\n"
                                    "##.##.##.#\n"
                                    "##.##.##.#\n"
                                    "##.##.##.#\n"
                                    "##.##.##.#\n"
                                    "#^.......#\n"
                                    "##########\n";
    return text;
}

} // namespace enactlab
