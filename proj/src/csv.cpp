#include "enactlab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace enactlab {

std::string format_double(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string heading_name(Heading h) {
    switch (h) {
    case Heading::North: return "N";
    case Heading::East: return "E";
    case Heading::South: return "S";
    case Heading::West: return "W";
    }
    return "?";
}

std::string action_name(Action a) {
    switch (a) {
    case Action::Step: return "step";
    case Action::TurnLeft: return "turnl";
    case Action::TurnRight: return "turnr";
    }
    return "?";
}

std::string trials_csv(const std::vector<TrialResult>& results) {
    std::ostringstream out;
    out << "agent,alpha,d,delta,seed,gain,neg_valence_total,ticks\n";
    for (const auto& r : results) {
        const bool enactive = r.config.agent == AgentKind::Enactive;
        out << agent_kind_name(r.config.agent) << ',' << format_double(r.config.alpha) << ','
            << (enactive ? std::to_string(r.config.d) : std::string()) << ','
            << (enactive ? std::string() : format_double(r.config.delta)) << ','
            << r.config.seed << ',' << r.gain << ',' << r.neg_valence_total << ',' << r.ticks
            << "\n";
    }
    return out.str();
}

std::string windows_csv(const WindowStats& stats) {
    std::ostringstream out;
    out << "window_index,mean_std_across_trials\n";
    for (int w = 1; w <= stats.n_windows; ++w)
        out << w << ',' << format_double(stats.std_per_window[static_cast<std::size_t>(w - 1)])
            << "\n";
    return out.str();
}

std::string sweep_csv(const SweepTable& table) {
    std::ostringstream out;
    out << "agent,alpha,param_name,param_value,mean_gain,std_gain,n_seeds\n";
    for (const auto& cell : table.cells) {
        out << agent_kind_name(cell.agent) << ',' << format_double(cell.alpha) << ','
            << cell.param_name << ',' << format_double(cell.param_value) << ','
            << format_double(cell.mean_gain) << ',' << format_double(cell.std_gain) << ','
            << cell.seeds.size() << "\n";
    }
    return out.str();
}

std::string ticks_csv(const TrialResult& result) {
    std::ostringstream out;
    out << "tick,x,y,heading,action,value,ate_food,enaction\n";
    for (const auto& e : result.log) {
        out << e.tick << ',' << e.pose.position.x << ',' << e.pose.position.y << ','
            << heading_name(e.pose.heading) << ',' << action_name(e.action) << ','
            << format_double(e.value) << ',' << (e.ate_food ? 1 : 0) << ',';
        if (e.enaction != kNoInteraction)
            out << e.enaction;
        out << "\n";
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write file: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f)
        throw std::runtime_error("write failed: " + path);
}

} // namespace enactlab
