#pragma once

#include <string>
#include <vector>

#include "enactlab/harness.hpp"

namespace enactlab {

/// Shortest decimal form that still round-trips: integers print bare,
/// everything else gets 17 significant digits.
std::string format_double(double v);

std::string heading_name(Heading h);
std::string action_name(Action a);

/// trials.csv: agent,alpha,d,delta,seed,gain,neg_valence_total,ticks
/// Only the parameter relevant to the agent kind is filled in.
std::string trials_csv(const std::vector<TrialResult>& results);

/// windows.csv: window_index,mean_std_across_trials (1-based indices)
std::string windows_csv(const WindowStats& stats);

/// sweep.csv: agent,alpha,param_name,param_value,mean_gain,std_gain,n_seeds
std::string sweep_csv(const SweepTable& table);

/// Per-tick log: tick,x,y,heading,action,value,ate_food,enaction
std::string ticks_csv(const TrialResult& result);

/// Writes bytes as-is (LF line endings preserved).
void write_file(const std::string& path, const std::string& content);

} // namespace enactlab
