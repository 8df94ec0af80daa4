#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssresf/faultdb.hpp"

namespace ssresf {

struct ClockSpec {
  std::string net;
  SimTime period = 10;
  SimTime first_edge = 10;
};

struct Stimulus {
  std::optional<ClockSpec> clock;
  // per primary input: (time, value) points, times strictly increasing
  std::map<std::string, std::vector<std::pair<SimTime, bool>>> inputs;
  SimTime duration = 0;
  bool initial_dff_state = false;
};

Stimulus load_stimulus(const std::string& text);
Stimulus load_stimulus_file(const std::string& path);

/// Checks the stimulus against a design: driven nets must be primary inputs,
/// the clock net must exist, waveform times must be increasing and inside
/// the duration.
void validate_stimulus(const Stimulus& stim, const FlatDesign& design);

}  // namespace ssresf
