#include "ssresf/stimulus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ssresf {

using nlohmann::json;

Stimulus load_stimulus(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::BadStimulus, e.what());
  }
  Stimulus stim;
  if (!j.is_object() || !j.contains("duration"))
    throw Error(ErrorKind::BadStimulus, "missing 'duration'");
  stim.duration = j.at("duration").get<SimTime>();
  stim.initial_dff_state = j.value("init_dff", 0) != 0;

  if (j.contains("clock")) {
    const auto& c = j.at("clock");
    ClockSpec spec;
    spec.net = c.at("net").get<std::string>();
    spec.period = c.at("period").get<SimTime>();
    spec.first_edge = c.at("first_edge").get<SimTime>();
    if (spec.period < 2)
      throw Error(ErrorKind::BadStimulus, "clock period must be >= 2");
    stim.clock = spec;
  }

  if (j.contains("inputs")) {
    for (const auto& [name, wave] : j.at("inputs").items()) {
      std::vector<std::pair<SimTime, bool>> points;
      for (const auto& p : wave) {
        if (!p.is_array() || p.size() != 2)
          throw Error(ErrorKind::BadStimulus, "input points must be [t, v]");
        points.emplace_back(p[0].get<SimTime>(), p[1].get<int>() != 0);
      }
      stim.inputs.emplace(name, std::move(points));
    }
  }
  return stim;
}

Stimulus load_stimulus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_stimulus(ss.str());
}

void validate_stimulus(const Stimulus& stim, const FlatDesign& design) {
  auto net_by_name = [&](const std::string& name) -> NetId {
    for (NetId n = 0; n < static_cast<NetId>(design.net_count()); ++n)
      if (design.net_names[n] == name) return n;
    return -1;
  };
  auto is_primary_input = [&](NetId n) {
    return std::find(design.primary_inputs.begin(), design.primary_inputs.end(),
                     n) != design.primary_inputs.end();
  };

  if (stim.clock) {
    NetId clk = net_by_name(stim.clock->net);
    if (clk < 0 || !is_primary_input(clk))
      throw Error(ErrorKind::BadStimulus,
                  "clock net '" + stim.clock->net + "' is not a primary input");
  }
  for (const auto& [name, wave] : stim.inputs) {
    NetId n = net_by_name(name);
    if (n < 0 || !is_primary_input(n))
      throw Error(ErrorKind::BadStimulus,
                  "driven net '" + name + "' is not a primary input");
    if (stim.clock && name == stim.clock->net)
      throw Error(ErrorKind::BadStimulus,
                  "clock net '" + name + "' also has an input waveform");
    for (size_t i = 0; i < wave.size(); ++i) {
      if (i > 0 && wave[i].first <= wave[i - 1].first)
        throw Error(ErrorKind::BadStimulus,
                    "waveform times for '" + name + "' must increase");
      if (wave[i].first >= stim.duration)
        throw Error(ErrorKind::BadStimulus,
                    "waveform point past duration on '" + name + "'");
    }
  }
}

}  // namespace ssresf
