#pragma once

#include <map>
#include <string>
#include <vector>

#include "ssresf/faultdb.hpp"

namespace ssresf {

/// Piecewise-constant waveforms for a set of recorded nets. Each waveform
/// starts with its value at t=0; later entries are strict value changes.
struct Trace {
  SimTime duration = 0;
  std::map<NetId, std::vector<std::pair<SimTime, bool>>> waves;

  bool value_at(NetId net, SimTime t) const;
  /// Number of value changes after t=0.
  size_t toggle_count(NetId net) const;
};

enum class Outcome { NoError, SoftError };

struct SoftErrorVerdict {
  Outcome outcome = Outcome::NoError;
  NetId divergence_net = -1;
  SimTime divergence_time = 0;
};

/// Compare two traces over [t0, t1); SoftError reports the earliest
/// divergence (ties broken by net id).
SoftErrorVerdict compare_traces(const Trace& golden, const Trace& faulty,
                                SimTime t0, SimTime t1);

}  // namespace ssresf
