#pragma once

#include <vector>

#include "ssresf/design.hpp"
#include "ssresf/stimulus.hpp"
#include "ssresf/trace.hpp"

namespace ssresf {

struct SimOptions {
  // Record every net instead of just the primary outputs (needed for
  // toggle-count feature extraction).
  bool record_all_nets = false;
};

/// Event-driven two-valued simulation with unit gate delay. SET events force
/// the target output to the complement of its driven value for `width`
/// ticks; SEU events complement the DFF state until the next rising clock
/// edge restores normal capture.
Trace simulate(const FlatDesign& design, const Stimulus& stim,
               const std::vector<InjectionEvent>& events,
               const SimOptions& opts = {});

}  // namespace ssresf
