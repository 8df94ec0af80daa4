#include "ssresf/sim.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

namespace ssresf {

namespace {

// One time step's worth of pending work. Applied in a fixed phase order so
// simultaneous actions resolve deterministically.
struct Batch {
  std::map<NetId, bool> pin_changes;      // primary input / clock values
  std::map<NetId, bool> driven_updates;   // scheduled gate output values
  std::vector<CellId> seu_injects;
  std::vector<std::pair<NetId, SimTime>> force_releases;  // (net, expected end)
  std::vector<NetId> force_starts;
};

class Simulator {
 public:
  Simulator(const FlatDesign& design, const Stimulus& stim,
            const std::vector<InjectionEvent>& events, const SimOptions& opts)
      : d_(design), stim_(stim) {
    validate_stimulus(stim, design);

    value_.assign(d_.net_count(), false);
    driven_.assign(d_.net_count(), false);
    forced_.assign(d_.net_count(), false);
    forced_value_.assign(d_.net_count(), false);
    force_end_.assign(d_.net_count(), 0);
    dff_state_.assign(d_.cells.size(), stim.initial_dff_state);
    seu_pending_.assign(d_.cells.size(), false);

    recorded_.assign(d_.net_count(), opts.record_all_nets);
    if (!opts.record_all_nets)
      for (NetId n : d_.primary_outputs) recorded_[n] = true;

    for (const auto& ev : events) {
      if (ev.target_cell < 0 ||
          ev.target_cell >= static_cast<CellId>(d_.cells.size()))
        throw Error(ErrorKind::TargetNotFound,
                    "cell id " + std::to_string(ev.target_cell));
      if (ev.time >= stim.duration)
        throw Error(ErrorKind::EventAfterDuration,
                    "t=" + std::to_string(ev.time));
      const CellInfo& cell = d_.cells[ev.target_cell];
      if (ev.kind == FaultKind::SET) {
        if (cell.kind != CellKind::Combinational)
          throw Error(ErrorKind::KindMismatch,
                      "SET on sequential cell " + cell.full_name());
        if (ev.width == 0)
          throw Error(ErrorKind::KindMismatch, "SET width must be > 0");
        queue_[ev.time].force_starts.push_back(cell.output);
        set_widths_[ev.time][cell.output] = ev.width;
      } else {
        if (cell.kind != CellKind::Sequential)
          throw Error(ErrorKind::KindMismatch,
                      "SEU on combinational cell " + cell.full_name());
        queue_[ev.time].seu_injects.push_back(ev.target_cell);
      }
    }

    for (const auto& [name, wave] : stim.inputs) {
      NetId n = net_by_name(name);
      for (const auto& [t, v] : wave) queue_[t].pin_changes[n] = v;
    }
    if (stim.clock) {
      clock_net_ = net_by_name(stim.clock->net);
      SimTime half = stim.clock->period / 2;
      for (SimTime t = stim.clock->first_edge; t < stim.duration;
           t += stim.clock->period) {
        queue_[t].pin_changes[clock_net_] = true;
        if (t + half < stim.duration)
          queue_[t + half].pin_changes[clock_net_] = false;
      }
    }
    queue_[0];  // settle pass even with no t=0 actions
  }

  Trace run() {
    trace_.duration = stim_.duration;
    for (NetId n = 0; n < static_cast<NetId>(d_.net_count()); ++n)
      if (recorded_[n]) trace_.waves[n] = {{0, false}};

    bool first = true;
    while (!queue_.empty()) {
      auto it = queue_.begin();
      SimTime now = it->first;
      if (now >= stim_.duration) break;
      Batch batch = std::move(it->second);
      queue_.erase(it);
      step(now, batch, first);
      first = false;
    }
    return trace_;
  }

 private:
  NetId net_by_name(const std::string& name) const {
    for (NetId n = 0; n < static_cast<NetId>(d_.net_count()); ++n)
      if (d_.net_names[n] == name) return n;
    throw Error(ErrorKind::BadStimulus, "no net named " + name);
  }

  void set_value(NetId n, bool v, SimTime now,
                 std::vector<NetId>& changed) {
    if (value_[n] == v) return;
    value_[n] = v;
    changed.push_back(n);
    if (recorded_[n]) record(n, v, now);
  }

  void record(NetId n, bool v, SimTime now) {
    auto& wave = trace_.waves[n];
    if (wave.back().first == now) {
      wave.back().second = v;
      if (wave.size() >= 2 && wave[wave.size() - 2].second == v)
        wave.pop_back();  // change cancelled within the same tick
    } else {
      wave.push_back({now, v});
    }
  }

  void drive(NetId n, bool v, SimTime now, std::vector<NetId>& changed) {
    driven_[n] = v;
    if (!forced_[n]) set_value(n, v, now, changed);
  }

  void step(SimTime now, const Batch& batch, bool settle_all) {
    std::vector<NetId> changed;

    for (const auto& [n, v] : batch.pin_changes) {
      driven_[n] = v;
      set_value(n, v, now, changed);
    }
    for (const auto& [n, v] : batch.driven_updates) drive(n, v, now, changed);

    for (CellId c : batch.seu_injects) {
      dff_state_[c] = !dff_state_[c];
      seu_pending_[c] = true;
      drive(d_.cells[c].output, dff_state_[c], now, changed);
    }
    for (const auto& [n, expected_end] : batch.force_releases) {
      if (!forced_[n] || force_end_[n] != expected_end) continue;  // extended
      forced_[n] = false;
      set_value(n, driven_[n], now, changed);
    }
    for (NetId n : batch.force_starts) {
      SimTime width = set_widths_[now][n];
      if (!forced_[n]) {
        forced_value_[n] = !driven_[n];
        forced_[n] = true;
      }
      force_end_[n] = std::max<SimTime>(force_end_[n], now + width);
      queue_[force_end_[n]].force_releases.push_back({n, force_end_[n]});
      set_value(n, forced_value_[n], now, changed);
    }

    // DFF initialization and a full settle pass on the first step.
    if (settle_all) {
      for (const auto& cell : d_.cells)
        if (cell.kind == CellKind::Sequential)
          drive(cell.output, dff_state_[cell.id], now, changed);
      for (const auto& cell : d_.cells)
        if (cell.kind == CellKind::Combinational) eval_cell(cell, now);
      for (NetId n : changed) propagate(n, now);
      return;
    }

    for (size_t i = 0; i < changed.size(); ++i) propagate(changed[i], now);
  }

  void propagate(NetId n, SimTime now) {
    bool rising = value_[n];
    for (const auto& [reader, pin] : d_.fanout[n]) {
      const CellInfo& cell = d_.cells[reader];
      if (cell.kind == CellKind::Combinational) {
        eval_cell(cell, now);
      } else if (pin == 1 && rising) {
        capture(cell, now);
      } else if (cell.type == GateType::DFFR && pin == 2 && value_[n]) {
        dff_state_[cell.id] = false;
        queue_[now + 1].driven_updates[cell.output] = false;
      }
    }
  }

  void eval_cell(const CellInfo& cell, SimTime now) {
    std::vector<bool> in;
    in.reserve(cell.inputs.size());
    for (NetId net : cell.inputs) in.push_back(value_[net]);
    queue_[now + 1].driven_updates[cell.output] = eval_gate(cell.type, in);
  }

  void capture(const CellInfo& cell, SimTime now) {
    bool reset = cell.type == GateType::DFFR && value_[cell.inputs[2]];
    bool next = reset ? false : value_[cell.inputs[0]];
    dff_state_[cell.id] = next;
    if (seu_pending_[cell.id]) {
      // Recovery is immediate at the restoring edge; normal captures keep
      // the one-tick clock-to-Q delay.
      seu_pending_[cell.id] = false;
      std::vector<NetId> changed;
      drive(cell.output, next, now, changed);
      for (NetId n : changed) propagate(n, now);
    } else {
      queue_[now + 1].driven_updates[cell.output] = next;
    }
  }

  const FlatDesign& d_;
  const Stimulus& stim_;
  NetId clock_net_ = -1;

  std::map<SimTime, Batch> queue_;
  std::map<SimTime, std::map<NetId, SimTime>> set_widths_;

  std::vector<bool> value_, driven_, forced_, forced_value_;
  std::vector<SimTime> force_end_;
  std::vector<bool> dff_state_, seu_pending_;
  std::vector<bool> recorded_;
  Trace trace_;
};

}  // namespace

Trace simulate(const FlatDesign& design, const Stimulus& stim,
               const std::vector<InjectionEvent>& events,
               const SimOptions& opts) {
  return Simulator(design, stim, events, opts).run();
}

}  // namespace ssresf
