#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ssresf/design.hpp"

namespace ssresf {

enum class FaultKind { SET, SEU };

using SimTime = uint64_t;

struct FaultRecord {
  std::string cell_type;
  FaultKind kind = FaultKind::SET;
  std::vector<std::pair<double, double>> let_xsect;   // (LET, cm^2), LET increasing
  std::vector<std::pair<double, double>> pulse_width; // (LET, ticks), SET only
};

struct FaultDb {
  double time_unit_ns = 1.0;
  std::map<std::string, FaultRecord> cell_types;

  const FaultRecord* find(const std::string& cell_type) const;
};

struct InjectionEvent {
  CellId target_cell = -1;
  FaultKind kind = FaultKind::SET;
  SimTime time = 0;
  SimTime width = 0;  // SET only; SEU duration comes from the clock
};

FaultDb load_fault_db(const std::string& text);
FaultDb load_fault_db_file(const std::string& path);

/// Cross-section at the given LET: exact at table points, log-linear in
/// between, clamped to the end values outside the table.
double cross_section(const FaultDb& db, const std::string& cell_type,
                     FaultKind kind, double let);

/// Pulse width at the given LET (linear interpolation, clamped), rounded to
/// whole ticks with a floor of 1.
SimTime pulse_width(const FaultDb& db, const std::string& cell_type, double let);

InjectionEvent make_set_event(const CellInfo& cell, SimTime time, double let,
                              const FaultDb& db);
InjectionEvent make_seu_event(const CellInfo& cell, SimTime time);

}  // namespace ssresf
