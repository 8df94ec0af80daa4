#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "ssresf/netlist.hpp"

namespace ssresf {

using NetId = int32_t;
using CellId = int32_t;

enum class CellKind { Combinational, Sequential };

struct CellInfo {
  CellId id = -1;
  std::vector<std::string> path;  // enclosing module instances, outermost first
  std::string instance_name;
  GateType type = GateType::BUF;
  CellKind kind = CellKind::Combinational;
  std::vector<NetId> inputs;  // in library port order
  NetId output = -1;

  std::string full_name() const;
};

/// Elaborated netlist: hierarchy flattened to library cells over a single
/// net namespace. Immutable after elaboration.
struct FlatDesign {
  std::vector<CellInfo> cells;
  std::vector<std::string> net_names;
  std::vector<NetId> primary_inputs;
  std::vector<NetId> primary_outputs;
  std::vector<NetId> clock_nets;  // nets tied to any CK pin

  // driver[net] = driving cell, or -1 when primary input / undriven
  std::vector<CellId> driver;
  // fanout[net] = (cell, input pin index) pairs reading the net
  std::vector<std::vector<std::pair<CellId, int>>> fanout;

  size_t net_count() const { return net_names.size(); }
};

FlatDesign elaborate(const NetlistSource& src, const std::string& top);

/// Combinational level per cell: sources (primary inputs, DFF outputs) are
/// level 0, every cell is 1 + max level of its combinational input drivers.
std::vector<int> levelize(const FlatDesign& d);

/// Distance to the observation boundary: cells feeding only primary outputs
/// or DFF inputs get 1.
std::vector<int> reverse_levelize(const FlatDesign& d);

}  // namespace ssresf
