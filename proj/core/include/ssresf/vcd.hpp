#pragma once

#include <string>

#include "ssresf/design.hpp"
#include "ssresf/trace.hpp"

namespace ssresf {

/// Minimal IEEE-1364 VCD dump of a trace: one flat scope, 1-bit wires.
std::string write_vcd(const Trace& trace, const FlatDesign& design,
                      double time_unit_ns = 1.0);

/// Parse a VCD produced by write_vcd back into a Trace (net ids resolved by
/// name against the design).
Trace read_vcd(const std::string& text, const FlatDesign& design);

}  // namespace ssresf
