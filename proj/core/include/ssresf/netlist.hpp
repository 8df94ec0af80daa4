#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssresf/error.hpp"

namespace ssresf {

enum class PortDir { Input, Output };

/// Library gate identifiers. Everything else is a user module.
enum class GateType {
  NOT, BUF, AND2, OR2, NAND2, NOR2, XOR2, XNOR2, MUX2, DFF, DFFR,
};

struct GateDef {
  GateType type;
  const char* name;
  std::vector<const char*> inputs;   // port order as written positionally
  const char* output;                // single output, last positional port
};

const std::vector<GateDef>& gate_library();
const GateDef* find_gate(const std::string& name);
const char* gate_name(GateType t);
bool is_sequential_gate(GateType t);

/// Evaluate a combinational gate on its input values (DFF/DFFR not allowed).
bool eval_gate(GateType t, const std::vector<bool>& inputs);

struct PortDecl {
  PortDir dir;
  std::string name;
};

struct Connection {
  std::string port;  // empty while still positional
  std::string net;
};

struct Instance {
  std::string master;
  std::string name;
  std::vector<Connection> conns;
  int line = 0;
};

struct ModuleDef {
  std::string name;
  std::vector<PortDecl> ports;
  std::vector<std::string> wires;
  std::vector<Instance> instances;
};

struct NetlistSource {
  std::vector<ModuleDef> modules;

  const ModuleDef* find_module(const std::string& name) const;
};

/// Parse the structural netlist grammar. Positional connections are resolved
/// to named ones by master port order; net and master references are checked.
NetlistSource parse_netlist(const std::string& text);

/// Inverse of parse_netlist up to whitespace and comments.
std::string print_netlist(const NetlistSource& src);

}  // namespace ssresf
