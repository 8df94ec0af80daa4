#include "ssresf/design.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace ssresf {

std::string CellInfo::full_name() const {
  std::string s;
  for (const auto& p : path) {
    s += p;
    s += '/';
  }
  s += instance_name;
  return s;
}

namespace {

class Elaborator {
 public:
  explicit Elaborator(const NetlistSource& src) : src_(src) {}

  FlatDesign run(const std::string& top) {
    const ModuleDef* mod = src_.find_module(top);
    if (!mod) throw Error(ErrorKind::UnknownModule, top);

    // Top ports become the primary I/O nets.
    std::unordered_map<std::string, NetId> env;
    for (const auto& p : mod->ports) {
      NetId id = new_net(p.name);
      env[p.name] = id;
      (p.dir == PortDir::Input ? d_.primary_inputs : d_.primary_outputs)
          .push_back(id);
    }
    expand(*mod, {}, env);
    finish();
    return std::move(d_);
  }

 private:
  NetId new_net(std::string name) {
    d_.net_names.push_back(std::move(name));
    return static_cast<NetId>(d_.net_names.size() - 1);
  }

  static std::string join(const std::vector<std::string>& path,
                          const std::string& leaf) {
    std::string s;
    for (const auto& p : path) {
      s += p;
      s += '/';
    }
    s += leaf;
    return s;
  }

  void expand(const ModuleDef& mod, const std::vector<std::string>& path,
              std::unordered_map<std::string, NetId>& env) {
    if (!active_.insert(mod.name).second)
      throw Error(ErrorKind::RecursiveHierarchy, mod.name);

    for (const auto& w : mod.wires)
      env[w] = new_net(join(path, w));

    for (const auto& inst : mod.instances) {
      if (const GateDef* gate = find_gate(inst.master)) {
        make_cell(*gate, inst, path, env);
      } else {
        const ModuleDef& sub = *src_.find_module(inst.master);
        std::unordered_map<std::string, NetId> sub_env;
        std::vector<std::string> sub_path = path;
        sub_path.push_back(inst.name);
        for (const auto& p : sub.ports) {
          const Connection* conn = nullptr;
          for (const auto& c : inst.conns)
            if (c.port == p.name) conn = &c;
          // Unconnected subports get a private dangling net.
          sub_env[p.name] =
              conn ? env.at(conn->net) : new_net(join(sub_path, p.name));
        }
        expand(sub, sub_path, sub_env);
      }
    }
    active_.erase(mod.name);
  }

  void make_cell(const GateDef& gate, const Instance& inst,
                 const std::vector<std::string>& path,
                 const std::unordered_map<std::string, NetId>& env) {
    CellInfo cell;
    cell.id = static_cast<CellId>(d_.cells.size());
    cell.path = path;
    cell.instance_name = inst.name;
    cell.type = gate.type;
    cell.kind = is_sequential_gate(gate.type) ? CellKind::Sequential
                                              : CellKind::Combinational;
    auto lookup = [&](const std::string& port) -> NetId {
      for (const auto& c : inst.conns)
        if (c.port == port) return env.at(c.net);
      throw Error(ErrorKind::SyntaxError,
                  "unconnected port '" + port + "' on instance " +
                      join(path, inst.name));
    };
    for (const char* p : gate.inputs) cell.inputs.push_back(lookup(p));
    cell.output = lookup(gate.output);
    d_.cells.push_back(std::move(cell));
  }

  void finish() {
    d_.driver.assign(d_.net_count(), -1);
    d_.fanout.assign(d_.net_count(), {});
    std::vector<bool> is_pi(d_.net_count(), false);
    for (NetId n : d_.primary_inputs) is_pi[n] = true;

    std::unordered_set<NetId> clocks;
    for (const auto& cell : d_.cells) {
      if (is_pi[cell.output] || d_.driver[cell.output] >= 0)
        throw Error(ErrorKind::MultipleDrivers, d_.net_names[cell.output]);
      d_.driver[cell.output] = cell.id;
      for (size_t i = 0; i < cell.inputs.size(); ++i)
        d_.fanout[cell.inputs[i]].push_back({cell.id, static_cast<int>(i)});
      if (cell.kind == CellKind::Sequential) clocks.insert(cell.inputs[1]);
    }
    d_.clock_nets.assign(clocks.begin(), clocks.end());
    std::sort(d_.clock_nets.begin(), d_.clock_nets.end());
    levelize(d_);  // acyclicity check
  }

  const NetlistSource& src_;
  FlatDesign d_;
  std::unordered_set<std::string> active_;
};

[[noreturn]] void report_loop(const FlatDesign& d,
                              const std::vector<CellId>& stuck) {
  // Walk the stuck subgraph until a cell repeats; that closes a cycle.
  std::unordered_set<CellId> in_stuck(stuck.begin(), stuck.end());
  std::vector<CellId> chain;
  std::unordered_map<CellId, size_t> pos;
  CellId cur = stuck.front();
  while (!pos.count(cur)) {
    pos[cur] = chain.size();
    chain.push_back(cur);
    CellId next = -1;
    for (NetId in : d.cells[cur].inputs) {
      CellId drv = d.driver[in];
      if (drv >= 0 && in_stuck.count(drv)) {
        next = drv;
        break;
      }
    }
    cur = next;
  }
  std::ostringstream os;
  for (size_t i = pos[cur]; i < chain.size(); ++i) {
    if (i > pos[cur]) os << " -> ";
    os << d.cells[chain[i]].full_name();
  }
  throw Error(ErrorKind::CombinationalLoop, os.str());
}

}  // namespace

FlatDesign elaborate(const NetlistSource& src, const std::string& top) {
  return Elaborator(src).run(top);
}

std::vector<int> levelize(const FlatDesign& d) {
  // Kahn ordering over the combinational edges; DFF outputs are sources and
  // DFF inputs are sinks, so sequential cells never form dependency edges.
  std::vector<int> level(d.cells.size(), 0);
  std::vector<int> pending(d.cells.size(), 0);
  std::deque<CellId> ready;

  for (const auto& cell : d.cells) {
    int deps = 0;
    for (NetId in : cell.inputs) {
      CellId drv = d.driver[in];
      if (drv >= 0 && d.cells[drv].kind == CellKind::Combinational) ++deps;
    }
    pending[cell.id] = deps;
    if (deps == 0) ready.push_back(cell.id);
  }

  size_t done = 0;
  while (!ready.empty()) {
    CellId id = ready.front();
    ready.pop_front();
    ++done;
    const CellInfo& cell = d.cells[id];
    int lvl = 1;
    for (NetId in : cell.inputs) {
      CellId drv = d.driver[in];
      if (drv >= 0 && d.cells[drv].kind == CellKind::Combinational)
        lvl = std::max(lvl, level[drv] + 1);
    }
    level[id] = lvl;
    if (cell.kind == CellKind::Combinational)
      for (const auto& [reader, pin] : d.fanout[cell.output])
        if (--pending[reader] == 0) ready.push_back(reader);
  }

  if (done != d.cells.size()) {
    std::vector<CellId> stuck;
    for (const auto& cell : d.cells)
      if (pending[cell.id] > 0) stuck.push_back(cell.id);
    report_loop(d, stuck);
  }
  return level;
}

std::vector<int> reverse_levelize(const FlatDesign& d) {
  std::vector<int> level(d.cells.size(), 0);
  std::vector<int> pending(d.cells.size(), 0);
  std::deque<CellId> ready;

  for (const auto& cell : d.cells) {
    int deps = 0;
    for (const auto& [reader, pin] : d.fanout[cell.output])
      if (d.cells[reader].kind == CellKind::Combinational) ++deps;
    pending[cell.id] = deps;
    if (deps == 0) ready.push_back(cell.id);
  }

  while (!ready.empty()) {
    CellId id = ready.front();
    ready.pop_front();
    const CellInfo& cell = d.cells[id];
    int lvl = 1;
    for (const auto& [reader, pin] : d.fanout[cell.output])
      if (d.cells[reader].kind == CellKind::Combinational)
        lvl = std::max(lvl, level[reader] + 1);
    level[id] = lvl;
    if (cell.kind == CellKind::Combinational)
      for (NetId in : cell.inputs) {
        CellId drv = d.driver[in];
        if (drv >= 0 && --pending[drv] == 0) ready.push_back(drv);
      }
  }
  return level;
}

}  // namespace ssresf
