#include "ssresf/vcd.hpp"

#include <map>
#include <sstream>

namespace ssresf {

namespace {

// Printable short identifiers: '!'..'~', then two characters, and so on.
std::string vcd_id(size_t index) {
  std::string id;
  do {
    id += static_cast<char>('!' + index % 94);
    index /= 94;
  } while (index > 0);
  return id;
}

}  // namespace

std::string write_vcd(const Trace& trace, const FlatDesign& design,
                      double time_unit_ns) {
  std::ostringstream os;
  os << "$timescale " << time_unit_ns << "ns $end\n";
  os << "$scope module top $end\n";
  std::map<NetId, std::string> ids;
  size_t index = 0;
  for (const auto& [net, wave] : trace.waves) {
    ids[net] = vcd_id(index++);
    os << "$var wire 1 " << ids[net] << " " << design.net_names[net]
       << " $end\n";
  }
  os << "$upscope $end\n$enddefinitions $end\n";

  // Merge all waveforms into time-ordered change blocks.
  std::map<SimTime, std::vector<std::pair<NetId, bool>>> blocks;
  for (const auto& [net, wave] : trace.waves)
    for (const auto& [t, v] : wave) blocks[t].push_back({net, v});
  for (const auto& [t, changes] : blocks) {
    os << "#" << t << "\n";
    for (const auto& [net, v] : changes) os << (v ? '1' : '0') << ids[net] << "\n";
  }
  os << "#" << trace.duration << "\n";
  return os.str();
}

Trace read_vcd(const std::string& text, const FlatDesign& design) {
  Trace trace;
  std::map<std::string, NetId> by_id;
  std::istringstream in(text);
  std::string tok;
  SimTime now = 0, last = 0;

  while (in >> tok) {
    if (tok == "$timescale" || tok == "$scope" || tok == "$upscope" ||
        tok == "$enddefinitions") {
      while (in >> tok && tok != "$end") {
      }
    } else if (tok == "$var") {
      std::string kind, width, id, name, end;
      in >> kind >> width >> id >> name >> end;
      NetId net = -1;
      for (NetId n = 0; n < static_cast<NetId>(design.net_count()); ++n)
        if (design.net_names[n] == name) net = n;
      if (net < 0) throw Error(ErrorKind::NetSetMismatch, "unknown net " + name);
      by_id[id] = net;
      trace.waves[net] = {{0, false}};
    } else if (tok[0] == '#') {
      now = std::stoull(tok.substr(1));
      last = std::max(last, now);
    } else if (tok[0] == '0' || tok[0] == '1') {
      bool v = tok[0] == '1';
      auto it = by_id.find(tok.substr(1));
      if (it == by_id.end())
        throw Error(ErrorKind::NetSetMismatch, "unknown id in " + tok);
      auto& wave = trace.waves[it->second];
      if (wave.back().first == now)
        wave.back().second = v;
      else if (wave.back().second != v)
        wave.push_back({now, v});
    }
  }
  trace.duration = last;
  return trace;
}

}  // namespace ssresf
