#include "ssresf/faultdb.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ssresf {

namespace {

using nlohmann::json;

std::vector<std::pair<double, double>> read_pairs(const json& arr,
                                                  const std::string& what) {
  std::vector<std::pair<double, double>> out;
  if (!arr.is_array())
    throw Error(ErrorKind::SchemaError, what + " must be an array of pairs");
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
      throw Error(ErrorKind::SchemaError, what + " entries must be [x, y]");
    out.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  return out;
}

double interp_clamped(const std::vector<std::pair<double, double>>& table,
                      double x, bool log_y) {
  if (x <= table.front().first) return table.front().second;
  if (x >= table.back().first) return table.back().second;
  for (size_t i = 1; i < table.size(); ++i) {
    if (x > table[i].first) continue;
    auto [x0, y0] = table[i - 1];
    auto [x1, y1] = table[i];
    if (x == x1) return y1;
    double t = (x - x0) / (x1 - x0);
    if (log_y) return std::exp(std::log(y0) + t * (std::log(y1) - std::log(y0)));
    return y0 + t * (y1 - y0);
  }
  return table.back().second;
}

}  // namespace

const FaultRecord* FaultDb::find(const std::string& cell_type) const {
  auto it = cell_types.find(cell_type);
  return it == cell_types.end() ? nullptr : &it->second;
}

FaultDb load_fault_db(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, e.what());
  }
  if (!j.is_object() || !j.contains("cell_types"))
    throw Error(ErrorKind::SchemaError, "missing 'cell_types'");

  FaultDb db;
  db.time_unit_ns = j.value("time_unit_ns", 1.0);
  for (const auto& [type_name, rec_json] : j.at("cell_types").items()) {
    FaultRecord rec;
    rec.cell_type = type_name;
    std::string kind = rec_json.value("fault_kind", "");
    if (kind == "SET")
      rec.kind = FaultKind::SET;
    else if (kind == "SEU")
      rec.kind = FaultKind::SEU;
    else
      throw Error(ErrorKind::SchemaError,
                  type_name + ": fault_kind must be SET or SEU");

    if (const GateDef* gate = find_gate(type_name)) {
      bool seq = is_sequential_gate(gate->type);
      if (seq != (rec.kind == FaultKind::SEU))
        throw Error(ErrorKind::KindMismatch,
                    type_name + " cannot carry " + kind + " records");
    }

    rec.let_xsect = read_pairs(rec_json.at("let_xsect"), type_name + ".let_xsect");
    if (rec.let_xsect.empty())
      throw Error(ErrorKind::SchemaError, type_name + ": empty let_xsect");
    for (size_t i = 0; i < rec.let_xsect.size(); ++i) {
      if (rec.let_xsect[i].second < 0)
        throw Error(ErrorKind::SchemaError,
                    type_name + ": negative cross-section");
      if (i > 0 && rec.let_xsect[i].first <= rec.let_xsect[i - 1].first)
        throw Error(ErrorKind::NonMonotoneLET, type_name);
    }

    if (rec.kind == FaultKind::SET) {
      if (!rec_json.contains("pulse_width"))
        throw Error(ErrorKind::SchemaError, type_name + ": SET needs pulse_width");
      rec.pulse_width =
          read_pairs(rec_json.at("pulse_width"), type_name + ".pulse_width");
      for (size_t i = 0; i < rec.pulse_width.size(); ++i) {
        if (rec.pulse_width[i].second <= 0)
          throw Error(ErrorKind::SchemaError,
                      type_name + ": pulse width must be positive");
        if (i > 0 && rec.pulse_width[i].first <= rec.pulse_width[i - 1].first)
          throw Error(ErrorKind::NonMonotoneLET, type_name + ".pulse_width");
      }
    }
    db.cell_types.emplace(type_name, std::move(rec));
  }
  return db;
}

FaultDb load_fault_db_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_fault_db(ss.str());
}

double cross_section(const FaultDb& db, const std::string& cell_type,
                     FaultKind kind, double let) {
  const FaultRecord* rec = db.find(cell_type);
  if (!rec || rec->kind != kind)
    throw Error(ErrorKind::UnknownCellType,
                cell_type + " (" + (kind == FaultKind::SET ? "SET" : "SEU") + ")");
  return interp_clamped(rec->let_xsect, let, /*log_y=*/true);
}

SimTime pulse_width(const FaultDb& db, const std::string& cell_type,
                    double let) {
  const FaultRecord* rec = db.find(cell_type);
  if (!rec || rec->kind != FaultKind::SET)
    throw Error(ErrorKind::UnknownCellType, cell_type + " (SET)");
  double w = interp_clamped(rec->pulse_width, let, /*log_y=*/false);
  auto ticks = static_cast<SimTime>(std::llround(w));
  return ticks < 1 ? 1 : ticks;
}

InjectionEvent make_set_event(const CellInfo& cell, SimTime time, double let,
                              const FaultDb& db) {
  if (cell.kind != CellKind::Combinational)
    throw Error(ErrorKind::KindMismatch,
                "SET on sequential cell " + cell.full_name());
  InjectionEvent ev;
  ev.target_cell = cell.id;
  ev.kind = FaultKind::SET;
  ev.time = time;
  ev.width = pulse_width(db, gate_name(cell.type), let);
  return ev;
}

InjectionEvent make_seu_event(const CellInfo& cell, SimTime time) {
  if (cell.kind != CellKind::Sequential)
    throw Error(ErrorKind::KindMismatch,
                "SEU on combinational cell " + cell.full_name());
  InjectionEvent ev;
  ev.target_cell = cell.id;
  ev.kind = FaultKind::SEU;
  ev.time = time;
  return ev;
}

}  // namespace ssresf
