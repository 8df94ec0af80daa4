#include "ssresf/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace ssresf {

namespace {

std::mt19937_64 stream_rng(uint64_t seed, uint64_t index) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(index),
                    static_cast<uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::vector<std::vector<CellId>> sample_cells(
    const std::vector<Cluster>& clusters, double fraction, uint64_t seed) {
  std::vector<std::vector<CellId>> samples;
  samples.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    auto n = cluster.members.size();
    auto want = static_cast<size_t>(std::llround(n * fraction));
    want = std::clamp<size_t>(want, 1, n);
    std::vector<CellId> pool = cluster.members;
    std::sort(pool.begin(), pool.end());
    auto rng = stream_rng(seed, static_cast<uint64_t>(cluster.cluster_id));
    for (size_t i = 0; i < want; ++i)
      std::swap(pool[i], pool[i + rng() % (pool.size() - i)]);
    pool.resize(want);
    std::sort(pool.begin(), pool.end());
    samples.push_back(std::move(pool));
  }
  return samples;
}

std::vector<InjectionEvent> build_injection_list(
    const FlatDesign& design, const std::vector<std::vector<CellId>>& samples,
    const FaultDb& db, const CampaignConfig& cfg, const Stimulus& stim) {
  std::vector<CellId> targets;
  for (const auto& s : samples) targets.insert(targets.end(), s.begin(), s.end());
  std::sort(targets.begin(), targets.end());

  std::vector<double> cumulative;
  cumulative.reserve(targets.size());
  double total = 0;
  for (CellId id : targets) {
    const CellInfo& cell = design.cells[id];
    const char* type = gate_name(cell.type);
    if (!db.find(type))
      throw Error(ErrorKind::MissingFaultRecord, type);
    FaultKind kind = cell.kind == CellKind::Sequential ? FaultKind::SEU
                                                       : FaultKind::SET;
    total += cross_section(db, type, kind, cfg.let);
    cumulative.push_back(total);
  }

  auto count = static_cast<uint64_t>(
      std::llround(cfg.flux * cfg.device_area * cfg.window));
  std::vector<InjectionEvent> events;
  if (total <= 0 || targets.empty()) return events;
  events.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    auto rng = stream_rng(cfg.seed, i);
    double u = std::uniform_real_distribution<double>(0.0, total)(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    size_t pick = std::min<size_t>(it - cumulative.begin(), targets.size() - 1);
    const CellInfo& cell = design.cells[targets[pick]];
    SimTime t = std::uniform_int_distribution<SimTime>(0, stim.duration - 1)(rng);
    if (cell.kind == CellKind::Sequential)
      events.push_back(make_seu_event(cell, t));
    else
      events.push_back(make_set_event(cell, t, cfg.let, db));
  }
  return events;
}

CampaignResult run_campaign(const FlatDesign& design, const Stimulus& stim,
                            const std::vector<InjectionEvent>& events,
                            const std::vector<Cluster>& clusters,
                            const std::vector<std::vector<CellId>>& samples,
                            int jobs, std::vector<bool>* verdicts_out) {
  Trace golden = simulate(design, stim, {});

  std::vector<uint8_t> is_error(events.size(), 0);
  auto worker = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      Trace faulty = simulate(design, stim, {events[i]});
      auto verdict =
          compare_traces(golden, faulty, events[i].time, stim.duration);
      is_error[i] = verdict.outcome == Outcome::SoftError;
    }
  };
  if (jobs <= 1 || events.size() < 2) {
    worker(0, events.size());
  } else {
    size_t n = std::min<size_t>(jobs, events.size());
    std::vector<std::thread> threads;
    size_t chunk = (events.size() + n - 1) / n;
    for (size_t t = 0; t < n; ++t)
      threads.emplace_back(worker, t * chunk,
                           std::min(events.size(), (t + 1) * chunk));
    for (auto& th : threads) th.join();
  }
  if (verdicts_out)
    verdicts_out->assign(is_error.begin(), is_error.end());

  CampaignResult result;
  std::vector<int> cluster_of(design.cells.size(), -1);
  result.clusters.resize(clusters.size());
  for (size_t k = 0; k < clusters.size(); ++k) {
    auto& cs = result.clusters[k];
    cs.cluster_id = clusters[k].cluster_id;
    cs.size = clusters[k].members.size();
    cs.sampled = samples.at(k);
    for (CellId m : clusters[k].members) cluster_of[m] = static_cast<int>(k);
  }

  for (size_t i = 0; i < events.size(); ++i) {
    CellId target = events[i].target_cell;
    auto& cs = result.clusters[cluster_of[target]];
    cs.injections += 1;
    cs.soft_errors += is_error[i];
    auto& node = result.nodes[target];
    node.cell = target;
    node.injections += 1;
    node.soft_errors += is_error[i];
  }
  for (auto& [id, node] : result.nodes)
    node.sensitivity =
        node.injections ? double(node.soft_errors) / double(node.injections) : 0;

  compute_ser(result);
  result.ranked_nodes = rank_sensitive_nodes(result);
  return result;
}

void compute_ser(CampaignResult& result) {
  for (auto& cs : result.clusters) {
    cs.unsampled = cs.injections == 0;
    cs.ser = cs.unsampled ? 0.0 : double(cs.soft_errors) / double(cs.injections);
  }
  result.chip_ser = chip_ser(result.clusters);
}

double chip_ser(const std::vector<ClusterStats>& clusters) {
  double num = 0, den = 0;
  for (const auto& cs : clusters) {
    num += double(cs.size) * cs.ser;
    den += double(cs.size);
  }
  return den > 0 ? num / den : 0.0;
}

void estimate_xsect(CampaignResult& result, const FlatDesign& design,
                    const std::vector<InjectionEvent>& events,
                    const std::vector<bool>& is_error,
                    const CampaignConfig& cfg) {
  double fluence = cfg.flux * cfg.window;
  if (fluence <= 0) throw Error(ErrorKind::ZeroFluence, "flux*window <= 0");
  uint64_t set_errors = 0, seu_errors = 0;
  for (size_t i = 0; i < events.size(); ++i) {
    if (!is_error[i]) continue;
    (events[i].kind == FaultKind::SET ? set_errors : seu_errors) += 1;
  }
  (void)design;
  result.sigma_set = double(set_errors) / fluence;
  result.sigma_seu = double(seu_errors) / fluence;
}

std::vector<CellId> rank_sensitive_nodes(const CampaignResult& result) {
  // Cluster order: SER descending, then cluster id.
  std::vector<size_t> order(result.clusters.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    const auto& ca = result.clusters[a];
    const auto& cb = result.clusters[b];
    if (ca.ser != cb.ser) return ca.ser > cb.ser;
    return ca.cluster_id < cb.cluster_id;
  });

  std::vector<CellId> ranked;
  for (size_t k : order) {
    std::vector<CellId> nodes;
    for (CellId id : result.clusters[k].sampled)
      if (result.nodes.count(id)) nodes.push_back(id);
    std::sort(nodes.begin(), nodes.end(), [&](CellId a, CellId b) {
      double sa = result.nodes.at(a).sensitivity;
      double sb = result.nodes.at(b).sensitivity;
      if (sa != sb) return sa > sb;
      return a < b;
    });
    ranked.insert(ranked.end(), nodes.begin(), nodes.end());
  }
  return ranked;
}

CampaignOutput run_full_campaign(const FlatDesign& design, const Stimulus& stim,
                                 const std::vector<Cluster>& clusters,
                                 const FaultDb& db, const CampaignConfig& cfg) {
  if (cfg.sample_fraction <= 0 || cfg.sample_fraction > 1)
    throw Error(ErrorKind::SchemaError, "sample_fraction must be in (0, 1]");
  CampaignOutput out;
  out.samples = sample_cells(clusters, cfg.sample_fraction, cfg.seed);
  out.events = build_injection_list(design, out.samples, db, cfg, stim);
  out.result = run_campaign(design, stim, out.events, clusters, out.samples,
                            cfg.jobs, &out.is_error);
  // With zero fluence there is nothing to normalize by; the cross-sections
  // stay at their all-zero defaults.
  if (cfg.flux * cfg.window > 0)
    estimate_xsect(out.result, design, out.events, out.is_error, cfg);
  return out;
}

std::string campaign_report_json(const CampaignOutput& out,
                                 const CampaignConfig& cfg,
                                 const FlatDesign& design) {
  nlohmann::json j;
  j["config"] = {{"let", cfg.let},
                 {"flux", cfg.flux},
                 {"device_area", cfg.device_area},
                 {"window", cfg.window},
                 {"sample_fraction", cfg.sample_fraction},
                 {"seed", cfg.seed}};
  j["clusters"] = nlohmann::json::array();
  for (const auto& cs : out.result.clusters) {
    nlohmann::json row = {{"id", cs.cluster_id},
                          {"size", cs.size},
                          {"sampled", cs.sampled.size()},
                          {"injections", cs.injections},
                          {"soft_errors", cs.soft_errors},
                          {"ser", cs.ser}};
    if (cs.unsampled) row["unsampled"] = true;
    j["clusters"].push_back(row);
  }
  j["chip_ser"] = out.result.chip_ser;
  j["sigma_set"] = out.result.sigma_set;
  j["sigma_seu"] = out.result.sigma_seu;
  j["ranked_nodes"] = nlohmann::json::array();
  for (CellId id : out.result.ranked_nodes) {
    const auto& node = out.result.nodes.at(id);
    j["ranked_nodes"].push_back({{"cell", id},
                                 {"name", design.cells[id].full_name()},
                                 {"injections", node.injections},
                                 {"soft_errors", node.soft_errors},
                                 {"sensitivity", node.sensitivity}});
  }
  return j.dump(2) + "\n";
}

std::string campaign_report_text(const CampaignOutput& out,
                                 const CampaignConfig& cfg) {
  std::ostringstream os;
  os << "LET " << cfg.let << "  flux " << cfg.flux << "  area "
     << cfg.device_area << "  window " << cfg.window << "\n";
  os << "cluster  size  sampled  injections  errors  SER\n";
  char line[128];
  for (const auto& cs : out.result.clusters) {
    std::snprintf(line, sizeof line, "%-7d  %-4llu  %-7zu  %-10llu  %-6llu  %.4f%s\n",
                  cs.cluster_id, (unsigned long long)cs.size, cs.sampled.size(),
                  (unsigned long long)cs.injections,
                  (unsigned long long)cs.soft_errors, cs.ser,
                  cs.unsampled ? "  (unsampled)" : "");
    os << line;
  }
  std::snprintf(line, sizeof line,
                "chip SER %.4f   SET Xsect %.4e cm^2   SEU Xsect %.4e cm^2\n",
                out.result.chip_ser, out.result.sigma_set, out.result.sigma_seu);
  os << line;
  return os.str();
}

}  // namespace ssresf
