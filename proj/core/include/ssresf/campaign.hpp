#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ssresf/clustering.hpp"
#include "ssresf/sim.hpp"

namespace ssresf {

struct CampaignConfig {
  double let = 37.0;          // MeV*cm^2/mg
  double flux = 4e8;          // particles/(cm^2*s)
  double device_area = 1e-5;  // cm^2
  double window = 1e-3;       // s
  double sample_fraction = 1.0;
  uint64_t seed = 0;
  int jobs = 1;
};

struct NodeStats {
  CellId cell = -1;
  uint64_t injections = 0;
  uint64_t soft_errors = 0;
  double sensitivity = 0.0;
};

struct ClusterStats {
  int cluster_id = 0;
  uint64_t size = 0;
  std::vector<CellId> sampled;
  uint64_t injections = 0;
  uint64_t soft_errors = 0;
  double ser = 0.0;
  bool unsampled = false;  // no injections landed here
};

struct CampaignResult {
  std::vector<ClusterStats> clusters;
  std::map<CellId, NodeStats> nodes;
  double chip_ser = 0.0;
  double sigma_set = 0.0;
  double sigma_seu = 0.0;
  std::vector<CellId> ranked_nodes;
};

/// Equal-proportion sampling: max(1, round(n * fraction)) cells from each
/// cluster, without replacement, deterministic per seed.
std::vector<std::vector<CellId>> sample_cells(
    const std::vector<Cluster>& clusters, double fraction, uint64_t seed);

/// round(flux * area * window) events; targets drawn with probability
/// proportional to cross-section at cfg.let, times uniform in [0, duration).
std::vector<InjectionEvent> build_injection_list(
    const FlatDesign& design, const std::vector<std::vector<CellId>>& samples,
    const FaultDb& db, const CampaignConfig& cfg, const Stimulus& stim);

/// One faulty simulation per event against a shared golden trace; fills the
/// per-cluster and per-node counts. `jobs` > 1 runs events in parallel with
/// identical results.
CampaignResult run_campaign(const FlatDesign& design, const Stimulus& stim,
                            const std::vector<InjectionEvent>& events,
                            const std::vector<Cluster>& clusters,
                            const std::vector<std::vector<CellId>>& samples,
                            int jobs = 1,
                            std::vector<bool>* verdicts_out = nullptr);

void compute_ser(CampaignResult& result);

double chip_ser(const std::vector<ClusterStats>& clusters);

/// Per-kind cross-section: soft errors of that kind / fluence.
void estimate_xsect(CampaignResult& result, const FlatDesign& design,
                    const std::vector<InjectionEvent>& events,
                    const std::vector<bool>& is_error,
                    const CampaignConfig& cfg);

/// Nodes ordered by cluster SER (descending), then node sensitivity, then id.
std::vector<CellId> rank_sensitive_nodes(const CampaignResult& result);

struct CampaignOutput {
  CampaignResult result;
  std::vector<InjectionEvent> events;
  std::vector<bool> is_error;
  std::vector<std::vector<CellId>> samples;
};

/// Full pipeline: sample, build the list, simulate, aggregate, rank.
CampaignOutput run_full_campaign(const FlatDesign& design, const Stimulus& stim,
                                 const std::vector<Cluster>& clusters,
                                 const FaultDb& db, const CampaignConfig& cfg);

/// Deterministic JSON report (config echo, per-cluster rows, chip SER,
/// cross-sections, ranked nodes).
std::string campaign_report_json(const CampaignOutput& out,
                                 const CampaignConfig& cfg,
                                 const FlatDesign& design);

/// Plain-text table mirroring the report.
std::string campaign_report_text(const CampaignOutput& out,
                                 const CampaignConfig& cfg);

}  // namespace ssresf
