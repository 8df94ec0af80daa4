#pragma once

#include <array>
#include <string>
#include <vector>

#include "ssresf/campaign.hpp"
#include "ssresf/clustering.hpp"
#include "ssresf/trace.hpp"

namespace ssresf {

inline constexpr int kFeatureCount = 8;

const std::array<std::string, kFeatureCount>& feature_names();

struct FeatureVector {
  CellId node = -1;
  std::array<double, kFeatureCount> raw{};
  int label = 0;  // +1 high sensitivity, -1 low, 0 unknown
};

/// Normalized training data. Features live in [0,1]; the min/max pair per
/// feature reproduces the scaling exactly.
struct Dataset {
  std::vector<CellId> nodes;
  std::vector<std::array<double, kFeatureCount>> x;
  std::vector<int> y;  // +1 / -1
  std::array<double, kFeatureCount> feat_min{};
  std::array<double, kFeatureCount> feat_max{};
  std::array<bool, kFeatureCount> mask{};  // selected feature subset

  size_t size() const { return x.size(); }
};

/// One vector per cell: fan-in, fan-out, depth from inputs, depth to
/// outputs, sequential flag, hierarchy depth, cluster size, and golden-trace
/// toggle count of the output net.
std::vector<FeatureVector> extract_features(const FlatDesign& design,
                                            const std::vector<Cluster>& clusters,
                                            const Trace& golden);

/// Label +1 where empirical sensitivity >= tau; nodes outside the campaign
/// sample stay unknown.
void label_nodes(std::vector<FeatureVector>& vectors,
                 const CampaignResult& campaign, double tau);

/// Cleaning (drop unknowns) + min-max normalization to [0,1]. Constant
/// features map to 0. All features start selected.
Dataset preprocess(const std::vector<FeatureVector>& vectors);

/// Apply a dataset's stored normalization to a raw vector.
std::array<double, kFeatureCount> normalize_with(
    const Dataset& ds, const std::array<double, kFeatureCount>& raw);

}  // namespace ssresf
