#include "ssresf/features.hpp"

namespace ssresf {

const std::array<std::string, kFeatureCount>& feature_names() {
  static const std::array<std::string, kFeatureCount> names = {
      "fan_in",          "fan_out",      "depth_from_inputs",
      "depth_to_outputs", "is_sequential", "hierarchy_depth",
      "cluster_size",    "toggle_count",
  };
  return names;
}

std::vector<FeatureVector> extract_features(const FlatDesign& design,
                                            const std::vector<Cluster>& clusters,
                                            const Trace& golden) {
  std::vector<int> level = levelize(design);
  std::vector<int> rev_level = reverse_levelize(design);
  std::vector<size_t> cluster_size(design.cells.size(), 0);
  for (const auto& cluster : clusters)
    for (CellId m : cluster.members) cluster_size[m] = cluster.members.size();

  std::vector<FeatureVector> out;
  out.reserve(design.cells.size());
  for (const auto& cell : design.cells) {
    FeatureVector fv;
    fv.node = cell.id;
    fv.raw[0] = static_cast<double>(cell.inputs.size());
    fv.raw[1] = static_cast<double>(design.fanout[cell.output].size());
    fv.raw[2] = level[cell.id];
    fv.raw[3] = rev_level[cell.id];
    fv.raw[4] = cell.kind == CellKind::Sequential ? 1.0 : 0.0;
    fv.raw[5] = static_cast<double>(cell.path.size());
    fv.raw[6] = static_cast<double>(cluster_size[cell.id]);
    fv.raw[7] = static_cast<double>(golden.toggle_count(cell.output));
    out.push_back(fv);
  }
  return out;
}

void label_nodes(std::vector<FeatureVector>& vectors,
                 const CampaignResult& campaign, double tau) {
  for (auto& fv : vectors) {
    auto it = campaign.nodes.find(fv.node);
    if (it == campaign.nodes.end() || it->second.injections == 0) {
      fv.label = 0;
      continue;
    }
    fv.label = it->second.sensitivity >= tau ? +1 : -1;
  }
}

Dataset preprocess(const std::vector<FeatureVector>& vectors) {
  Dataset ds;
  for (const auto& fv : vectors) {
    if (fv.label == 0) continue;
    ds.nodes.push_back(fv.node);
    ds.x.push_back(fv.raw);
    ds.y.push_back(fv.label);
  }
  bool pos = false, neg = false;
  for (int y : ds.y) (y > 0 ? pos : neg) = true;
  if (ds.size() < 2 || !pos || !neg)
    throw Error(ErrorKind::SingleClassDataset,
                "need labeled samples from both classes");

  for (int f = 0; f < kFeatureCount; ++f) {
    double lo = ds.x[0][f], hi = ds.x[0][f];
    for (const auto& row : ds.x) {
      lo = std::min(lo, row[f]);
      hi = std::max(hi, row[f]);
    }
    ds.feat_min[f] = lo;
    ds.feat_max[f] = hi;
    for (auto& row : ds.x)
      row[f] = hi > lo ? (row[f] - lo) / (hi - lo) : 0.0;
    ds.mask[f] = true;
  }
  return ds;
}

std::array<double, kFeatureCount> normalize_with(
    const Dataset& ds, const std::array<double, kFeatureCount>& raw) {
  std::array<double, kFeatureCount> out{};
  for (int f = 0; f < kFeatureCount; ++f) {
    double lo = ds.feat_min[f], hi = ds.feat_max[f];
    out[f] = hi > lo ? (raw[f] - lo) / (hi - lo) : 0.0;
  }
  return out;
}

}  // namespace ssresf
