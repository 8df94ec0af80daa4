#pragma once

#include <cstdint>
#include <vector>

#include "ssresf/design.hpp"

namespace ssresf {

struct ClusterParams {
  int kn = 1;             // number of clusters
  int ln = 3;             // layer depth of the distance function
  uint64_t seed = 0;
  int max_iterations = 100;
};

struct Cluster {
  int cluster_id = 0;
  CellId center = -1;  // medoid; always a member
  std::vector<CellId> members;
};

/// Layer-weighted hierarchical distance between two cells. Layer 1 is the
/// outermost enclosing module; paths shorter than `ln` are padded with a
/// token that only matches itself. Range [0, 2^ln - 1].
int64_t cluster_distance(const CellInfo& a, const CellInfo& b, int ln);

/// Assign every cell to its nearest center; ties go to the lowest center
/// index.
std::vector<Cluster> assign_cells(const std::vector<CellInfo>& cells,
                                  const std::vector<CellId>& centers, int ln);

/// Per cluster, the member minimizing the sum of distances to the other
/// members; ties go to the lowest cell id.
std::vector<CellId> update_centers(const std::vector<CellInfo>& cells,
                                   const std::vector<Cluster>& clusters,
                                   int ln);

/// Medoid clustering: seeded random centers, then alternate assignment and
/// center update until the center set is stable. Deterministic per seed.
std::vector<Cluster> cluster_cells(const std::vector<CellInfo>& cells,
                                   const ClusterParams& params);

/// Sum over clusters of member-to-center distances (the iteration objective).
int64_t within_cluster_cost(const std::vector<CellInfo>& cells,
                            const std::vector<Cluster>& clusters, int ln);

}  // namespace ssresf
