#include "ssresf/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace ssresf {

namespace {

// Layer name at 1-based depth li, or nullptr as the padding token.
const std::string* layer(const CellInfo& c, int li) {
  if (li <= static_cast<int>(c.path.size())) return &c.path[li - 1];
  return nullptr;
}

bool layers_differ(const std::string* a, const std::string* b) {
  if (a == nullptr || b == nullptr) return !(a == nullptr && b == nullptr);
  return *a != *b;
}

}  // namespace

int64_t cluster_distance(const CellInfo& a, const CellInfo& b, int ln) {
  int64_t d = 0;
  for (int li = 1; li <= ln; ++li)
    if (layers_differ(layer(a, li), layer(b, li)))
      d += int64_t{1} << (ln - li);
  return d;
}

std::vector<Cluster> assign_cells(const std::vector<CellInfo>& cells,
                                  const std::vector<CellId>& centers, int ln) {
  std::vector<Cluster> clusters(centers.size());
  for (size_t k = 0; k < centers.size(); ++k) {
    clusters[k].cluster_id = static_cast<int>(k);
    clusters[k].center = centers[k];
  }
  for (const auto& cell : cells) {
    size_t best = 0;
    int64_t best_d = std::numeric_limits<int64_t>::max();
    for (size_t k = 0; k < centers.size(); ++k) {
      if (centers[k] == cell.id) {  // a medoid stays in its own cluster
        best = k;
        best_d = 0;
        break;
      }
      int64_t d = cluster_distance(cell, cells[centers[k]], ln);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    clusters[best].members.push_back(cell.id);
  }
  return clusters;
}

std::vector<CellId> update_centers(const std::vector<CellInfo>& cells,
                                   const std::vector<Cluster>& clusters,
                                   int ln) {
  std::vector<CellId> centers;
  centers.reserve(clusters.size());
  for (const auto& cluster : clusters) {
    if (cluster.members.empty())
      throw Error(ErrorKind::EmptyCluster,
                  "cluster " + std::to_string(cluster.cluster_id));
    CellId best = -1;
    int64_t best_sum = std::numeric_limits<int64_t>::max();
    for (CellId cand : cluster.members) {
      int64_t sum = 0;
      for (CellId other : cluster.members)
        sum += cluster_distance(cells[cand], cells[other], ln);
      if (sum < best_sum || (sum == best_sum && cand < best)) {
        best_sum = sum;
        best = cand;
      }
    }
    centers.push_back(best);
  }
  return centers;
}

int64_t within_cluster_cost(const std::vector<CellInfo>& cells,
                            const std::vector<Cluster>& clusters, int ln) {
  int64_t total = 0;
  for (const auto& cluster : clusters)
    for (CellId m : cluster.members)
      total += cluster_distance(cells[m], cells[cluster.center], ln);
  return total;
}

std::vector<Cluster> cluster_cells(const std::vector<CellInfo>& cells,
                                   const ClusterParams& params) {
  const int kn = params.kn;
  if (kn < 1 || kn > static_cast<int>(cells.size()))
    throw Error(ErrorKind::TooFewCells,
                "KN=" + std::to_string(kn) + " with " +
                    std::to_string(cells.size()) + " cells");

  // Partial Fisher-Yates keeps the initial draw identical across platforms.
  std::mt19937_64 rng(params.seed);
  std::vector<CellId> pool(cells.size());
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < kn; ++i) {
    auto j = i + static_cast<size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<CellId> centers(pool.begin(), pool.begin() + kn);

  std::vector<Cluster> clusters;
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    clusters = assign_cells(cells, centers, params.ln);

    // An emptied cluster is reseeded with the cell farthest from every
    // current center, then assignment is redone.
    for (bool retry = true; retry;) {
      retry = false;
      for (auto& cluster : clusters) {
        if (!cluster.members.empty()) continue;
        CellId far = -1;
        int64_t far_d = -1;
        for (const auto& cell : cells) {
          if (std::find(centers.begin(), centers.end(), cell.id) !=
              centers.end())
            continue;
          int64_t dmin = std::numeric_limits<int64_t>::max();
          for (CellId c : centers)
            dmin = std::min(dmin,
                            cluster_distance(cell, cells[c], params.ln));
          if (dmin > far_d) {
            far_d = dmin;
            far = cell.id;
          }
        }
        if (far < 0) continue;  // every cell is already a center
        centers[cluster.cluster_id] = far;
        retry = true;
      }
      if (retry) clusters = assign_cells(cells, centers, params.ln);
    }

    std::vector<CellId> next = update_centers(cells, clusters, params.ln);
    auto sorted = [](std::vector<CellId> v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    if (sorted(next) == sorted(centers)) break;
    centers = std::move(next);
  }
  return clusters;
}

}  // namespace ssresf
