#include <doctest.h>

#include <random>

#include "ssresf/clustering.hpp"

using namespace ssresf;

namespace {

CellInfo cell_with_path(CellId id, std::vector<std::string> path) {
  CellInfo c;
  c.id = id;
  c.path = std::move(path);
  return c;
}

std::vector<CellInfo> two_module_demo() {
  // 4 cells under "cpu", 4 under "mem"
  std::vector<CellInfo> cells;
  for (int i = 0; i < 4; ++i) cells.push_back(cell_with_path(i, {"cpu"}));
  for (int i = 4; i < 8; ++i) cells.push_back(cell_with_path(i, {"mem"}));
  return cells;
}

}  // namespace

TEST_CASE("distance: identical paths") {
  auto a = cell_with_path(0, {"cpu", "alu"});
  auto b = cell_with_path(1, {"cpu", "alu"});
  CHECK(cluster_distance(a, b, 3) == 0);
}

TEST_CASE("distance: innermost-layer mismatch has weight 1") {
  auto a = cell_with_path(0, {"cpu", "alu", "adder"});
  auto b = cell_with_path(1, {"cpu", "alu", "shifter"});
  CHECK(cluster_distance(a, b, 3) == 1);
}

TEST_CASE("distance: all layers differ") {
  auto a = cell_with_path(0, {"cpu", "alu", "adder"});
  auto b = cell_with_path(1, {"mem", "bank0", "row0"});
  CHECK(cluster_distance(a, b, 3) == 7);
}

TEST_CASE("distance: padding token matches itself") {
  auto a = cell_with_path(0, {"cpu"});
  auto b = cell_with_path(1, {"cpu"});
  CHECK(cluster_distance(a, b, 3) == 0);
  auto c = cell_with_path(2, {"cpu", "alu"});
  CHECK(cluster_distance(a, c, 3) == 2);  // mismatch at layer 2 only
}

TEST_CASE("distance: pseudometric properties on random paths") {
  std::mt19937_64 rng(42);
  const char* names[] = {"a", "b", "c"};
  auto random_cell = [&](CellId id) {
    std::vector<std::string> path;
    auto depth = rng() % 5;
    for (size_t i = 0; i < depth; ++i) path.push_back(names[rng() % 3]);
    return cell_with_path(id, std::move(path));
  };
  const int ln = 4;
  for (int i = 0; i < 1000; ++i) {
    auto a = random_cell(0), b = random_cell(1), c = random_cell(2);
    int64_t dab = cluster_distance(a, b, ln);
    CHECK(dab >= 0);
    CHECK(dab <= (1 << ln) - 1);
    CHECK(dab == cluster_distance(b, a, ln));
    CHECK(cluster_distance(a, a, ln) == 0);
    CHECK(dab <= cluster_distance(a, c, ln) + cluster_distance(c, b, ln));
  }
}

TEST_CASE("assign: nearest center wins") {
  std::vector<CellInfo> cells = {
      cell_with_path(0, {"cpu", "alu", "adder"}),
      cell_with_path(1, {"mem", "bank0", "row0"}),
      cell_with_path(2, {"cpu", "dec", "pc"}),
  };
  auto clusters = assign_cells(cells, {0, 1}, 3);
  REQUIRE(clusters.size() == 2);
  // d(x, A)=3, d(x, C)=7 -> joins A
  CHECK(clusters[0].members == std::vector<CellId>{0, 2});
  CHECK(clusters[1].members == std::vector<CellId>{1});
}

TEST_CASE("assign: single center takes everything") {
  auto cells = two_module_demo();
  auto clusters = assign_cells(cells, {3}, 1);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].members.size() == 8);
}

TEST_CASE("assign: equidistant cell goes to the lower center index") {
  std::vector<CellInfo> cells = {
      cell_with_path(0, {"a"}),
      cell_with_path(1, {"b"}),
      cell_with_path(2, {"c"}),  // distance 4 (ln=3... ) to both centers
  };
  auto clusters = assign_cells(cells, {0, 1}, 3);
  CHECK(clusters[0].members == std::vector<CellId>{0, 2});
}

TEST_CASE("update_centers: min distance sum with low-id tie break") {
  std::vector<CellInfo> cells = {
      cell_with_path(0, {"cpu", "alu"}),
      cell_with_path(1, {"cpu", "alu"}),
      cell_with_path(2, {"cpu", "dec"}),
  };
  Cluster cluster;
  cluster.cluster_id = 0;
  cluster.center = 2;
  cluster.members = {0, 1, 2};
  auto centers = update_centers(cells, {cluster}, 3);
  CHECK(centers == std::vector<CellId>{0});  // sums 2, 2, 4
}

TEST_CASE("update_centers: singleton keeps its member") {
  std::vector<CellInfo> cells = {cell_with_path(0, {"x"})};
  Cluster cluster;
  cluster.members = {0};
  cluster.center = 0;
  CHECK(update_centers(cells, {cluster}, 2) == std::vector<CellId>{0});
}

TEST_CASE("update_centers: empty cluster rejected") {
  std::vector<CellInfo> cells = {cell_with_path(0, {"x"})};
  Cluster cluster;
  CHECK_THROWS_AS(update_centers(cells, {cluster}, 2), Error);
}

TEST_CASE("cluster_cells: KN=1") {
  auto cells = two_module_demo();
  ClusterParams params;
  params.kn = 1;
  params.ln = 1;
  auto clusters = cluster_cells(cells, params);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].members.size() == 8);
}

TEST_CASE("cluster_cells: two-module demo converges by module for all seeds") {
  auto cells = two_module_demo();
  for (uint64_t seed = 0; seed < 20; ++seed) {
    ClusterParams params;
    params.kn = 2;
    params.ln = 1;
    params.seed = seed;
    auto clusters = cluster_cells(cells, params);
    REQUIRE(clusters.size() == 2);
    for (const auto& cluster : clusters) {
      REQUIRE(cluster.members.size() == 4);
      const auto& first = cells[cluster.members[0]].path;
      for (CellId m : cluster.members) CHECK(cells[m].path == first);
    }
  }
}

TEST_CASE("cluster_cells: KN equals cell count") {
  auto cells = two_module_demo();
  ClusterParams params;
  params.kn = 8;
  params.ln = 2;
  auto clusters = cluster_cells(cells, params);
  REQUIRE(clusters.size() == 8);
  for (const auto& c : clusters) CHECK(c.members.size() == 1);
}

TEST_CASE("cluster_cells: KN larger than cell count") {
  auto cells = two_module_demo();
  ClusterParams params;
  params.kn = 9;
  CHECK_THROWS_AS(cluster_cells(cells, params), Error);
}

TEST_CASE("cluster_cells: partition and determinism") {
  std::mt19937_64 rng(7);
  const char* names[] = {"u0", "u1", "u2", "u3"};
  std::vector<CellInfo> cells;
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> path;
    auto depth = rng() % 4;
    for (size_t d = 0; d < depth; ++d) path.push_back(names[rng() % 4]);
    cells.push_back(cell_with_path(i, std::move(path)));
  }
  ClusterParams params;
  params.kn = 5;
  params.ln = 3;
  params.seed = 11;
  auto a = cluster_cells(cells, params);
  auto b = cluster_cells(cells, params);

  std::vector<int> seen(cells.size(), 0);
  for (const auto& cluster : a) {
    CHECK(std::find(cluster.members.begin(), cluster.members.end(),
                    cluster.center) != cluster.members.end());
    for (CellId m : cluster.members) seen[m] += 1;
  }
  for (int s : seen) CHECK(s == 1);

  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].center == b[i].center);
    CHECK(a[i].members == b[i].members);
  }
}
