// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] is the bundled data directory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ssresf/campaign.hpp"
#include "ssresf/metrics.hpp"
#include "ssresf/model_select.hpp"
#include "test_util.hpp"

using namespace ssresf;

namespace {

int failures = 0;

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

void report(int n, const std::string& name, bool ok, double secs,
            double limit) {
  bool in_time = limit <= 0 || secs < limit;
  std::printf("criterion %d (%s): %s  [%.2f s%s]\n", n, name.c_str(),
              ok && in_time ? "PASS" : "FAIL", secs,
              in_time ? "" : ", over budget");
  if (!(ok && in_time)) ++failures;
  std::fflush(stdout);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- criterion 1 -----------------------------------------------------------

bool simulator_oracle() {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    int num_inputs = 1 + static_cast<int>(rng() % 4);
    int num_gates = 1 + static_cast<int>(rng() % 6);
    auto d = elaborate(
        parse_netlist(testutil::random_comb_netlist(rng, num_inputs, num_gates)),
        "top");
    for (unsigned vec = 0; vec < (1u << num_inputs); ++vec) {
      std::vector<bool> inputs;
      for (int i = 0; i < num_inputs; ++i) inputs.push_back((vec >> i) & 1);
      auto expected = testutil::brute_force_eval(d, inputs);
      auto actual = testutil::simulate_settled(d, inputs);
      for (size_t o = 0; o < d.primary_outputs.size(); ++o)
        if (actual[o] != expected[d.primary_outputs[o]]) return false;
    }
  }
  return true;
}

// --- criterion 2 -----------------------------------------------------------

CellInfo random_cell(CellId id, std::mt19937_64& rng) {
  static const char* names[] = {"cpu", "mem", "bus", "io", "u0", "u1", "u2"};
  CellInfo c;
  c.id = id;
  int depth = static_cast<int>(rng() % 4);
  for (int i = 0; i < depth; ++i) c.path.push_back(names[rng() % 7]);
  return c;
}

bool clustering_suite(const std::string& data) {
  std::mt19937_64 rng(7);
  const int ln = 4;
  const int64_t dmax = (int64_t{1} << ln) - 1;
  for (int pair = 0; pair < 1000; ++pair) {
    CellInfo a = random_cell(0, rng);
    CellInfo b = random_cell(1, rng);
    CellInfo c = random_cell(2, rng);
    int64_t dab = cluster_distance(a, b, ln);
    if (dab < 0 || dab > dmax) return false;
    if (dab != cluster_distance(b, a, ln)) return false;
    if (cluster_distance(a, a, ln) != 0) return false;
    if (dab > cluster_distance(a, c, ln) + cluster_distance(c, b, ln))
      return false;
  }

  auto demo = elaborate(parse_netlist(read_file(data + "/demo_two_module.v")),
                        "top");
  for (uint64_t seed = 0; seed < 20; ++seed) {
    ClusterParams params;
    params.kn = 2;
    params.ln = 1;
    params.seed = seed;
    auto clusters = cluster_cells(demo.cells, params);
    if (clusters.size() != 2) return false;
    for (auto& cl : clusters) {
      std::sort(cl.members.begin(), cl.members.end());
      if (cl.members != std::vector<CellId>{0, 1, 2, 3} &&
          cl.members != std::vector<CellId>{4, 5, 6, 7})
        return false;
    }
  }

  // Objective monotonicity across iterations of the assign/update loop.
  for (uint64_t seed = 0; seed < 5; ++seed) {
    std::mt19937_64 cell_rng(100 + seed);
    std::vector<CellInfo> cells;
    for (CellId i = 0; i < 60; ++i) cells.push_back(random_cell(i, cell_rng));
    std::vector<CellId> centers = {3, 17, 41, 55};
    int64_t prev = std::numeric_limits<int64_t>::max();
    for (int iter = 0; iter < 30; ++iter) {
      auto clusters = assign_cells(cells, centers, ln);
      bool empty = false;
      for (const auto& cl : clusters) empty |= cl.members.empty();
      if (empty) break;
      auto next = update_centers(cells, clusters, ln);
      clusters = assign_cells(cells, next, ln);
      int64_t cost = within_cluster_cost(cells, clusters, ln);
      if (cost > prev) return false;
      prev = cost;
      if (next == centers) break;
      centers = next;
    }
  }
  return true;
}

// --- criterion 3 -----------------------------------------------------------

bool fault_model_suite() {
  // SET: exact pulse of `width` ticks on an observed output.
  auto and2 = elaborate(
      parse_netlist("module top(input a, input b, output y); "
                    "AND2 g(.A(a), .B(b), .Y(y)); endmodule"),
      "top");
  Stimulus stim;
  stim.duration = 30;
  stim.inputs["a"] = {{0, true}};
  stim.inputs["b"] = {{0, true}};
  InjectionEvent set_ev;
  set_ev.target_cell = 0;
  set_ev.kind = FaultKind::SET;
  set_ev.time = 10;
  set_ev.width = 2;
  Trace t = simulate(and2, stim, {set_ev});
  std::vector<std::pair<SimTime, bool>> set_golden = {
      {0, false}, {1, true}, {10, false}, {12, true}};
  if (t.waves.at(and2.primary_outputs[0]) != set_golden) return false;

  // SEU: recovery exactly at the next rising clock edge.
  auto dff = elaborate(
      parse_netlist("module top(input d, input ck, output q); "
                    "DFF f(.D(d), .CK(ck), .Q(q)); endmodule"),
      "top");
  Stimulus seq_stim;
  seq_stim.duration = 40;
  seq_stim.inputs["d"] = {{0, true}};
  seq_stim.clock = ClockSpec{"ck", 10, 10};
  InjectionEvent seu_ev;
  seu_ev.target_cell = 0;
  seu_ev.kind = FaultKind::SEU;
  seu_ev.time = 17;
  Trace u = simulate(dff, seq_stim, {seu_ev});
  std::vector<std::pair<SimTime, bool>> seu_golden = {
      {0, false}, {11, true}, {17, false}, {20, true}};
  if (u.waves.at(dff.primary_outputs[0]) != seu_golden) return false;

  // Logically masked SET never diverges.
  auto masked = elaborate(
      parse_netlist("module top(input a, input b, output y); wire w; "
                    "NOT g1(.A(a), .Y(w)); AND2 g2(.A(w), .B(b), .Y(y)); "
                    "endmodule"),
      "top");
  Stimulus mstim;
  mstim.duration = 30;
  mstim.inputs["a"] = {{0, false}};
  mstim.inputs["b"] = {{0, false}};
  InjectionEvent mev;
  mev.target_cell = 0;
  mev.kind = FaultKind::SET;
  mev.time = 10;
  mev.width = 3;
  Trace golden = simulate(masked, mstim, {});
  Trace faulty = simulate(masked, mstim, {mev});
  return compare_traces(golden, faulty, mev.time, mstim.duration).outcome ==
         Outcome::NoError;
}

// --- criterion 4 -----------------------------------------------------------

bool ser_algebra() {
  std::vector<ClusterStats> hand(2);
  hand[0].size = 100;
  hand[0].ser = 0.10;
  hand[1].size = 300;
  hand[1].ser = 0.30;
  if (std::abs(chip_ser(hand) - 0.25) > 1e-12) return false;

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = 1 + rng() % 6;
    std::vector<ClusterStats> cs(n);
    double lo = 1, hi = 0;
    for (auto& c : cs) {
      c.size = 1 + rng() % 500;
      c.ser = uni(rng);
      lo = std::min(lo, c.ser);
      hi = std::max(hi, c.ser);
    }
    double total = chip_ser(cs);
    if (total < lo - 1e-12 || total > hi + 1e-12) return false;
    auto shuffled = cs;
    for (size_t i = n; i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng() % i]);
    if (std::abs(chip_ser(shuffled) - total) > 1e-12) return false;
  }
  return true;
}

// --- criterion 5 -----------------------------------------------------------

bool solve_linear(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const size_t n = b.size();
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    for (size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-10) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.resize(n);
  for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return true;
}

// Exact dual optimum by enumerating every bound pattern (alpha_i in {0, C,
// free}) and solving the stationarity system on the free set. Independent of
// the SMO implementation.
double qp_oracle(const Dataset& ds, double c, double gamma) {
  const size_t n = ds.size();
  std::vector<double> kernel(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      kernel[i * n + j] = rbf_kernel(ds.x[i], ds.x[j], ds.mask, gamma);

  auto objective = [&](const std::vector<double>& alpha) {
    double sum = 0, quad = 0;
    for (size_t i = 0; i < n; ++i) {
      sum += alpha[i];
      for (size_t j = 0; j < n; ++j)
        quad += alpha[i] * alpha[j] * ds.y[i] * ds.y[j] * kernel[i * n + j];
    }
    return sum - 0.5 * quad;
  };

  double best = 0.0;  // alpha = 0 is always feasible
  size_t patterns = 1;
  for (size_t i = 0; i < n; ++i) patterns *= 3;
  for (size_t code = 1; code < patterns; ++code) {
    size_t rest = code;
    std::vector<int> state(n);
    std::vector<size_t> free_set;
    for (size_t i = 0; i < n; ++i) {
      state[i] = static_cast<int>(rest % 3);  // 0 zero, 1 at C, 2 free
      rest /= 3;
      if (state[i] == 2) free_set.push_back(i);
    }

    std::vector<double> alpha(n, 0.0);
    for (size_t i = 0; i < n; ++i)
      if (state[i] == 1) alpha[i] = c;

    double bound_y = 0;
    for (size_t i = 0; i < n; ++i) bound_y += alpha[i] * ds.y[i];

    const size_t m = free_set.size();
    if (m == 0) {
      if (std::abs(bound_y) > 1e-9) continue;  // violates sum(alpha*y) = 0
      best = std::max(best, objective(alpha));
      continue;
    }

    std::vector<std::vector<double>> a(m + 1, std::vector<double>(m + 1, 0.0));
    std::vector<double> rhs(m + 1, 0.0);
    for (size_t r = 0; r < m; ++r) {
      size_t i = free_set[r];
      for (size_t cidx = 0; cidx < m; ++cidx) {
        size_t j = free_set[cidx];
        a[r][cidx] = ds.y[j] * kernel[i * n + j];
      }
      a[r][m] = 1.0;
      rhs[r] = ds.y[i];
      for (size_t j = 0; j < n; ++j)
        if (state[j] == 1) rhs[r] -= c * ds.y[j] * kernel[i * n + j];
    }
    for (size_t cidx = 0; cidx < m; ++cidx) a[m][cidx] = ds.y[free_set[cidx]];
    rhs[m] = -bound_y;

    std::vector<double> solution;
    if (!solve_linear(a, rhs, solution)) continue;
    bool feasible = true;
    for (size_t r = 0; r < m; ++r) {
      if (solution[r] < -1e-9 || solution[r] > c + 1e-9) feasible = false;
      alpha[free_set[r]] = std::clamp(solution[r], 0.0, c);
    }
    if (feasible) best = std::max(best, objective(alpha));
  }
  return best;
}

Dataset random_points(size_t n, uint64_t seed, std::mt19937_64& label_rng) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Dataset ds;
  for (size_t i = 0; i < n; ++i) {
    std::array<double, kFeatureCount> x{};
    x[0] = uni(rng);
    x[1] = uni(rng);
    ds.x.push_back(x);
    ds.y.push_back(label_rng() % 2 ? +1 : -1);
    ds.nodes.push_back(static_cast<CellId>(i));
  }
  ds.y[0] = +1;
  ds.y[n - 1] = -1;
  ds.mask[0] = ds.mask[1] = true;
  for (int f = 0; f < kFeatureCount; ++f) ds.feat_max[f] = 1.0;
  return ds;
}

double model_alpha(const SvmModel& model,
                   const std::array<double, kFeatureCount>& x) {
  for (size_t i = 0; i < model.support_vectors.size(); ++i)
    if (model.support_vectors[i] == x) return model.alpha[i];
  return 0.0;
}

bool smo_correctness() {
  // KKT audit on 50 random datasets.
  std::mt19937_64 label_rng(77);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    auto ds = random_points(12 + seed % 9, 1000 + seed, label_rng);
    SvmParams params;
    params.c = 10;
    params.gamma = 2;
    params.seed = seed;
    auto model = train_svm(ds, params);
    for (size_t i = 0; i < ds.size(); ++i) {
      double a = model_alpha(model, ds.x[i]);
      double margin = ds.y[i] * model.decision(ds.x[i]);
      if (a < 1e-9 && margin < 1.0 - params.tol - 1e-9) return false;
      if (a > 1e-9 && a < params.c - 1e-9 &&
          std::abs(margin - 1.0) > params.tol + 1e-9)
        return false;
      if (a > params.c - 1e-9 && margin > 1.0 + params.tol + 1e-9) return false;
    }
  }

  // Dual objective vs exact enumeration QP on <= 6-point datasets.
  for (uint64_t seed = 0; seed < 20; ++seed) {
    auto ds = random_points(3 + seed % 4, 2000 + seed, label_rng);
    SvmParams params;
    params.c = 1;
    params.gamma = 1;
    params.seed = seed;
    auto model = train_svm(ds, params);
    double exact = qp_oracle(ds, params.c, params.gamma);
    if (std::abs(dual_objective(model) - exact) > 1e-3) {
      std::printf("  qp mismatch seed %llu: smo %.6f vs exact %.6f\n",
                  (unsigned long long)seed, dual_objective(model), exact);
      return false;
    }
  }

  // XOR at (C=10, gamma=1) fits the training set perfectly.
  Dataset xo;
  xo.x = {{{0, 0}}, {{0, 1}}, {{1, 0}}, {{1, 1}}};
  xo.y = {-1, +1, +1, -1};
  xo.nodes = {0, 1, 2, 3};
  xo.mask[0] = xo.mask[1] = true;
  for (int f = 0; f < kFeatureCount; ++f) xo.feat_max[f] = 1.0;
  SvmParams params;
  params.c = 10;
  params.gamma = 1;
  auto model = train_svm(xo, params);
  for (size_t i = 0; i < xo.size(); ++i)
    if (model.predict(xo.x[i]) != xo.y[i]) return false;
  return true;
}

// --- criterion 6 -----------------------------------------------------------

bool metrics_roc() {
  std::vector<int> preds, labels;
  auto add = [&](int n, int p, int l) {
    while (n--) {
      preds.push_back(p);
      labels.push_back(l);
    }
  };
  add(61, +1, +1);
  add(12, -1, +1);
  add(90, -1, -1);
  add(9, +1, -1);
  Metrics m = evaluate(preds, labels);
  auto near = [](double got, double want) {
    return std::abs(got - want) <= 0.001;  // 0.1 percentage point
  };
  if (!near(m.tpr, 0.836) || !near(m.tnr, 0.909) ||
      !near(m.precision, 0.871) || !near(m.accuracy, 0.878) ||
      std::abs(m.f1 - 0.85) > 0.005)
    return false;

  auto perfect = roc({0.9, 0.8, 0.2, 0.1}, {+1, +1, -1, -1});
  return perfect.auc == 1.0;
}

// --- criteria 7 and 8 ------------------------------------------------------

struct Pipeline {
  FlatDesign design;
  std::vector<Cluster> clusters;
  Stimulus stim;
  CampaignConfig cfg;
  CampaignOutput campaign;
  std::vector<FeatureVector> vectors;
  Dataset dataset;
  SvmModel model;
  double cv_accuracy = 0;
};

Pipeline run_pipeline(const std::string& data, const std::string& db_file) {
  Pipeline p;
  p.design =
      elaborate(parse_netlist(read_file(data + "/minisoc.v")), "top");
  ClusterParams cp;
  cp.kn = 8;
  cp.ln = 2;
  cp.seed = 3;
  p.clusters = cluster_cells(p.design.cells, cp);
  p.stim = load_stimulus(read_file(data + "/minisoc_stim.json"));
  validate_stimulus(p.stim, p.design);
  FaultDb db = load_fault_db(read_file(data + "/" + db_file));

  p.cfg.let = 37.0;
  p.cfg.flux = 4e8;
  p.cfg.device_area = 1e-5;
  p.cfg.window = 1.0;  // 4000 injections
  p.cfg.sample_fraction = 0.4;
  p.cfg.seed = 11;
  p.cfg.jobs = 4;
  p.campaign = run_full_campaign(p.design, p.stim, p.clusters, db, p.cfg);

  SimOptions opts;
  opts.record_all_nets = true;
  Trace golden = simulate(p.design, p.stim, {}, opts);
  p.vectors = extract_features(p.design, p.clusters, golden);
  label_nodes(p.vectors, p.campaign.result, p.campaign.result.chip_ser);
  p.dataset = preprocess(p.vectors);

  auto best = grid_search(p.dataset, {0.1, 1, 10, 100}, {0.01, 0.1, 1, 10}, 5,
                          2);
  SvmParams params;
  params.c = best.c;
  params.gamma = best.gamma;
  params.seed = 2;
  auto sel = forward_feature_selection(p.dataset, params, 5, 2);
  p.dataset.mask = sel.mask;
  p.cv_accuracy = *std::max_element(sel.score_curve.begin(),
                                    sel.score_curve.end());
  p.model = train_svm(p.dataset, params);
  return p;
}

bool end_to_end(const std::string& data) {
  Pipeline p = run_pipeline(data, "faultdb.json");

  // (a) byte-reproducible campaign report.
  FaultDb db = load_fault_db(read_file(data + "/faultdb.json"));
  auto again = run_full_campaign(p.design, p.stim, p.clusters, db, p.cfg);
  std::string r1 = campaign_report_json(p.campaign, p.cfg, p.design);
  std::string r2 = campaign_report_json(again, p.cfg, p.design);
  if (r1 != r2) {
    std::printf("  campaign report not reproducible\n");
    return false;
  }

  // (b) held-out accuracy of the classifier.
  std::printf("  held-out accuracy %.4f\n", p.cv_accuracy);
  if (p.cv_accuracy < 0.80) return false;

  // (c) classification beats full injection on the unsampled nodes by >= 5x.
  std::vector<char> sampled(p.design.cells.size(), 0);
  for (const auto& s : p.campaign.samples)
    for (CellId id : s) sampled[id] = 1;
  std::vector<FeatureVector> unsampled;
  for (const auto& fv : p.vectors)
    if (!sampled[fv.node]) unsampled.push_back(fv);

  double t0 = now();
  auto preds = predict_sensitivity(p.model, unsampled);
  double predict_secs = now() - t0;
  if (preds.size() != unsampled.size()) return false;

  Trace golden = simulate(p.design, p.stim, {});
  t0 = now();
  for (const auto& fv : unsampled) {
    const CellInfo& cell = p.design.cells[fv.node];
    InjectionEvent ev = cell.kind == CellKind::Sequential
                            ? make_seu_event(cell, 1000)
                            : make_set_event(cell, 1000, p.cfg.let, db);
    Trace faulty = simulate(p.design, p.stim, {ev});
    (void)compare_traces(golden, faulty, ev.time, p.stim.duration);
  }
  double inject_secs = now() - t0;
  std::printf("  predict %.4f s vs injection %.4f s over %zu nodes\n",
              predict_secs, inject_secs, unsampled.size());
  return predict_secs <= inject_secs / 5.0;
}

bool module_proportions(const std::string& data) {
  Pipeline p = run_pipeline(data, "faultdb_equal.json");
  auto preds = predict_sensitivity(p.model, p.vectors);
  std::map<std::string, uint64_t> high_by_module;
  uint64_t high_total = 0;
  for (const auto& pr : preds) {
    if (pr.label != +1) continue;
    const auto& path = p.design.cells[pr.node].path;
    high_by_module[path.empty() ? "top" : path.front()] += 1;
    high_total += 1;
  }
  if (high_total == 0) {
    std::printf("  no high-sensitivity predictions\n");
    return false;
  }
  double sum = 0;
  for (const auto& [module, count] : high_by_module) {
    double pct = 100.0 * double(count) / double(high_total);
    std::printf("  %-8s %6.2f%%\n", module.c_str(), pct);
    if (pct < 0 || pct > 100) return false;
    sum += pct;
  }
  return std::abs(sum - 100.0) < 1e-9;
}

}  // namespace

int main(int argc, char** argv) {
  std::string data = argc > 1 ? argv[1] : "data";

  auto timed = [&](int n, const std::string& name, auto&& fn, double limit) {
    double t = now();
    bool ok = fn();
    report(n, name, ok, now() - t, limit);
  };
  timed(1, "simulator truth-table oracle", [] { return simulator_oracle(); },
        10);
  timed(2, "distance and clustering suite",
        [&] { return clustering_suite(data); }, 5);
  timed(3, "SET/SEU fault model golden traces",
        [] { return fault_model_suite(); }, 5);
  timed(4, "SER weighted-average algebra", [] { return ser_algebra(); }, 0);
  timed(5, "SMO KKT audit and QP oracle", [] { return smo_correctness(); }, 0);
  timed(6, "metrics and ROC hand cases", [] { return metrics_roc(); }, 0);
  timed(7, "mini-SoC end-to-end analog", [&] { return end_to_end(data); },
        300);
  timed(8, "per-module sensitivity proportions",
        [&] { return module_proportions(data); }, 300);

  std::printf(failures ? "acceptance: %d criterion(s) failed\n"
                       : "acceptance: all criteria passed\n",
              failures);
  return failures ? 1 : 0;
}
