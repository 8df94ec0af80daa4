// ssresf: gate-level single-event-effect analysis pipeline.
//
// Subcommands hand artifacts to each other through files, so every stage can
// be rerun and inspected in isolation. Given identical inputs and seeds the
// artifacts are byte-identical; wall-clock timings go to stderr and the
// optional --times sidecar, never into the main artifacts.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssresf/campaign.hpp"
#include "ssresf/metrics.hpp"
#include "ssresf/model_select.hpp"
#include "ssresf/vcd.hpp"

using namespace ssresf;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << content;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct StageClock {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

// Inputs registered here end up in the optional run manifest.
struct Manifest {
  std::string command;
  uint64_t seed = 0;
  std::map<std::string, uint64_t> digests;

  void record(const std::string& path, const std::string& content) {
    digests[path] = fnv1a(content);
  }

  void write(const std::string& path, double wall_seconds) const {
    if (path.empty()) return;
    json j;
    j["tool_version"] = kVersion;
    j["command"] = command;
    j["seed"] = seed;
    j["timestamp"] =
        static_cast<int64_t>(std::chrono::duration_cast<std::chrono::seconds>(
                                 std::chrono::system_clock::now()
                                     .time_since_epoch())
                                 .count());
    j["wall_seconds"] = wall_seconds;
    char buf[20];
    for (const auto& [file, digest] : digests) {
      std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)digest);
      j["inputs"][file] = buf;
    }
    write_file(path, j.dump(2) + "\n");
  }
};

FlatDesign load_design(const std::string& path, const std::string& top,
                       Manifest& manifest) {
  std::string text = read_file(path);
  manifest.record(path, text);
  return elaborate(parse_netlist(text), top);
}

std::string clusters_to_json(const std::vector<Cluster>& clusters,
                             const FlatDesign& design,
                             const ClusterParams& params) {
  json j;
  j["params"] = {{"kn", params.kn}, {"ln", params.ln}, {"seed", params.seed}};
  j["clusters"] = json::array();
  for (const auto& c : clusters) {
    json row;
    row["id"] = c.cluster_id;
    row["center"] = c.center;
    row["center_name"] = design.cells[c.center].full_name();
    row["members"] = c.members;
    json names = json::array();
    for (CellId m : c.members) names.push_back(design.cells[m].full_name());
    row["member_names"] = names;
    j["clusters"].push_back(row);
  }
  return j.dump(2) + "\n";
}

std::vector<Cluster> load_clusters(const std::string& path,
                                   const FlatDesign& design,
                                   Manifest& manifest) {
  std::string text = read_file(path);
  manifest.record(path, text);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, path + ": " + e.what());
  }
  std::vector<Cluster> clusters;
  for (const auto& row : j.at("clusters")) {
    Cluster c;
    c.cluster_id = row.at("id").get<int>();
    c.center = row.at("center").get<CellId>();
    c.members = row.at("members").get<std::vector<CellId>>();
    for (CellId m : c.members)
      if (m < 0 || m >= static_cast<CellId>(design.cells.size()))
        throw Error(ErrorKind::TargetNotFound,
                    path + ": cell " + std::to_string(m));
    clusters.push_back(std::move(c));
  }
  return clusters;
}

Stimulus load_stim(const std::string& path, const FlatDesign& design,
                   Manifest& manifest) {
  std::string text = read_file(path);
  manifest.record(path, text);
  Stimulus stim = load_stimulus(text);
  validate_stimulus(stim, design);
  return stim;
}

FaultDb load_db(const std::string& path, Manifest& manifest) {
  std::string text = read_file(path);
  manifest.record(path, text);
  return load_fault_db(text);
}

// Rebuild the per-node campaign view from a report produced by `campaign`.
CampaignResult campaign_from_report(const json& j) {
  CampaignResult result;
  result.chip_ser = j.at("chip_ser").get<double>();
  for (const auto& row : j.at("ranked_nodes")) {
    NodeStats ns;
    ns.cell = row.at("cell").get<CellId>();
    ns.injections = row.at("injections").get<uint64_t>();
    ns.soft_errors = row.at("soft_errors").get<uint64_t>();
    ns.sensitivity = row.at("sensitivity").get<double>();
    result.nodes[ns.cell] = ns;
  }
  return result;
}

Dataset subset(const Dataset& ds, const std::vector<int>& folds, int held_out,
               bool keep_held_out) {
  Dataset out;
  out.feat_min = ds.feat_min;
  out.feat_max = ds.feat_max;
  out.mask = ds.mask;
  for (size_t i = 0; i < ds.size(); ++i) {
    if ((folds[i] == held_out) != keep_held_out) continue;
    out.nodes.push_back(ds.nodes[i]);
    out.x.push_back(ds.x[i]);
    out.y.push_back(ds.y[i]);
  }
  return out;
}

json error_json(const std::string& kind, const std::string& detail) {
  json j;
  j["error"] = {{"kind", kind}, {"detail", detail}};
  return j;
}

// ---------------------------------------------------------------------------

struct ParseArgs {
  std::string netlist, top = "top", out = "-", manifest;
};

void cmd_parse(const ParseArgs& a) {
  Manifest manifest;
  manifest.command = "parse";
  StageClock clock;
  FlatDesign d = load_design(a.netlist, a.top, manifest);

  std::map<std::string, int> type_counts;
  for (const auto& cell : d.cells) type_counts[gate_name(cell.type)] += 1;
  auto levels = levelize(d);
  int depth = 0;
  for (int l : levels) depth = std::max(depth, l);

  json j;
  j["top"] = a.top;
  j["cells"] = d.cells.size();
  j["nets"] = d.net_count();
  j["logic_depth"] = depth;
  j["type_counts"] = type_counts;
  auto names = [&](const std::vector<NetId>& nets) {
    json arr = json::array();
    for (NetId n : nets) arr.push_back(d.net_names[n]);
    return arr;
  };
  j["primary_inputs"] = names(d.primary_inputs);
  j["primary_outputs"] = names(d.primary_outputs);
  j["clock_nets"] = names(d.clock_nets);
  write_file(a.out, j.dump(2) + "\n");
  manifest.write(a.manifest, clock.seconds());
}

struct ClusterArgs {
  std::string netlist, top = "top", out = "-", manifest;
  int kn = 8, ln = 3;
  uint64_t seed = 0;
};

void cmd_cluster(const ClusterArgs& a) {
  Manifest manifest;
  manifest.command = "cluster";
  manifest.seed = a.seed;
  StageClock clock;
  FlatDesign d = load_design(a.netlist, a.top, manifest);
  ClusterParams params;
  params.kn = a.kn;
  params.ln = a.ln;
  params.seed = a.seed;
  auto clusters = cluster_cells(d.cells, params);
  write_file(a.out, clusters_to_json(clusters, d, params));
  manifest.write(a.manifest, clock.seconds());
}

struct CampaignArgs {
  std::string netlist, top = "top", db, stimulus, clusters, out = "-";
  std::string dump_vcd, times, manifest;
  double let = 37.0, flux = 4e8, area = 1e-5, window = 1e-3, fraction = 1.0;
  uint64_t seed = 0;
  int jobs = 0;
};

void cmd_campaign(const CampaignArgs& a) {
  Manifest manifest;
  manifest.command = "campaign";
  manifest.seed = a.seed;
  StageClock clock;
  FlatDesign d = load_design(a.netlist, a.top, manifest);
  FaultDb db = load_db(a.db, manifest);
  Stimulus stim = load_stim(a.stimulus, d, manifest);
  auto clusters = load_clusters(a.clusters, d, manifest);

  CampaignConfig cfg;
  cfg.let = a.let;
  cfg.flux = a.flux;
  cfg.device_area = a.area;
  cfg.window = a.window;
  cfg.sample_fraction = a.fraction;
  cfg.seed = a.seed;
  cfg.jobs = a.jobs > 0
                 ? a.jobs
                 : std::max(1u, std::thread::hardware_concurrency());
  auto out = run_full_campaign(d, stim, clusters, db, cfg);
  write_file(a.out, campaign_report_json(out, cfg, d));

  if (!a.dump_vcd.empty()) {
    write_file(a.dump_vcd + "/golden.vcd",
               write_vcd(simulate(d, stim, {}), d, db.time_unit_ns));
    for (size_t i = 0; i < out.events.size(); ++i) {
      if (!out.is_error[i]) continue;
      char name[40];
      std::snprintf(name, sizeof name, "/event_%06zu.vcd", i);
      write_file(a.dump_vcd + name,
                 write_vcd(simulate(d, stim, {out.events[i]}), d,
                           db.time_unit_ns));
    }
  }

  double secs = clock.seconds();
  std::cerr << "campaign: " << out.events.size() << " injections in " << secs
            << " s\n";
  if (!a.times.empty()) {
    json t = {{"campaign_seconds", secs},
              {"injections", out.events.size()}};
    write_file(a.times, t.dump(2) + "\n");
  }
  manifest.write(a.manifest, secs);
}

struct TrainArgs {
  std::string netlist, top = "top", clusters, campaign, stimulus;
  std::string out = "-", curve, roc_csv, metrics, manifest;
  double tau = -1.0;  // < 0: use the campaign's chip SER
  int folds = 5;
  uint64_t seed = 0;
};

void cmd_train(const TrainArgs& a) {
  Manifest manifest;
  manifest.command = "train";
  manifest.seed = a.seed;
  StageClock clock;
  FlatDesign d = load_design(a.netlist, a.top, manifest);
  auto clusters = load_clusters(a.clusters, d, manifest);
  Stimulus stim = load_stim(a.stimulus, d, manifest);
  std::string campaign_text = read_file(a.campaign);
  manifest.record(a.campaign, campaign_text);
  CampaignResult campaign = campaign_from_report(json::parse(campaign_text));

  SimOptions opts;
  opts.record_all_nets = true;
  Trace golden = simulate(d, stim, {}, opts);
  auto vectors = extract_features(d, clusters, golden);
  double tau = a.tau >= 0 ? a.tau : campaign.chip_ser;
  label_nodes(vectors, campaign, tau);
  Dataset ds = preprocess(vectors);

  auto best = grid_search(ds, {0.1, 1, 10, 100}, {0.01, 0.1, 1, 10}, a.folds,
                          a.seed);
  SvmParams params;
  params.c = best.c;
  params.gamma = best.gamma;
  params.seed = a.seed;
  auto sel = forward_feature_selection(ds, params, a.folds, a.seed);
  ds.mask = sel.mask;

  // Held-out predictions for the metrics/ROC artifacts.
  auto folds = stratified_folds(ds.y, a.folds, a.seed);
  std::vector<int> preds(ds.size());
  std::vector<double> scores(ds.size());
  for (int k = 0; k < a.folds; ++k) {
    Dataset tr = subset(ds, folds, k, false);
    Dataset ho = subset(ds, folds, k, true);
    if (ho.size() == 0) continue;
    auto model = train_svm(tr, params);
    for (size_t i = 0, j = 0; i < ds.size(); ++i) {
      if (folds[i] != k) continue;
      double score = model.decision(ho.x[j++]);
      scores[i] = score;
      preds[i] = score >= 0 ? +1 : -1;
    }
  }
  Metrics m = evaluate(preds, ds.y);
  RocCurve curve = roc(scores, ds.y);

  auto model = train_svm(ds, params);
  write_file(a.out, model_to_json(model));

  if (!a.curve.empty()) {
    std::ostringstream os;
    os << "size,feature,cv_accuracy\n";
    for (size_t i = 0; i < sel.score_curve.size(); ++i)
      os << (i + 1) << "," << feature_names()[sel.order[i]] << ","
         << sel.score_curve[i] << "\n";
    write_file(a.curve, os.str());
  }
  if (!a.roc_csv.empty()) {
    std::ostringstream os;
    os << "fpr,tpr\n";
    for (const auto& [fpr, tpr] : curve.points)
      os << fpr << "," << tpr << "\n";
    write_file(a.roc_csv, os.str());
  }
  if (!a.metrics.empty()) {
    json j;
    j["tau"] = tau;
    j["labeled_nodes"] = ds.size();
    j["best_c"] = best.c;
    j["best_gamma"] = best.gamma;
    j["cv_accuracy"] = best.mean_accuracy;
    json feats = json::array();
    for (int f = 0; f < kFeatureCount; ++f)
      if (ds.mask[f]) feats.push_back(feature_names()[f]);
    j["selected_features"] = feats;
    j["held_out"] = {{"tp", m.tp},         {"tn", m.tn},
                     {"fp", m.fp},         {"fn", m.fn},
                     {"tpr", m.tpr},       {"tnr", m.tnr},
                     {"precision", m.precision},
                     {"accuracy", m.accuracy},
                     {"f1", m.f1},         {"auc", curve.auc}};
    write_file(a.metrics, j.dump(2) + "\n");
  }
  manifest.write(a.manifest, clock.seconds());
}

struct PredictArgs {
  std::string netlist, top = "top", clusters, stimulus, model, out = "-";
  std::string times, manifest;
};

void cmd_predict(const PredictArgs& a) {
  Manifest manifest;
  manifest.command = "predict";
  StageClock clock;
  FlatDesign d = load_design(a.netlist, a.top, manifest);
  auto clusters = load_clusters(a.clusters, d, manifest);
  Stimulus stim = load_stim(a.stimulus, d, manifest);
  std::string model_text = read_file(a.model);
  manifest.record(a.model, model_text);
  SvmModel model = model_from_json(model_text);

  SimOptions opts;
  opts.record_all_nets = true;
  Trace golden = simulate(d, stim, {}, opts);
  auto vectors = extract_features(d, clusters, golden);

  StageClock classify_clock;
  auto preds = predict_sensitivity(model, vectors);
  double classify_secs = classify_clock.seconds();

  json j;
  j["predictions"] = json::array();
  for (const auto& p : preds) {
    const CellInfo& cell = d.cells[p.node];
    j["predictions"].push_back(
        {{"cell", p.node},
         {"name", cell.full_name()},
         {"module", cell.path.empty() ? "" : cell.path.front()},
         {"score", p.score},
         {"label", p.label == +1 ? "high" : "low"}});
  }
  write_file(a.out, j.dump(2) + "\n");

  double secs = clock.seconds();
  std::cerr << "predict: " << preds.size() << " nodes in " << secs
            << " s (classification " << classify_secs << " s)\n";
  if (!a.times.empty()) {
    json t = {{"predict_seconds", secs},
              {"classify_seconds", classify_secs},
              {"nodes", preds.size()}};
    write_file(a.times, t.dump(2) + "\n");
  }
  manifest.write(a.manifest, secs);
}

struct ReportArgs {
  std::string campaign, predictions, modules, campaign_times, predict_times;
  std::string out, manifest;
};

void cmd_report(const ReportArgs& a) {
  Manifest manifest;
  manifest.command = "report";
  StageClock clock;
  std::string campaign_text = read_file(a.campaign);
  manifest.record(a.campaign, campaign_text);
  json campaign = json::parse(campaign_text);

  json j;
  j["chip_ser"] = campaign.at("chip_ser");
  j["sigma_set"] = campaign.at("sigma_set");
  j["sigma_seu"] = campaign.at("sigma_seu");
  j["clusters"] = campaign.at("clusters");

  std::ostringstream text;
  text << "chip SER " << campaign.at("chip_ser").get<double>() << "\n";

  if (!a.predictions.empty()) {
    std::string pred_text = read_file(a.predictions);
    manifest.record(a.predictions, pred_text);
    json preds = json::parse(pred_text);
    std::map<std::string, std::string> tags;
    if (!a.modules.empty()) {
      std::string tag_text = read_file(a.modules);
      manifest.record(a.modules, tag_text);
      tags = json::parse(tag_text)
                 .get<std::map<std::string, std::string>>();
    }
    std::map<std::string, uint64_t> high_by_tag;
    uint64_t high_total = 0;
    for (const auto& p : preds.at("predictions")) {
      if (p.at("label").get<std::string>() != "high") continue;
      std::string module = p.at("module").get<std::string>();
      auto it = tags.find(module);
      high_by_tag[it != tags.end() ? it->second
                                   : (module.empty() ? "top" : module)] += 1;
      high_total += 1;
    }
    j["high_sensitivity_nodes"] = high_total;
    j["module_proportions"] = json::object();
    text << "high-sensitivity nodes: " << high_total << "\n";
    for (const auto& [tag, count] : high_by_tag) {
      double pct = high_total ? 100.0 * double(count) / double(high_total) : 0;
      j["module_proportions"][tag] = pct;
      char line[96];
      std::snprintf(line, sizeof line, "  %-10s %6.2f%% (%llu nodes)\n",
                    tag.c_str(), pct, (unsigned long long)count);
      text << line;
    }
  }

  if (!a.campaign_times.empty() && !a.predict_times.empty()) {
    json ct = json::parse(read_file(a.campaign_times));
    json pt = json::parse(read_file(a.predict_times));
    double cs = ct.at("campaign_seconds").get<double>();
    double ps = pt.at("predict_seconds").get<double>();
    if (ps > 0) {
      j["speedup"] = cs / ps;
      text << "campaign " << cs << " s vs predict " << ps << " s -> speedup "
           << cs / ps << "x\n";
    }
  }

  std::cout << text.str();
  if (!a.out.empty()) write_file(a.out, j.dump(2) + "\n");
  manifest.write(a.manifest, clock.seconds());
}

uint64_t env_seed() {
  const char* env = std::getenv("SSRESF_SEED");
  return env ? std::strtoull(env, nullptr, 10) : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gate-level single-event-effect analysis toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  uint64_t seed_default = env_seed();

  ParseArgs pa;
  auto* parse = app.add_subcommand("parse", "Elaborate a netlist and summarize it");
  parse->add_option("netlist", pa.netlist, "Structural netlist file")->required();
  parse->add_option("--top", pa.top, "Top module name");
  parse->add_option("-o,--out", pa.out, "Summary JSON ('-' = stdout)");
  parse->add_option("--manifest", pa.manifest, "Run manifest JSON");

  ClusterArgs ca;
  ca.seed = seed_default;
  auto* cluster = app.add_subcommand("cluster", "Group cells by hierarchy distance");
  cluster->add_option("netlist", ca.netlist)->required();
  cluster->add_option("--top", ca.top);
  cluster->add_option("--kn", ca.kn, "Number of clusters");
  cluster->add_option("--ln", ca.ln, "Hierarchy layers compared");
  cluster->add_option("--seed", ca.seed);
  cluster->add_option("-o,--out", ca.out, "Cluster report JSON");
  cluster->add_option("--manifest", ca.manifest);

  CampaignArgs ga;
  ga.seed = seed_default;
  auto* campaign = app.add_subcommand("campaign", "Run a fault-injection campaign");
  campaign->add_option("netlist", ga.netlist)->required();
  campaign->add_option("--top", ga.top);
  campaign->add_option("--db", ga.db, "Fault database JSON")->required();
  campaign->add_option("--stimulus", ga.stimulus)->required();
  campaign->add_option("--clusters", ga.clusters, "Cluster report JSON")->required();
  campaign->add_option("--let", ga.let, "Particle LET (MeV*cm^2/mg)");
  campaign->add_option("--flux", ga.flux, "Particles/(cm^2*s)");
  campaign->add_option("--area", ga.area, "Device area (cm^2)");
  campaign->add_option("--window", ga.window, "Exposure window (s)");
  campaign->add_option("--fraction", ga.fraction, "Per-cluster sample fraction");
  campaign->add_option("--seed", ga.seed);
  campaign->add_option("--jobs", ga.jobs, "Parallel workers (0 = cores)");
  campaign->add_option("-o,--out", ga.out, "Campaign report JSON");
  campaign->add_option("--dump-vcd", ga.dump_vcd, "Directory for VCD dumps");
  campaign->add_option("--times", ga.times, "Timing sidecar JSON");
  campaign->add_option("--manifest", ga.manifest);

  TrainArgs ta;
  ta.seed = seed_default;
  auto* train = app.add_subcommand("train", "Train the sensitivity classifier");
  train->add_option("netlist", ta.netlist)->required();
  train->add_option("--top", ta.top);
  train->add_option("--clusters", ta.clusters)->required();
  train->add_option("--campaign", ta.campaign, "Campaign report JSON")->required();
  train->add_option("--stimulus", ta.stimulus)->required();
  train->add_option("--tau", ta.tau, "Sensitivity threshold (default: chip SER)");
  train->add_option("--folds", ta.folds, "Cross-validation folds");
  train->add_option("--seed", ta.seed);
  train->add_option("-o,--out", ta.out, "Model JSON");
  train->add_option("--curve", ta.curve, "Feature-selection curve CSV");
  train->add_option("--roc", ta.roc_csv, "ROC points CSV");
  train->add_option("--metrics", ta.metrics, "Held-out metrics JSON");
  train->add_option("--manifest", ta.manifest);

  PredictArgs da;
  auto* predict = app.add_subcommand("predict", "Classify node sensitivity");
  predict->add_option("netlist", da.netlist)->required();
  predict->add_option("--top", da.top);
  predict->add_option("--clusters", da.clusters)->required();
  predict->add_option("--stimulus", da.stimulus)->required();
  predict->add_option("--model", da.model)->required();
  predict->add_option("-o,--out", da.out, "Predictions JSON");
  predict->add_option("--times", da.times, "Timing sidecar JSON");
  predict->add_option("--manifest", da.manifest);

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Combine stage artifacts");
  report->add_option("--campaign", ra.campaign)->required();
  report->add_option("--predictions", ra.predictions);
  report->add_option("--modules", ra.modules, "Instance-to-module tag map JSON");
  report->add_option("--campaign-times", ra.campaign_times);
  report->add_option("--predict-times", ra.predict_times);
  report->add_option("-o,--out", ra.out, "Combined report JSON");
  report->add_option("--manifest", ra.manifest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << error_json("UsageError", e.what()).dump() << "\n";
    return 2;
  }

  try {
    if (*parse) cmd_parse(pa);
    if (*cluster) cmd_cluster(ca);
    if (*campaign) cmd_campaign(ga);
    if (*train) cmd_train(ta);
    if (*predict) cmd_predict(da);
    if (*report) cmd_report(ra);
  } catch (const Error& e) {
    std::cerr << error_json(to_string(e.kind()), e.detail()).dump() << "\n";
    return 3;
  } catch (const json::exception& e) {
    std::cerr << error_json("SchemaError", e.what()).dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << error_json("InternalError", e.what()).dump() << "\n";
    return 4;
  }
  return 0;
}
