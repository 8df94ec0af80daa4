#include "ssresf/svm.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

namespace ssresf {

double rbf_kernel(const std::array<double, kFeatureCount>& a,
                  const std::array<double, kFeatureCount>& b,
                  const std::array<bool, kFeatureCount>& mask, double gamma) {
  double dist2 = 0;
  for (int f = 0; f < kFeatureCount; ++f) {
    if (!mask[f]) continue;
    double d = a[f] - b[f];
    dist2 += d * d;
  }
  return std::exp(-gamma * dist2);
}

double SvmModel::decision(
    const std::array<double, kFeatureCount>& x_normalized) const {
  double sum = bias;
  for (size_t i = 0; i < support_vectors.size(); ++i)
    sum += alpha[i] * y[i] *
           rbf_kernel(support_vectors[i], x_normalized, mask, gamma);
  return sum;
}

int SvmModel::predict(
    const std::array<double, kFeatureCount>& x_normalized) const {
  return decision(x_normalized) >= 0 ? +1 : -1;
}

SvmModel train_svm(const Dataset& ds, const SvmParams& params) {
  if (params.c <= 0 || params.gamma <= 0)
    throw Error(ErrorKind::NonPositiveHyperparameter,
                "C and gamma must be positive");
  bool pos = false, neg = false;
  for (int y : ds.y) (y > 0 ? pos : neg) = true;
  if (!pos || !neg)
    throw Error(ErrorKind::SingleClassDataset, "training needs both classes");

  const auto n = ds.size();
  const double c = params.c;
  std::vector<double> kernel(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j <= i; ++j)
      kernel[i * n + j] = kernel[j * n + i] =
          rbf_kernel(ds.x[i], ds.x[j], ds.mask, params.gamma);

  std::vector<double> alpha(n, 0.0);
  double b = 0.0;
  auto decision_i = [&](size_t i) {
    double sum = b;
    for (size_t k = 0; k < n; ++k)
      if (alpha[k] != 0) sum += alpha[k] * ds.y[k] * kernel[k * n + i];
    return sum;
  };

  std::mt19937_64 rng(params.seed);
  int passes = 0;
  while (passes < params.max_passes) {
    int changed = 0;
    for (size_t i = 0; i < n; ++i) {
      double ei = decision_i(i) - ds.y[i];
      bool violates = (ds.y[i] * ei < -params.tol && alpha[i] < c) ||
                      (ds.y[i] * ei > params.tol && alpha[i] > 0);
      if (!violates) continue;

      // Sweep every candidate partner from a random start so a violating
      // point cannot stall on one unproductive choice.
      size_t start = rng() % n;
      for (size_t probe = 0; probe < n; ++probe) {
        size_t j = (start + probe) % n;
        if (j == i) continue;
        double ej = decision_i(j) - ds.y[j];

        double ai_old = alpha[i], aj_old = alpha[j];
        double lo, hi;
        if (ds.y[i] != ds.y[j]) {
          lo = std::max(0.0, aj_old - ai_old);
          hi = std::min(c, c + aj_old - ai_old);
        } else {
          lo = std::max(0.0, ai_old + aj_old - c);
          hi = std::min(c, ai_old + aj_old);
        }
        if (lo >= hi) continue;

        double eta =
            2 * kernel[i * n + j] - kernel[i * n + i] - kernel[j * n + j];
        if (eta >= 0) continue;

        double aj = aj_old - ds.y[j] * (ei - ej) / eta;
        aj = std::clamp(aj, lo, hi);
        if (std::abs(aj - aj_old) < 1e-5) continue;
        double ai = ai_old + ds.y[i] * ds.y[j] * (aj_old - aj);
        alpha[i] = ai;
        alpha[j] = aj;

        double b1 = b - ei - ds.y[i] * (ai - ai_old) * kernel[i * n + i] -
                    ds.y[j] * (aj - aj_old) * kernel[i * n + j];
        double b2 = b - ej - ds.y[i] * (ai - ai_old) * kernel[i * n + j] -
                    ds.y[j] * (aj - aj_old) * kernel[j * n + j];
        if (ai > 0 && ai < c)
          b = b1;
        else if (aj > 0 && aj < c)
          b = b2;
        else
          b = (b1 + b2) / 2;
        ++changed;
        break;
      }
    }
    passes = changed == 0 ? passes + 1 : 0;
  }

  SvmModel model;
  model.c = c;
  model.gamma = params.gamma;
  model.bias = b;
  model.feat_min = ds.feat_min;
  model.feat_max = ds.feat_max;
  model.mask = ds.mask;
  for (size_t i = 0; i < n; ++i) {
    if (alpha[i] == 0) continue;
    model.support_vectors.push_back(ds.x[i]);
    model.alpha.push_back(alpha[i]);
    model.y.push_back(ds.y[i]);
  }
  return model;
}

double dual_objective(const SvmModel& model) {
  double sum = 0, quad = 0;
  const auto n = model.alpha.size();
  for (size_t i = 0; i < n; ++i) {
    sum += model.alpha[i];
    for (size_t j = 0; j < n; ++j)
      quad += model.alpha[i] * model.alpha[j] * model.y[i] * model.y[j] *
              rbf_kernel(model.support_vectors[i], model.support_vectors[j],
                         model.mask, model.gamma);
  }
  return sum - 0.5 * quad;
}

std::vector<Prediction> predict_sensitivity(
    const SvmModel& model, const std::vector<FeatureVector>& vectors) {
  std::vector<Prediction> out;
  out.reserve(vectors.size());
  for (const auto& fv : vectors) {
    std::array<double, kFeatureCount> x{};
    for (int f = 0; f < kFeatureCount; ++f) {
      double lo = model.feat_min[f], hi = model.feat_max[f];
      x[f] = hi > lo ? (fv.raw[f] - lo) / (hi - lo) : 0.0;
    }
    Prediction p;
    p.node = fv.node;
    p.score = model.decision(x);
    p.label = p.score >= 0 ? +1 : -1;
    out.push_back(p);
  }
  return out;
}

std::string model_to_json(const SvmModel& model) {
  nlohmann::json j;
  j["version"] = 1;
  j["c"] = model.c;
  j["gamma"] = model.gamma;
  j["bias"] = model.bias;
  j["alpha"] = model.alpha;
  j["y"] = model.y;
  j["support_vectors"] = nlohmann::json::array();
  for (const auto& sv : model.support_vectors)
    j["support_vectors"].push_back(std::vector<double>(sv.begin(), sv.end()));
  j["feat_min"] = std::vector<double>(model.feat_min.begin(), model.feat_min.end());
  j["feat_max"] = std::vector<double>(model.feat_max.begin(), model.feat_max.end());
  std::vector<int> mask;
  for (bool m : model.mask) mask.push_back(m ? 1 : 0);
  j["mask"] = mask;
  j["feature_names"] = feature_names();
  return j.dump(2) + "\n";
}

SvmModel model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, e.what());
  }
  if (j.value("version", 0) != 1)
    throw Error(ErrorKind::SchemaError, "unsupported model version");
  SvmModel model;
  model.c = j.at("c").get<double>();
  model.gamma = j.at("gamma").get<double>();
  model.bias = j.at("bias").get<double>();
  model.alpha = j.at("alpha").get<std::vector<double>>();
  model.y = j.at("y").get<std::vector<int>>();
  for (const auto& sv : j.at("support_vectors")) {
    std::array<double, kFeatureCount> row{};
    auto vals = sv.get<std::vector<double>>();
    if (vals.size() != kFeatureCount)
      throw Error(ErrorKind::FeatureMaskMismatch, "support vector width");
    std::copy(vals.begin(), vals.end(), row.begin());
    model.support_vectors.push_back(row);
  }
  auto fmin = j.at("feat_min").get<std::vector<double>>();
  auto fmax = j.at("feat_max").get<std::vector<double>>();
  auto mask = j.at("mask").get<std::vector<int>>();
  if (fmin.size() != kFeatureCount || fmax.size() != kFeatureCount ||
      mask.size() != kFeatureCount)
    throw Error(ErrorKind::FeatureMaskMismatch, "normalization width");
  for (int f = 0; f < kFeatureCount; ++f) {
    model.feat_min[f] = fmin[f];
    model.feat_max[f] = fmax[f];
    model.mask[f] = mask[f] != 0;
  }
  if (model.alpha.size() != model.support_vectors.size() ||
      model.y.size() != model.support_vectors.size())
    throw Error(ErrorKind::SchemaError, "inconsistent model arrays");
  return model;
}

}  // namespace ssresf
