#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssresf/features.hpp"

namespace ssresf {

struct SvmParams {
  double c = 10.0;
  double gamma = 1.0;
  double tol = 1e-3;
  int max_passes = 100;
  uint64_t seed = 0;
};

/// Soft-margin RBF SVM in dual form: decision(x) = sum_i alpha_i y_i
/// K(x_i, x) + b with K(x, z) = exp(-gamma * ||x - z||^2) over the selected
/// features.
struct SvmModel {
  std::vector<std::array<double, kFeatureCount>> support_vectors;  // normalized
  std::vector<double> alpha;  // same length; 0 <= alpha_i <= C
  std::vector<int> y;
  double bias = 0.0;
  double c = 1.0;
  double gamma = 1.0;
  std::array<double, kFeatureCount> feat_min{};
  std::array<double, kFeatureCount> feat_max{};
  std::array<bool, kFeatureCount> mask{};

  double decision(const std::array<double, kFeatureCount>& x_normalized) const;
  /// sign(decision), with sign(0) -> +1.
  int predict(const std::array<double, kFeatureCount>& x_normalized) const;
};

double rbf_kernel(const std::array<double, kFeatureCount>& a,
                  const std::array<double, kFeatureCount>& b,
                  const std::array<bool, kFeatureCount>& mask, double gamma);

/// Sequential minimal optimization on the dataset's selected features.
SvmModel train_svm(const Dataset& ds, const SvmParams& params);

/// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij for a
/// trained model (used by correctness audits).
double dual_objective(const SvmModel& model);

struct Prediction {
  CellId node = -1;
  double score = 0.0;
  int label = 0;  // +1 high, -1 low
};

/// Classify raw (unnormalized) feature vectors with a trained model.
std::vector<Prediction> predict_sensitivity(
    const SvmModel& model, const std::vector<FeatureVector>& vectors);

std::string model_to_json(const SvmModel& model);
SvmModel model_from_json(const std::string& text);

}  // namespace ssresf
