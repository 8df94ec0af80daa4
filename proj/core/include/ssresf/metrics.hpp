#pragma once

#include <vector>

#include "ssresf/error.hpp"

namespace ssresf {

struct Metrics {
  long tp = 0, tn = 0, fp = 0, fn = 0;
  double tpr = 0, tnr = 0, precision = 0, accuracy = 0, f1 = 0;
};

struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (FPR, TPR)
  double auc = 0;
};

/// Confusion counts and derived ratios for +1/-1 predictions.
Metrics evaluate(const std::vector<int>& predictions,
                 const std::vector<int>& labels);

/// ROC by sweeping the threshold over the sorted unique scores; AUC by the
/// trapezoid rule.
RocCurve roc(const std::vector<double>& scores, const std::vector<int>& labels);

}  // namespace ssresf
