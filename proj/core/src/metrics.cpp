#include "ssresf/metrics.hpp"

#include <algorithm>
#include <numeric>

namespace ssresf {

Metrics evaluate(const std::vector<int>& predictions,
                 const std::vector<int>& labels) {
  if (predictions.size() != labels.size())
    throw Error(ErrorKind::LengthMismatch,
                std::to_string(predictions.size()) + " vs " +
                    std::to_string(labels.size()));
  Metrics m;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] > 0)
      (predictions[i] > 0 ? m.tp : m.fn) += 1;
    else
      (predictions[i] > 0 ? m.fp : m.tn) += 1;
  }
  auto ratio = [](long a, long b) { return b > 0 ? double(a) / double(b) : 0.0; };
  m.tpr = ratio(m.tp, m.tp + m.fn);
  m.tnr = ratio(m.tn, m.tn + m.fp);
  m.precision = ratio(m.tp, m.tp + m.fp);
  m.accuracy = ratio(m.tp + m.tn, m.tp + m.tn + m.fp + m.fn);
  m.f1 = (m.precision + m.tpr) > 0
             ? 2 * m.precision * m.tpr / (m.precision + m.tpr)
             : 0.0;
  return m;
}

RocCurve roc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw Error(ErrorKind::LengthMismatch, "scores vs labels");
  long p = 0, n = 0;
  for (int y : labels) (y > 0 ? p : n) += 1;
  if (p == 0 || n == 0)
    throw Error(ErrorKind::SingleClassDataset, "ROC needs both classes");

  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  long tp = 0, fp = 0;
  size_t i = 0;
  while (i < order.size()) {
    double threshold = scores[order[i]];
    // advance through all samples tied at this score
    while (i < order.size() && scores[order[i]] == threshold) {
      (labels[order[i]] > 0 ? tp : fp) += 1;
      ++i;
    }
    curve.points.push_back({double(fp) / n, double(tp) / p});
  }
  for (size_t k = 1; k < curve.points.size(); ++k) {
    auto [x0, y0] = curve.points[k - 1];
    auto [x1, y1] = curve.points[k];
    curve.auc += (x1 - x0) * (y0 + y1) / 2;
  }
  return curve;
}

}  // namespace ssresf
