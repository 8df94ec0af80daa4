#include "ssresf/model_select.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ssresf {

std::vector<int> stratified_folds(const std::vector<int>& labels, int k,
                                  uint64_t seed) {
  std::vector<int> fold(labels.size(), 0);
  std::mt19937_64 rng(seed);
  for (int cls : {+1, -1}) {
    std::vector<size_t> idx;
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) idx.push_back(i);
    for (size_t i = 0; i + 1 < idx.size(); ++i)
      std::swap(idx[i], idx[i + rng() % (idx.size() - i)]);
    for (size_t i = 0; i < idx.size(); ++i)
      fold[idx[i]] = static_cast<int>(i % k);
  }
  return fold;
}

double cross_validate(const Dataset& ds, const SvmParams& params, int k,
                      uint64_t seed) {
  if (static_cast<int>(ds.size()) < k)
    throw Error(ErrorKind::TooFewSamples,
                std::to_string(ds.size()) + " samples for " +
                    std::to_string(k) + " folds");
  std::vector<int> fold = stratified_folds(ds.y, k, seed);

  size_t correct = 0, total = 0;
  for (int f = 0; f < k; ++f) {
    Dataset train;
    train.feat_min = ds.feat_min;
    train.feat_max = ds.feat_max;
    train.mask = ds.mask;
    std::vector<size_t> held;
    for (size_t i = 0; i < ds.size(); ++i) {
      if (fold[i] == f) {
        held.push_back(i);
      } else {
        train.x.push_back(ds.x[i]);
        train.y.push_back(ds.y[i]);
        train.nodes.push_back(ds.nodes[i]);
      }
    }
    if (held.empty()) continue;
    bool pos = false, neg = false;
    for (int y : train.y) (y > 0 ? pos : neg) = true;
    if (!pos || !neg) {
      // degenerate fold: majority vote
      int maj = std::count(train.y.begin(), train.y.end(), 1) * 2 >=
                        static_cast<long>(train.y.size())
                    ? 1
                    : -1;
      for (size_t i : held) correct += ds.y[i] == maj;
      total += held.size();
      continue;
    }
    SvmModel model = train_svm(train, params);
    for (size_t i : held) {
      correct += model.predict(ds.x[i]) == ds.y[i];
      ++total;
    }
  }
  return total ? double(correct) / double(total) : 0.0;
}

GridSearchResult grid_search(const Dataset& ds, const std::vector<double>& c_grid,
                             const std::vector<double>& gamma_grid, int k,
                             uint64_t seed, const SvmParams& base) {
  GridSearchResult best;
  best.mean_accuracy = -1;
  for (double c : c_grid) {
    for (double gamma : gamma_grid) {
      SvmParams params = base;
      params.c = c;
      params.gamma = gamma;
      double acc = cross_validate(ds, params, k, seed);
      bool better = acc > best.mean_accuracy;
      bool tie = acc == best.mean_accuracy &&
                 (c < best.c || (c == best.c && gamma < best.gamma));
      if (better || tie) best = {c, gamma, acc};
    }
  }
  return best;
}

FeatureSelectionResult forward_feature_selection(const Dataset& ds,
                                                 const SvmParams& params, int k,
                                                 uint64_t seed) {
  int candidates = 0;
  for (bool m : ds.mask) candidates += m;
  if (candidates < 2)
    throw Error(ErrorKind::TooFewSamples, "need >= 2 candidate features");

  FeatureSelectionResult result;
  std::array<bool, kFeatureCount> current{};
  Dataset work = ds;

  for (int size = 1; size <= candidates; ++size) {
    int best_feat = -1;
    double best_score = -1;
    for (int f = 0; f < kFeatureCount; ++f) {
      if (!ds.mask[f] || current[f]) continue;
      work.mask = current;
      work.mask[f] = true;
      double score = cross_validate(work, params, k, seed);
      if (score > best_score) {
        best_score = score;
        best_feat = f;
      }
    }
    current[best_feat] = true;
    result.order.push_back(best_feat);
    result.score_curve.push_back(best_score);
  }

  // Global maximum of the curve; ties break toward fewer features.
  size_t best_size = 1;
  for (size_t s = 2; s <= result.score_curve.size(); ++s)
    if (result.score_curve[s - 1] > result.score_curve[best_size - 1])
      best_size = s;
  result.best_size = best_size;
  for (size_t s = 0; s < best_size; ++s) result.mask[result.order[s]] = true;
  return result;
}

}  // namespace ssresf
