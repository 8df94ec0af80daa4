#pragma once

#include <cstdint>
#include <vector>

#include "ssresf/svm.hpp"

namespace ssresf {

/// Stratified fold assignment: per class, a seeded shuffle dealt round-robin
/// into k folds. fold[i] in [0, k).
std::vector<int> stratified_folds(const std::vector<int>& labels, int k,
                                  uint64_t seed);

/// Mean held-out accuracy of an SVM with the given hyperparameters over the
/// k folds.
double cross_validate(const Dataset& ds, const SvmParams& params, int k,
                      uint64_t seed);

struct GridSearchResult {
  double c = 0, gamma = 0;
  double mean_accuracy = 0;
};

/// Exhaustive (C, gamma) grid with stratified k-fold CV; ties prefer smaller
/// C, then smaller gamma.
GridSearchResult grid_search(const Dataset& ds, const std::vector<double>& c_grid,
                             const std::vector<double>& gamma_grid, int k,
                             uint64_t seed, const SvmParams& base = {});

struct FeatureSelectionResult {
  std::array<bool, kFeatureCount> mask{};
  std::vector<double> score_curve;        // score at each subset size
  std::vector<int> order;                 // features in the order added
  size_t best_size = 0;
};

/// Greedy forward selection over the dataset's candidate features; returns
/// the mask at the global-maximum CV score (ties prefer the smaller size).
FeatureSelectionResult forward_feature_selection(const Dataset& ds,
                                                 const SvmParams& params, int k,
                                                 uint64_t seed);

}  // namespace ssresf
