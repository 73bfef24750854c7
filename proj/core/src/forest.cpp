#include "codemix/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "codemix/error.hpp"

namespace codemix {

ClassScores RandomForestModel::scores(const DocumentVector& x) const {
  ClassScores s(num_classes_, 0.0);
  for (const auto& tree : trees_) {
    const auto d = tree.leaf_distribution(x);
    for (std::size_t c = 0; c < num_classes_; ++c) s[c] += d[c];
  }
  const double n = static_cast<double>(trees_.size());
  for (auto& v : s) v /= n;
  return s;
}

RandomForestModel fit_random_forest(const DocTermMatrix& matrix, std::size_t n_estimators,
                                    std::uint64_t seed, const ForestOptions& options) {
  check_training_matrix(matrix);
  if (n_estimators < 1) {
    throw ArgumentError("random forest needs at least one tree");
  }
  std::optional<std::size_t> max_features;
  if (!options.all_features) {
    max_features = options.max_features.value_or(static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(matrix.dimension)))));
    if (*max_features < 1) {
      throw ArgumentError("random forest max_features must be positive");
    }
  }

  RandomForestModel forest;
  forest.num_classes_ = matrix.num_classes;
  forest.dimension_ = matrix.dimension;
  forest.trees_.resize(n_estimators);

  const std::size_t n = matrix.size();
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    try {
      TreeBuilder builder(matrix);
      std::vector<std::uint32_t> multiplicity(n);
      for (std::size_t t = next++; t < n_estimators; t = next++) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        std::vector<TreeSample> samples;
        if (options.bootstrap) {
          std::fill(multiplicity.begin(), multiplicity.end(), 0U);
          for (std::size_t i = 0; i < n; ++i) ++multiplicity[rng.below(n)];
          for (std::size_t r = 0; r < n; ++r) {
            if (multiplicity[r] > 0) {
              samples.push_back({static_cast<std::uint32_t>(r), static_cast<double>(multiplicity[r])});
            }
          }
        } else {
          samples.resize(n);
          for (std::size_t r = 0; r < n; ++r) samples[r] = {static_cast<std::uint32_t>(r), 1.0};
        }
        forest.trees_[t] = builder.grow(std::move(samples), max_features, &rng);
      }
    } catch (...) {
      const std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n_estimators;
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, n_estimators);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return forest;
}

}  // namespace codemix
