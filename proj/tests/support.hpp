#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "codemix/vectorize.hpp"

namespace testing_support {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(CODEMIX_FIXTURES) / name;
}

// Dense rows to a matrix; zeros are not stored.
inline codemix::DocumentVector sparse(const std::vector<double>& dense) {
  std::vector<codemix::SparseEntry> entries;
  for (std::uint32_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) entries.push_back({i, dense[i]});
  }
  return codemix::DocumentVector(dense.size(), std::move(entries));
}

inline codemix::DocTermMatrix matrix(const std::vector<std::vector<double>>& rows,
                                     const std::vector<codemix::LabelId>& labels,
                                     std::size_t num_classes) {
  codemix::DocTermMatrix m;
  m.dimension = rows.empty() ? 0 : rows.front().size();
  m.num_classes = num_classes;
  for (const auto& r : rows) m.rows.push_back(sparse(r));
  m.labels = labels;
  return m;
}

// Random sparse non-negative count matrix with every class present.
inline codemix::DocTermMatrix random_counts(std::mt19937_64& gen, std::size_t n, std::size_t dim,
                                            std::size_t classes, double density = 0.3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<std::vector<double>> rows(n, std::vector<double>(dim, 0.0));
  std::vector<codemix::LabelId> labels(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (auto& v : rows[r]) {
      if (u(gen) < density) v = count(gen);
    }
    labels[r] = static_cast<codemix::LabelId>(r < classes ? r : gen() % classes);
  }
  return matrix(rows, labels, classes);
}

}  // namespace testing_support
