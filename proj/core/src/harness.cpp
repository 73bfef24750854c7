#include "codemix/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "codemix/classify.hpp"
#include "codemix/error.hpp"
#include "codemix/preprocess.hpp"
#include "codemix/rng.hpp"

namespace codemix {

std::string_view toolkit_version() { return CODEMIX_VERSION; }

std::string CellResult::name() const {
  return std::string(to_string(vectorizer)) + "/" + std::string(classifier()) + "/" + params;
}

std::size_t GridResult::failed() const {
  std::size_t n = 0;
  for (const auto& c : cells) n += c.ok ? 0 : 1;
  return n;
}

const CellResult* GridResult::pick(VectorizerKind v, ClassifierKind c) const {
  for (const auto& cell : cells) {
    if (cell.friedman_pick && cell.vectorizer == v && cell.spec.kind == c) return &cell;
  }
  return nullptr;
}

std::string_view to_string(Metric m) { return m == Metric::Accuracy ? "accuracy" : "mcc"; }

namespace {

std::vector<ClassifierSpec> variants(const ExperimentConfig& cfg, ClassifierKind kind) {
  ClassifierSpec base;
  base.kind = kind;
  base.alpha = cfg.nb_alpha;
  base.k = cfg.knn_k;
  base.C = cfg.svm_C;
  base.gamma = cfg.svm_gamma;
  base.tolerance = cfg.svm_tolerance;
  base.max_features = cfg.rf_max_features;
  std::vector<ClassifierSpec> out;
  if (kind == ClassifierKind::RandomForest) {
    for (const auto n : cfg.rf_sizes) {
      auto s = base;
      s.n_estimators = n;
      out.push_back(s);
    }
  } else if (kind == ClassifierKind::SVM) {
    for (const auto k : cfg.svm_kernels) {
      auto s = base;
      s.kernel = k;
      out.push_back(s);
    }
  } else {
    out.push_back(base);
  }
  return out;
}

bool uses_abs_features(const CellResult& cell, const ExperimentConfig& cfg) {
  return cell.spec.kind == ClassifierKind::MultinomialNB &&
         cell.vectorizer == VectorizerKind::Hashing && cfg.hashing.alternate_sign;
}

// Multinomial NB needs non-negative counts; signed hashing buckets are
// folded to their magnitudes.
DocTermMatrix absolute(const DocTermMatrix& m) {
  DocTermMatrix out = m;
  for (auto& row : out.rows) {
    std::vector<SparseEntry> entries(row.entries().begin(), row.entries().end());
    for (auto& e : entries) e.value = std::fabs(e.value);
    row = DocumentVector(row.dimension(), std::move(entries));
  }
  return out;
}

void evaluate_cell(CellResult& cell, const DocTermMatrix& train, const DocTermMatrix& test) {
  const auto start = std::chrono::steady_clock::now();
  try {
    const auto model = fit(train, cell.spec);
    std::vector<ClassScores> scores;
    std::vector<LabelId> predicted;
    scores.reserve(test.size());
    predicted.reserve(test.size());
    for (const auto& row : test.rows) {
      scores.push_back(model.scores(row));
      predicted.push_back(model.predict(row));
    }
    auto cm = confusion(test.labels, predicted, test.num_classes);
    cell.accuracy = accuracy(cm);
    cell.mcc = mcc(cm);
    cell.confusion = std::move(cm);
    cell.roc.resize(test.num_classes);
    for (LabelId c = 0; c < test.num_classes; ++c) {
      try {
        cell.roc[c] = roc_one_vs_rest(scores, test.labels, c);
      } catch (const ArgumentError&) {
        // class absent from (or the whole of) the test split
      }
    }
    cell.ok = true;
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  cell.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn fn) {
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// Identifies a variant within its family independent of per-vectorizer
// params suffixes such as ";features=abs".
std::string variant_key(const ClassifierSpec& spec) {
  if (spec.kind == ClassifierKind::RandomForest) return std::to_string(spec.n_estimators);
  if (spec.kind == ClassifierKind::SVM) return std::string(to_string(spec.kernel));
  return {};
}

void mark_picks(GridResult& grid) {
  for (const auto family : grid.classifiers) {
    // Variants of one family (forest sizes, kernels) compete on mean
    // accuracy across vectorizers; a variant with a failed cell only wins
    // when every variant has one.
    std::vector<std::string> seen;
    std::optional<std::string> best;
    bool best_complete = false;
    double best_mean = -1.0;
    for (const auto& cell : grid.cells) {
      if (cell.spec.kind != family) continue;
      const auto key = variant_key(cell.spec);
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
      seen.push_back(key);
      double sum = 0.0;
      bool complete = true;
      for (const auto& other : grid.cells) {
        if (other.spec.kind != family || variant_key(other.spec) != key) continue;
        complete = complete && other.ok;
        sum += other.ok ? other.accuracy : 0.0;
      }
      const double mean = sum / static_cast<double>(grid.vectorizers.size());
      if (!best || (complete && !best_complete) ||
          (complete == best_complete && mean > best_mean)) {
        best = key;
        best_complete = complete;
        best_mean = mean;
      }
    }
    for (auto& cell : grid.cells) {
      if (cell.spec.kind == family && variant_key(cell.spec) == best) cell.friedman_pick = true;
    }
  }
}

}  // namespace

GridResult run_grid(const ExperimentConfig& config) {
  if (config.data.empty()) {
    throw ConfigError("config: no data path given");
  }
  return run_grid(config, load_csv(config.data, config.columns));
}

GridResult run_grid(const ExperimentConfig& config, const Corpus& corpus) {
  config.validate();
  GridResult grid;
  grid.vectorizers = config.vectorizers;
  grid.classifiers = config.classifiers;
  grid.labels = corpus.labels;

  const auto parts = split(corpus, config.test_fraction, config.seed);
  grid.train_size = parts.train.size();
  grid.test_size = parts.test.size();
  grid.partition_digest = partition_digest(parts);

  const auto train_docs = preprocess_corpus(parts.train);
  const auto test_docs = preprocess_corpus(parts.test);
  const auto train_labels = parts.train.label_ids();
  const auto test_labels = parts.test.label_ids();
  const auto num_classes = corpus.num_classes();

  for (const auto v : config.vectorizers) {
    for (const auto c : config.classifiers) {
      for (const auto& spec : variants(config, c)) {
        CellResult cell;
        cell.vectorizer = v;
        cell.spec = spec;
        cell.params = spec.describe();
        if (uses_abs_features(cell, config)) cell.params += ";features=abs";
        cell.spec.seed = derive_seed(config.seed, cell.name());
        grid.cells.push_back(std::move(cell));
      }
    }
  }

  std::size_t first = 0;
  for (const auto v : config.vectorizers) {
    std::size_t last = first;
    while (last < grid.cells.size() && grid.cells[last].vectorizer == v) ++last;

    std::optional<DocTermMatrix> train;
    std::optional<DocTermMatrix> test;
    std::string failure;
    try {
      const auto vec = Vectorizer::fit(v, train_docs, config.hashing);
      train = vec.transform(train_docs, train_labels, num_classes);
      test = vec.transform(test_docs, test_labels, num_classes);
      grid.dimensions.push_back(vec.dimension());
    } catch (const std::exception& e) {
      failure = e.what();
      grid.dimensions.push_back(0);
    }
    if (!train) {
      for (std::size_t i = first; i < last; ++i) grid.cells[i].error = failure;
    } else {
      std::optional<DocTermMatrix> train_abs;
      std::optional<DocTermMatrix> test_abs;
      parallel_for(last - first, config.workers, [&](std::size_t offset) {
        auto& cell = grid.cells[first + offset];
        if (uses_abs_features(cell, config)) {
          evaluate_cell(cell, absolute(*train), absolute(*test));
        } else {
          evaluate_cell(cell, *train, *test);
        }
      });
    }
    first = last;
  }

  mark_picks(grid);
  return grid;
}

FriedmanReport significance(const GridResult& grid, Metric metric, FriedmanOrientation orientation,
                            bool tie_correction) {
  const bool by_vectorizer = orientation == FriedmanOrientation::ClassifiersAsTreatments;
  const auto& blocks_v = grid.vectorizers;
  const auto& treat_c = grid.classifiers;
  const std::size_t n = by_vectorizer ? blocks_v.size() : treat_c.size();
  const std::size_t k = by_vectorizer ? treat_c.size() : blocks_v.size();
  std::vector<std::vector<double>> values(n, std::vector<double>(k, 0.0));
  for (std::size_t vi = 0; vi < blocks_v.size(); ++vi) {
    for (std::size_t ci = 0; ci < treat_c.size(); ++ci) {
      const auto* cell = grid.pick(blocks_v[vi], treat_c[ci]);
      if (cell == nullptr || !cell->ok) {
        throw ArgumentError("significance: incomplete grid at " +
                            std::string(to_string(blocks_v[vi])) + "/" +
                            std::string(to_string(treat_c[ci])));
      }
      const double value = metric == Metric::Accuracy ? cell->accuracy : cell->mcc;
      if (by_vectorizer) values[vi][ci] = value; else values[ci][vi] = value;
    }
  }
  return friedman(values, tie_correction);
}

const BaselineRegistry& BaselineRegistry::published() {
  static const BaselineRegistry registry({
      {"Random Forest + Term Frequency", VectorizerKind::TermFrequency,
       ClassifierKind::RandomForest, 0.6359, 0.438, "best classical model, accuracy 63.59%"},
      {"SVM + Term Frequency", VectorizerKind::TermFrequency, ClassifierKind::SVM, 0.6187, 0.400,
       "second classical model, accuracy 61.87%"},
      {"XLM", std::nullopt, std::nullopt, 0.6731, 0.531, "best language model, accuracy 67.31%"},
      {"DistilBERT", std::nullopt, std::nullopt, 0.6692, 0.520, "language model, accuracy 66.92%"},
      {"BERT", std::nullopt, std::nullopt, 0.6582, 0.519, "language model, accuracy 65.82%"},
  });
  return registry;
}

const Baseline* BaselineRegistry::find(VectorizerKind v, ClassifierKind c) const {
  for (const auto& b : records_) {
    if (b.vectorizer == v && b.classifier == c) return &b;
  }
  return nullptr;
}

}  // namespace codemix
