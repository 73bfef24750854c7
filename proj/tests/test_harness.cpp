#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "codemix/config.hpp"
#include "codemix/error.hpp"
#include "codemix/harness.hpp"
#include "codemix/report.hpp"
#include "support.hpp"

using namespace codemix;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text, const fs::path& base = {}) {
  std::istringstream in(text);
  return parse_config(in, base);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("codemix_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig toy_config(const fs::path& out) {
  auto cfg = parse("data = " + testing_support::fixture("toy.csv").string() + "\n");
  cfg.output = out;
  return cfg;
}

// A 4 x 5 grid with one accuracy per (vectorizer, classifier).
GridResult synthetic_grid(const std::vector<std::vector<double>>& acc) {
  GridResult g;
  g.vectorizers = {VectorizerKind::Count, VectorizerKind::TfIdf, VectorizerKind::TermFrequency,
                   VectorizerKind::Hashing};
  g.classifiers = {ClassifierKind::MultinomialNB, ClassifierKind::KNN,
                   ClassifierKind::DecisionTree, ClassifierKind::RandomForest,
                   ClassifierKind::SVM};
  for (std::size_t v = 0; v < 4; ++v) {
    for (std::size_t c = 0; c < 5; ++c) {
      CellResult cell;
      cell.vectorizer = g.vectorizers[v];
      cell.spec.kind = g.classifiers[c];
      cell.params = cell.spec.describe();
      cell.ok = true;
      cell.accuracy = acc[v][c];
      cell.mcc = acc[v][c] - 0.2;
      cell.friedman_pick = true;
      g.cells.push_back(cell);
    }
  }
  return g;
}

}  // namespace

TEST(Config, Defaults) {
  const auto cfg = parse("");
  EXPECT_DOUBLE_EQ(cfg.test_fraction, 0.2);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.vectorizers.size(), 4u);
  EXPECT_EQ(cfg.classifiers.size(), 5u);
  EXPECT_EQ(cfg.rf_sizes, (std::vector<std::size_t>{100, 1000, 2000}));
  EXPECT_EQ(cfg.svm_kernels, std::vector<KernelKind>{KernelKind::Rbf});
  EXPECT_EQ(cfg.hashing.n_buckets, std::size_t{1} << 18);
  EXPECT_EQ(cfg.knn_k, 5u);
  EXPECT_FALSE(cfg.svm_gamma);
  EXPECT_EQ(cfg.friedman_orientation, FriedmanOrientation::ClassifiersAsTreatments);
}

TEST(Config, ParsesEveryKey) {
  const auto cfg = parse(
      "# comment\n"
      "; also a comment\n"
      "data = corpus.csv\n"
      "text_column = body\n"
      "label_column = sentiment\n"
      "test_fraction = 0.25\n"
      "seed = 7\n"
      "vectorizers = tf, hashing\n"
      "classifiers = rf,svm\n"
      "nb.alpha = 0.5\n"
      "knn.k = 3\n"
      "rf.n_estimators = 10, 20\n"
      "rf.max_features = 4\n"
      "svm.kernels = linear,rbf\n"
      "svm.C = 2\n"
      "svm.gamma = 0.1\n"
      "svm.tolerance = 0.01\n"
      "hashing.n_buckets = 1024\n"
      "hashing.alternate_sign = false\n"
      "output = out\n"
      "friedman.orientation = vectorizers\n"
      "friedman.tie_correction = false\n"
      "workers = 3\n"
      "timings = true\n",
      "/base");
  EXPECT_EQ(cfg.data, fs::path("/base/corpus.csv"));
  EXPECT_EQ(cfg.output, fs::path("/base/out"));
  EXPECT_EQ(cfg.columns.text, "body");
  EXPECT_EQ(cfg.columns.label, "sentiment");
  EXPECT_DOUBLE_EQ(cfg.test_fraction, 0.25);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.vectorizers,
            (std::vector<VectorizerKind>{VectorizerKind::TermFrequency, VectorizerKind::Hashing}));
  EXPECT_EQ(cfg.classifiers,
            (std::vector<ClassifierKind>{ClassifierKind::RandomForest, ClassifierKind::SVM}));
  EXPECT_DOUBLE_EQ(cfg.nb_alpha, 0.5);
  EXPECT_EQ(cfg.knn_k, 3u);
  EXPECT_EQ(cfg.rf_sizes, (std::vector<std::size_t>{10, 20}));
  EXPECT_EQ(cfg.rf_max_features, 4u);
  EXPECT_EQ(cfg.svm_kernels.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.svm_C, 2.0);
  EXPECT_DOUBLE_EQ(*cfg.svm_gamma, 0.1);
  EXPECT_DOUBLE_EQ(cfg.svm_tolerance, 0.01);
  EXPECT_EQ(cfg.hashing.n_buckets, 1024u);
  EXPECT_FALSE(cfg.hashing.alternate_sign);
  EXPECT_EQ(cfg.friedman_orientation, FriedmanOrientation::VectorizersAsTreatments);
  EXPECT_FALSE(cfg.friedman_tie_correction);
  EXPECT_EQ(cfg.workers, 3u);
  EXPECT_TRUE(cfg.timings);
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse("colour = blue\n"), ConfigError);
  EXPECT_THROW(parse("seed = 1\nseed = 2\n"), ConfigError);
  EXPECT_THROW(parse("[grid]\n"), ConfigError);
  EXPECT_THROW(parse("seed\n"), ConfigError);
  EXPECT_THROW(parse("seed = -3\n"), ConfigError);
  EXPECT_THROW(parse("test_fraction = 1.5\n"), ConfigError);
  EXPECT_THROW(parse("vectorizers = \n"), ConfigError);
  EXPECT_THROW(parse("vectorizers = tf, bm25\n"), ConfigError);
  EXPECT_THROW(parse("classifiers = rf, rf\n"), ConfigError);
  EXPECT_THROW(parse("knn.k = 0\n"), ConfigError);
  EXPECT_THROW(parse("svm.C = 0\n"), ConfigError);
  EXPECT_THROW(parse("hashing.n_buckets = 1000\n"), ConfigError);
  EXPECT_THROW(parse("workers = 0\n"), ConfigError);
  EXPECT_THROW(parse("timings = maybe\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/codemix.ini"), ConfigError);
}

TEST(Config, ErrorNamesTheLine) {
  try {
    parse("seed = 1\n\nbogus = 2\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Config, EntriesRoundTrip) {
  const auto cfg = parse("seed = 9\nvectorizers = tf,count\nsvm.gamma = 0.25\n");
  std::string text;
  for (const auto& [k, v] : cfg.entries()) text += k + " = " + v + "\n";
  const auto again = parse(text);
  EXPECT_EQ(again.entries(), cfg.entries());
}

TEST(Config, WorkersFromEnvironment) {
  auto cfg = parse("workers = 2\n");
  ::setenv("CODEMIX_WORKERS", "6", 1);
  apply_environment(cfg);
  EXPECT_EQ(cfg.workers, 6u);
  ::setenv("CODEMIX_WORKERS", "zero", 1);
  EXPECT_THROW(apply_environment(cfg), ConfigError);
  ::unsetenv("CODEMIX_WORKERS");
}

TEST(Baselines, PublishedNumbers) {
  const auto& reg = BaselineRegistry::published();
  EXPECT_EQ(reg.records().size(), 5u);
  const auto* rf = reg.find(VectorizerKind::TermFrequency, ClassifierKind::RandomForest);
  ASSERT_NE(rf, nullptr);
  EXPECT_DOUBLE_EQ(rf->accuracy, 0.6359);
  EXPECT_DOUBLE_EQ(rf->mcc, 0.438);
  const auto* svm = reg.find(VectorizerKind::TermFrequency, ClassifierKind::SVM);
  ASSERT_NE(svm, nullptr);
  EXPECT_DOUBLE_EQ(svm->accuracy, 0.6187);
  EXPECT_DOUBLE_EQ(svm->mcc, 0.400);
  EXPECT_DOUBLE_EQ(reg.records()[2].accuracy, 0.6731);
  EXPECT_DOUBLE_EQ(reg.records()[3].mcc, 0.520);
  EXPECT_DOUBLE_EQ(reg.records()[4].accuracy, 0.6582);
  for (const auto& b : reg.records()) EXPECT_FALSE(b.source.empty());
}

TEST(Significance, DominanceGrid) {
  std::vector<std::vector<double>> acc(4);
  for (std::size_t v = 0; v < 4; ++v) acc[v] = {0.40, 0.45, 0.50, 0.62 + 0.01 * v, 0.58};
  const auto g = synthetic_grid(acc);
  const auto r = significance(g, Metric::Accuracy, FriedmanOrientation::ClassifiersAsTreatments);
  EXPECT_EQ(r.blocks, 4u);
  EXPECT_EQ(r.treatments, 5u);
  EXPECT_DOUBLE_EQ(r.statistic, 16.0);
  EXPECT_NEAR(r.p_value, 0.003019, 1e-6);
  const auto t = significance(g, Metric::Mcc, FriedmanOrientation::VectorizersAsTreatments);
  EXPECT_EQ(t.blocks, 5u);
  EXPECT_EQ(t.treatments, 4u);
}

TEST(Significance, ConstantGridAndIncompleteGrid) {
  const auto g = synthetic_grid(std::vector<std::vector<double>>(4, std::vector<double>(5, 0.5)));
  const auto r = significance(g, Metric::Accuracy, FriedmanOrientation::ClassifiersAsTreatments);
  EXPECT_EQ(r.p_value, 1.0);
  auto broken = g;
  broken.cells[7].ok = false;
  EXPECT_THROW(
      significance(broken, Metric::Accuracy, FriedmanOrientation::ClassifiersAsTreatments),
      ArgumentError);
}

TEST(RunGrid, ToyCorpusCompletes) {
  const auto cfg = toy_config(scratch("toy_complete"));
  const auto g = run_grid(cfg);
  // 4 vectorizers x (nb, knn, dt, rf x 3, svm)
  EXPECT_EQ(g.cells.size(), 28u);
  EXPECT_EQ(g.failed(), 0u);
  EXPECT_EQ(g.test_size, 2u);
  EXPECT_EQ(g.train_size, 10u);
  std::set<std::string> names;
  for (const auto& c : g.cells) {
    EXPECT_GE(c.accuracy, 0.0);
    EXPECT_LE(c.accuracy, 1.0);
    EXPECT_GE(c.mcc, -1.0);
    EXPECT_LE(c.mcc, 1.0);
    EXPECT_TRUE(names.insert(c.name()).second);
    ASSERT_TRUE(c.confusion);
    EXPECT_EQ(c.confusion->total(), g.test_size);
  }
  // Exactly one forest variant represents rf in every vectorizer block.
  for (const auto v : g.vectorizers) {
    for (const auto k : g.classifiers) EXPECT_NE(g.pick(v, k), nullptr);
  }
}

TEST(RunGrid, FailedCellIsRecordedNotFatal) {
  auto cfg = toy_config(scratch("toy_fail"));
  cfg.vectorizers = {VectorizerKind::TermFrequency};
  cfg.classifiers = {ClassifierKind::KNN, ClassifierKind::MultinomialNB};
  cfg.knn_k = 11;  // more neighbours than training rows
  const auto g = run_grid(cfg);
  ASSERT_EQ(g.cells.size(), 2u);
  EXPECT_FALSE(g.cells[0].ok);
  EXPECT_FALSE(g.cells[0].error.empty());
  EXPECT_TRUE(g.cells[1].ok);
  std::ostringstream csv;
  write_results_csv(csv, g, false);
  EXPECT_NE(csv.str().find("tf,knn,k=11,failed,failed,NA"), std::string::npos) << csv.str();
}

TEST(RunGrid, WorkerCountDoesNotChangeResults) {
  auto cfg = toy_config(scratch("toy_workers"));
  cfg.rf_sizes = {25};
  const auto a = run_grid(cfg);
  cfg.workers = 4;
  const auto b = run_grid(cfg);
  std::ostringstream ca;
  std::ostringstream cb;
  write_results_csv(ca, a, false);
  write_results_csv(cb, b, false);
  EXPECT_EQ(ca.str(), cb.str());
}

TEST(EmitReport, FilesAndConsistency) {
  const auto out = scratch("toy_report");
  const auto cfg = toy_config(out);
  const auto g = run_grid(cfg);
  const auto sig = significance_all(g, cfg);
  emit_report(g, sig, BaselineRegistry::published(), cfg, out);

  for (const char* f : {"results.csv", "report.md", "run.json", "timings.csv"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  EXPECT_FALSE(fs::is_empty(out / "roc"));

  const auto results = slurp(out / "results.csv");
  std::istringstream lines(results);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "vectorizer,classifier,params,accuracy,mcc,seconds");
  std::size_t rows = 0;
  double prev = 2.0;
  std::set<std::string> numbers;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    ASSERT_EQ(fields.size(), 6u) << line;
    const double acc = std::stod(fields[3]);
    EXPECT_LE(acc, prev);
    prev = acc;
    numbers.insert(fields[3]);
    numbers.insert(fields[4]);
  }
  EXPECT_EQ(rows, g.cells.size());

  // Every accuracy/mcc in the grid table of report.md appears in results.csv.
  const auto report = slurp(out / "report.md");
  const auto grid_start = report.find("## Grid");
  const auto grid_end = report.find("## Significance");
  std::istringstream table(report.substr(grid_start, grid_end - grid_start));
  std::size_t table_rows = 0;
  while (std::getline(table, line)) {
    if (line.rfind("| ", 0) != 0 || line.find("| vectorizer") == 0) continue;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, '|')) cols.push_back(c);
    const auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(' '));
      s.erase(s.find_last_not_of(' ') + 1);
      return s;
    };
    EXPECT_TRUE(numbers.contains(trim(cols.at(4)))) << line;
    EXPECT_TRUE(numbers.contains(trim(cols.at(5)))) << line;
    ++table_rows;
  }
  EXPECT_EQ(table_rows, g.cells.size());
  EXPECT_NE(report.find("Random Forest + Term Frequency | 0.6359 | 0.438"), std::string::npos);

  const auto j = nlohmann::json::parse(slurp(out / "run.json"));
  for (const char* key : {"config", "seed", "prng", "stopwords", "hash", "version", "timestamp",
                          "split", "labels", "cells", "friedman"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["prng"], "mt19937_64/rejection-v1");
  EXPECT_EQ(j["stopwords"], "en-127-v1");
  EXPECT_EQ(j["config"]["seed"], "42");
  EXPECT_EQ(j["cells"].size(), g.cells.size());
}

TEST(EmitReport, RocFileNames) {
  CellResult c;
  c.vectorizer = VectorizerKind::TermFrequency;
  c.spec.kind = ClassifierKind::RandomForest;
  c.spec.n_estimators = 2000;
  EXPECT_EQ(roc_file_name(c, "Mixed feelings"), "tf_rf-2000_Mixed_feelings.csv");
  c.spec.kind = ClassifierKind::SVM;
  EXPECT_EQ(roc_file_name(c, "3"), "tf_svm-rbf_3.csv");
  c.spec.kind = ClassifierKind::KNN;
  EXPECT_EQ(roc_file_name(c, "neg"), "tf_knn_neg.csv");
}
