#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "codemix/classify.hpp"
#include "codemix/corpus.hpp"
#include "codemix/evaluate.hpp"
#include "codemix/hash.hpp"
#include "codemix/porter.hpp"
#include "codemix/preprocess.hpp"
#include "codemix/stats.hpp"
#include "codemix/vectorize.hpp"

using namespace codemix;

namespace {

const std::string kFixtures = CODEMIX_FIXTURES;

std::vector<std::string> porter_words() {
  std::ifstream in(kFixtures + "/porter_voc.txt");
  std::vector<std::string> words;
  for (std::string w; std::getline(in, w);) words.push_back(w);
  return words;
}

// Zipf-ish synthetic comments over a mixed Latin/Malayalam vocabulary.
Corpus synthetic(std::size_t n, std::size_t vocab, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::string> terms;
  for (std::size_t i = 0; i < vocab; ++i) {
    std::string t;
    const std::size_t len = 3 + gen() % 6;
    const bool malayalam = i % 5 == 0;
    for (std::size_t j = 0; j < len; ++j) {
      if (malayalam) {
        t += "\xE0\xB4";
        t += static_cast<char>(0x95 + gen() % 20);
      } else {
        t += static_cast<char>('a' + gen() % 26);
      }
    }
    terms.push_back(t);
  }
  std::string csv = "text,label\n";
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t len = 5 + gen() % 20;
    for (std::size_t j = 0; j < len; ++j) {
      const double u = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
      csv += terms[static_cast<std::size_t>(std::pow(u, 3.0) * vocab)] + " ";
    }
    csv += ",c" + std::to_string(r % 5) + "\n";
  }
  std::istringstream in(csv);
  return load_csv(in);
}

struct Prepared {
  Corpus corpus;
  std::vector<TokenizedDocument> docs;
  DocTermMatrix tf;
};

const Prepared& prepared() {
  static const Prepared p = [] {
    Prepared out;
    out.corpus = synthetic(1000, 4000, 1);
    out.docs = preprocess_corpus(out.corpus);
    const auto v = Vectorizer::fit(VectorizerKind::TermFrequency, out.docs);
    out.tf = v.transform(out.docs, out.corpus.label_ids(), out.corpus.num_classes());
    return out;
  }();
  return p;
}

}  // namespace

static void BM_Murmur3(benchmark::State& state) {
  const std::string key(static_cast<std::size_t>(state.range(0)), 'x');
  for (auto _ : state) benchmark::DoNotOptimize(murmur3_32(key));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Murmur3)->Arg(8)->Arg(64)->Arg(1024);

static void BM_PorterVocabulary(benchmark::State& state) {
  const auto words = porter_words();
  for (auto _ : state) {
    for (const auto& w : words) benchmark::DoNotOptimize(porter_stem(w));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(words.size()));
}
BENCHMARK(BM_PorterVocabulary);

static void BM_PreprocessCorpus(benchmark::State& state) {
  const auto& p = prepared();
  for (auto _ : state) benchmark::DoNotOptimize(preprocess_corpus(p.corpus));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.corpus.size()));
}
BENCHMARK(BM_PreprocessCorpus)->Unit(benchmark::kMillisecond);

static void BM_Vectorize(benchmark::State& state) {
  const auto& p = prepared();
  const auto kind = static_cast<VectorizerKind>(state.range(0));
  for (auto _ : state) {
    const auto v = Vectorizer::fit(kind, p.docs);
    benchmark::DoNotOptimize(v.transform(p.docs, p.corpus.label_ids(), p.corpus.num_classes()));
  }
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Vectorize)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

static void BM_Fit(benchmark::State& state) {
  const auto& p = prepared();
  ClassifierSpec spec;
  spec.kind = static_cast<ClassifierKind>(state.range(0));
  spec.n_estimators = 20;
  for (auto _ : state) benchmark::DoNotOptimize(fit(p.tf, spec));
  state.SetLabel(std::string(to_string(spec.kind)));
}
BENCHMARK(BM_Fit)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

static void BM_KnnPredict(benchmark::State& state) {
  const auto& p = prepared();
  ClassifierSpec spec;
  spec.kind = ClassifierKind::KNN;
  const auto model = fit(p.tf, spec);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(model.predict(p.tf.rows[i++ % p.tf.size()]));
}
BENCHMARK(BM_KnnPredict);

static void BM_Mcc(benchmark::State& state) {
  std::mt19937_64 gen(2);
  const auto l = static_cast<std::size_t>(state.range(0));
  ConfusionMatrix cm(l);
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) cm.add(i, j, gen() % 100);
  }
  for (auto _ : state) benchmark::DoNotOptimize(mcc(cm));
}
BENCHMARK(BM_Mcc)->Arg(2)->Arg(5)->Arg(20);

static void BM_Roc(benchmark::State& state) {
  std::mt19937_64 gen(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<ClassScores> scores(n, ClassScores(2));
  std::vector<LabelId> truth(n);
  for (std::size_t i = 0; i < n; ++i) {
    scores[i][0] = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
    scores[i][1] = 1.0 - scores[i][0];
    truth[i] = static_cast<LabelId>(i % 2);
  }
  for (auto _ : state) benchmark::DoNotOptimize(roc_one_vs_rest(scores, truth, 0));
}
BENCHMARK(BM_Roc)->Arg(858)->Arg(10000);

static void BM_Friedman(benchmark::State& state) {
  std::mt19937_64 gen(4);
  std::vector<std::vector<double>> v(4, std::vector<double>(5));
  for (auto& row : v) {
    for (auto& x : row) x = static_cast<double>(gen() % 1000) / 1000.0;
  }
  for (auto _ : state) benchmark::DoNotOptimize(friedman(v));
}
BENCHMARK(BM_Friedman);

BENCHMARK_MAIN();
