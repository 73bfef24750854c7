#include "codemix/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "codemix/error.hpp"
#include "codemix/hash.hpp"
#include "codemix/utf8.hpp"

namespace codemix {

DocumentVector::DocumentVector(std::size_t dimension, std::vector<SparseEntry> entries)
    : dimension_(dimension), entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.index >= dimension_) {
      throw ArgumentError("sparse entry index out of range");
    }
    if (i > 0 && entries_[i - 1].index >= e.index) {
      throw ArgumentError("sparse entries must have strictly increasing indices");
    }
    if (e.value == 0.0) {
      throw ArgumentError("sparse vector stores an explicit zero");
    }
  }
}

DocumentVector DocumentVector::from_unsorted(std::size_t dimension,
                                             std::vector<SparseEntry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  std::vector<SparseEntry> merged;
  merged.reserve(entries.size());
  for (const auto& e : entries) {
    if (!merged.empty() && merged.back().index == e.index) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const SparseEntry& e) { return e.value == 0.0; });
  return DocumentVector(dimension, std::move(merged));
}

double DocumentVector::value_at(std::uint32_t index) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const SparseEntry& e, std::uint32_t i) { return e.index < i; });
  return it != entries_.end() && it->index == index ? it->value : 0.0;
}

double DocumentVector::squared_norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.value * e.value;
  return s;
}

double DocumentVector::sum() const {
  double s = 0.0;
  for (const auto& e : entries_) s += e.value;
  return s;
}

std::vector<double> DocumentVector::to_dense() const {
  std::vector<double> dense(dimension_, 0.0);
  for (const auto& e : entries_) dense[e.index] = e.value;
  return dense;
}

void DocumentVector::normalize() {
  const double norm = std::sqrt(squared_norm());
  if (norm == 0.0) return;
  for (auto& e : entries_) e.value /= norm;
}

double dot(const DocumentVector& a, const DocumentVector& b) {
  const auto ea = a.entries();
  const auto eb = b.entries();
  double s = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ea.size() && j < eb.size()) {
    if (ea[i].index == eb[j].index) {
      s += ea[i++].value * eb[j++].value;
    } else if (ea[i].index < eb[j].index) {
      ++i;
    } else {
      ++j;
    }
  }
  return s;
}

double squared_distance(const DocumentVector& a, const DocumentVector& b) {
  const auto ea = a.entries();
  const auto eb = b.entries();
  double s = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < ea.size() || j < eb.size()) {
    double d = 0.0;
    if (j == eb.size() || (i < ea.size() && ea[i].index < eb[j].index)) {
      d = ea[i++].value;
    } else if (i == ea.size() || eb[j].index < ea[i].index) {
      d = eb[j++].value;
    } else {
      d = ea[i++].value - eb[j++].value;
    }
    s += d * d;
  }
  return s;
}

void DocTermMatrix::validate() const {
  if (rows.size() != labels.size()) {
    throw ArgumentError("matrix has " + std::to_string(rows.size()) + " rows but " +
                        std::to_string(labels.size()) + " labels");
  }
  for (const auto& r : rows) {
    if (r.dimension() != dimension) {
      throw ArgumentError("matrix rows have mismatched dimensions");
    }
  }
  for (const auto l : labels) {
    if (l >= num_classes) {
      throw ArgumentError("label id out of range for the matrix");
    }
  }
}

bool is_term(std::string_view token) { return utf8::length(token) >= 2; }

std::optional<std::uint32_t> Vocabulary::index_of(const std::string& term) const {
  if (const auto it = index_.find(term); it != index_.end()) return it->second;
  return std::nullopt;
}

double Vocabulary::idf(std::uint32_t index) const {
  return std::log((1.0 + static_cast<double>(n_docs_)) /
                  (1.0 + static_cast<double>(df_.at(index)))) +
         1.0;
}

Vocabulary fit_vocabulary(std::span<const TokenizedDocument> train_docs) {
  if (train_docs.empty()) {
    throw ArgumentError("fit_vocabulary: empty training set");
  }
  std::map<std::string, std::uint32_t> df;
  for (const auto& doc : train_docs) {
    std::set<std::string_view> in_doc;
    for (const auto& tok : doc.tokens) {
      if (is_term(tok.text)) in_doc.insert(tok.text);
    }
    for (const auto term : in_doc) ++df[std::string(term)];
  }
  if (df.empty()) {
    throw DataError("empty vocabulary: no training token has two or more characters");
  }
  Vocabulary vocab;
  vocab.n_docs_ = train_docs.size();
  vocab.terms_.reserve(df.size());
  vocab.df_.reserve(df.size());
  for (auto& [term, count] : df) {
    const auto idx = static_cast<std::uint32_t>(vocab.terms_.size());
    vocab.index_.emplace(term, idx);
    vocab.terms_.push_back(term);
    vocab.df_.push_back(count);
  }
  return vocab;
}

void write_vocabulary(std::ostream& out, const Vocabulary& vocab) {
  for (std::uint32_t i = 0; i < vocab.size(); ++i) {
    out << vocab.term(i) << '\t' << i << '\t' << vocab.document_frequency(i) << '\n';
  }
}

DocumentVector count_vectorize(const TokenizedDocument& doc, const Vocabulary& vocab) {
  std::vector<SparseEntry> entries;
  entries.reserve(doc.tokens.size());
  for (const auto& tok : doc.tokens) {
    if (const auto idx = vocab.index_of(tok.text)) entries.push_back({*idx, 1.0});
  }
  return DocumentVector::from_unsorted(vocab.size(), std::move(entries));
}

DocumentVector tf_vectorize(const TokenizedDocument& doc, const Vocabulary& vocab) {
  auto v = count_vectorize(doc, vocab);
  v.normalize();
  return v;
}

DocumentVector tfidf_vectorize(const TokenizedDocument& doc, const Vocabulary& vocab) {
  const auto counts = count_vectorize(doc, vocab);
  std::vector<SparseEntry> weighted(counts.entries().begin(), counts.entries().end());
  for (auto& e : weighted) e.value *= vocab.idf(e.index);
  DocumentVector v(vocab.size(), std::move(weighted));
  v.normalize();
  return v;
}

DocumentVector hashing_vectorize(const TokenizedDocument& doc, std::size_t n_buckets,
                                 bool alternate_sign) {
  if (n_buckets < 2 || n_buckets > (std::size_t{1} << 31) || (n_buckets & (n_buckets - 1)) != 0) {
    throw ArgumentError("hashing_vectorize: n_buckets must be a power of two in [2, 2^31]");
  }
  std::vector<SparseEntry> entries;
  entries.reserve(doc.tokens.size());
  for (const auto& tok : doc.tokens) {
    if (!is_term(tok.text)) continue;
    const std::uint32_t h = murmur3_32(tok.text);
    const auto bucket = static_cast<std::uint32_t>(h & (n_buckets - 1));
    const double sign = (alternate_sign && (h & 0x80000000U) != 0) ? -1.0 : 1.0;
    entries.push_back({bucket, sign});
  }
  auto v = DocumentVector::from_unsorted(n_buckets, std::move(entries));
  v.normalize();
  return v;
}

std::string_view to_string(VectorizerKind kind) {
  switch (kind) {
    case VectorizerKind::Count:
      return "count";
    case VectorizerKind::TfIdf:
      return "tfidf";
    case VectorizerKind::TermFrequency:
      return "tf";
    case VectorizerKind::Hashing:
      return "hashing";
  }
  return "count";
}

std::optional<VectorizerKind> parse_vectorizer_kind(std::string_view name) {
  for (const auto k : {VectorizerKind::Count, VectorizerKind::TfIdf, VectorizerKind::TermFrequency,
                       VectorizerKind::Hashing}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

Vectorizer Vectorizer::fit(VectorizerKind kind, std::span<const TokenizedDocument> train_docs,
                           const HashingOptions& hashing) {
  Vectorizer v;
  v.kind_ = kind;
  v.hashing_ = hashing;
  if (kind == VectorizerKind::Hashing) {
    // Validates the bucket count up front.
    (void)hashing_vectorize(TokenizedDocument{}, hashing.n_buckets, hashing.alternate_sign);
  } else {
    v.vocab_ = fit_vocabulary(train_docs);
  }
  return v;
}

std::size_t Vectorizer::dimension() const {
  return kind_ == VectorizerKind::Hashing ? hashing_.n_buckets : vocab_->size();
}

DocumentVector Vectorizer::transform(const TokenizedDocument& doc) const {
  switch (kind_) {
    case VectorizerKind::Count:
      return count_vectorize(doc, *vocab_);
    case VectorizerKind::TfIdf:
      return tfidf_vectorize(doc, *vocab_);
    case VectorizerKind::TermFrequency:
      return tf_vectorize(doc, *vocab_);
    case VectorizerKind::Hashing:
      return hashing_vectorize(doc, hashing_.n_buckets, hashing_.alternate_sign);
  }
  return {};
}

DocTermMatrix Vectorizer::transform(std::span<const TokenizedDocument> docs,
                                    std::span<const LabelId> labels,
                                    std::size_t num_classes) const {
  if (docs.size() != labels.size()) {
    throw ArgumentError("transform: documents and labels differ in count");
  }
  DocTermMatrix m;
  m.dimension = dimension();
  m.num_classes = num_classes;
  m.rows.reserve(docs.size());
  for (const auto& d : docs) m.rows.push_back(transform(d));
  m.labels.assign(labels.begin(), labels.end());
  m.validate();
  return m;
}

}  // namespace codemix
