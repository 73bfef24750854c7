#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "codemix/corpus.hpp"
#include "codemix/preprocess.hpp"

namespace codemix {

struct SparseEntry {
  std::uint32_t index = 0;
  double value = 0.0;

  bool operator==(const SparseEntry&) const = default;
};

/// Sparse vector with strictly increasing indices and no stored zeros.
class DocumentVector {
 public:
  DocumentVector() = default;
  explicit DocumentVector(std::size_t dimension) : dimension_(dimension) {}

  /// Validates ordering, range and the no-zeros rule; throws ArgumentError.
  DocumentVector(std::size_t dimension, std::vector<SparseEntry> entries);

  /// Sorts, sums duplicate indices and drops resulting zeros.
  static DocumentVector from_unsorted(std::size_t dimension, std::vector<SparseEntry> entries);

  std::span<const SparseEntry> entries() const { return entries_; }
  std::size_t dimension() const { return dimension_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  double value_at(std::uint32_t index) const;
  double squared_norm() const;
  double sum() const;
  std::vector<double> to_dense() const;

  /// Scales to unit Euclidean norm; the zero vector is left as is.
  void normalize();

  bool operator==(const DocumentVector&) const = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<SparseEntry> entries_;
};

double dot(const DocumentVector& a, const DocumentVector& b);
double squared_distance(const DocumentVector& a, const DocumentVector& b);

/// Rows of one fitted representation with their aligned labels.
struct DocTermMatrix {
  std::vector<DocumentVector> rows;
  std::vector<LabelId> labels;
  std::size_t dimension = 0;
  std::size_t num_classes = 0;

  std::size_t size() const { return rows.size(); }

  /// Throws ArgumentError when rows and labels disagree in count, a row has
  /// the wrong dimension, or a label is >= num_classes.
  void validate() const;
};

/// A term is a token of two or more code points.
bool is_term(std::string_view token);

class Vocabulary {
 public:
  std::optional<std::uint32_t> index_of(const std::string& term) const;
  const std::string& term(std::uint32_t index) const { return terms_.at(index); }
  std::uint32_t document_frequency(std::uint32_t index) const { return df_.at(index); }
  std::size_t n_train_docs() const { return n_docs_; }
  std::size_t size() const { return terms_.size(); }

  /// Smoothed inverse document frequency ln((1 + n) / (1 + df)) + 1.
  double idf(std::uint32_t index) const;

 private:
  friend Vocabulary fit_vocabulary(std::span<const TokenizedDocument> train_docs);

  std::unordered_map<std::string, std::uint32_t> index_;
  std::vector<std::string> terms_;
  std::vector<std::uint32_t> df_;
  std::size_t n_docs_ = 0;
};

/// Collects every term of the training documents, indexed in lexical
/// (byte) order, with per-document frequencies. Throws ArgumentError on an
/// empty training set and DataError on an empty vocabulary.
Vocabulary fit_vocabulary(std::span<const TokenizedDocument> train_docs);

/// Writes `term<TAB>index<TAB>df` lines in index order.
void write_vocabulary(std::ostream& out, const Vocabulary& vocab);

DocumentVector count_vectorize(const TokenizedDocument& doc, const Vocabulary& vocab);
DocumentVector tf_vectorize(const TokenizedDocument& doc, const Vocabulary& vocab);
DocumentVector tfidf_vectorize(const TokenizedDocument& doc, const Vocabulary& vocab);

/// Signed feature hashing. Each term t adds s(t) to bucket h(t) mod
/// n_buckets, where h is murmur3_32(t, seed 0) and s(t) is -1 when bit 31 of
/// h is set, else +1 (always +1 without alternate_sign). The result is
/// L2-normalized. n_buckets must be a power of two in [2, 2^31].
DocumentVector hashing_vectorize(const TokenizedDocument& doc, std::size_t n_buckets,
                                 bool alternate_sign = true);

enum class VectorizerKind { Count, TfIdf, TermFrequency, Hashing };

std::string_view to_string(VectorizerKind kind);
std::optional<VectorizerKind> parse_vectorizer_kind(std::string_view name);

struct HashingOptions {
  std::size_t n_buckets = std::size_t{1} << 18;
  bool alternate_sign = true;
};

/// One of the four representations, fitted on a training split.
class Vectorizer {
 public:
  static Vectorizer fit(VectorizerKind kind, std::span<const TokenizedDocument> train_docs,
                        const HashingOptions& hashing = {});

  VectorizerKind kind() const { return kind_; }
  std::size_t dimension() const;
  const Vocabulary* vocabulary() const { return vocab_ ? &*vocab_ : nullptr; }

  DocumentVector transform(const TokenizedDocument& doc) const;
  DocTermMatrix transform(std::span<const TokenizedDocument> docs, std::span<const LabelId> labels,
                          std::size_t num_classes) const;

 private:
  VectorizerKind kind_ = VectorizerKind::Count;
  std::optional<Vocabulary> vocab_;
  HashingOptions hashing_;
};

}  // namespace codemix
