#include "codemix/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "codemix/csv.hpp"
#include "codemix/error.hpp"
#include "codemix/rng.hpp"
#include "codemix/utf8.hpp"

namespace codemix {

LabelId LabelTable::intern(std::string_view name) {
  const std::string key(name);
  if (const auto it = index_.find(key); it != index_.end()) {
    return it->second;
  }
  const auto id = static_cast<LabelId>(names_.size());
  names_.push_back(key);
  frequencies_.push_back(0);
  index_.emplace(key, id);
  return id;
}

std::optional<LabelId> LabelTable::find(std::string_view name) const {
  if (const auto it = index_.find(std::string(name)); it != index_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::vector<LabelId> Corpus::label_ids() const {
  std::vector<LabelId> out;
  out.reserve(comments.size());
  for (const auto& c : comments) {
    out.push_back(c.label);
  }
  return out;
}

namespace {

std::size_t column_index(const csv::Record& header, const std::string& name) {
  const auto it = std::find(header.fields.begin(), header.fields.end(), name);
  if (it == header.fields.end()) {
    throw DataError("missing column '" + name + "' in CSV header");
  }
  return static_cast<std::size_t>(it - header.fields.begin());
}

}  // namespace

Corpus load_csv(std::istream& in, const CsvColumns& columns) {
  const auto records = csv::parse(in);
  if (records.empty()) {
    throw DataError("CSV has no header row");
  }
  const auto text_col = column_index(records.front(), columns.text);
  const auto label_col = column_index(records.front(), columns.label);
  if (records.size() == 1) {
    throw DataError("zero data rows");
  }

  auto labels = std::make_shared<LabelTable>();
  Corpus corpus;
  corpus.comments.reserve(records.size() - 1);
  corpus.rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string where =
        "data row " + std::to_string(r) + " (line " + std::to_string(rec.line) + ")";
    if (rec.fields.size() <= std::max(text_col, label_col)) {
      throw DataError(where + ": too few fields");
    }
    const auto& text = rec.fields[text_col];
    const auto& label = rec.fields[label_col];
    if (!utf8::is_valid(text) || !utf8::is_valid(label)) {
      throw DataError(where + ": malformed UTF-8");
    }
    if (label.empty()) {
      throw DataError(where + ": empty label");
    }
    const LabelId id = labels->intern(label);
    labels->count(id);
    corpus.comments.push_back(Comment{text, id});
    corpus.rows.push_back(r - 1);
  }
  if (labels->size() < 2) {
    throw DataError("dataset has fewer than two distinct labels");
  }
  corpus.labels = std::move(labels);
  return corpus;
}

Corpus load_csv(const std::filesystem::path& path, const CsvColumns& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open data file '" + path.string() + "'");
  }
  return load_csv(in, columns);
}

Split split(const Corpus& corpus, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ArgumentError("test_fraction must lie in (0, 1)");
  }
  const std::size_t n = corpus.size();
  if (n == 0) {
    throw ArgumentError("cannot split an empty corpus");
  }
  const auto n_test = static_cast<std::size_t>(std::floor(test_fraction * static_cast<double>(n)));
  if (n_test == 0 || n_test == n) {
    throw ArgumentError("split would leave an empty partition (N=" + std::to_string(n) + ")");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  shuffle(std::span<std::size_t>(order), rng);

  Split out;
  out.train.labels = corpus.labels;
  out.test.labels = corpus.labels;
  for (std::size_t i = 0; i < n; ++i) {
    Corpus& part = i < n_test ? out.test : out.train;
    part.comments.push_back(corpus.comments[order[i]]);
    part.rows.push_back(corpus.rows.empty() ? order[i] : corpus.rows[order[i]]);
  }
  return out;
}

std::uint64_t partition_digest(const Split& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  const auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  };
  mix(s.train.rows.size());
  for (const auto r : s.train.rows) mix(r);
  mix(s.test.rows.size());
  for (const auto r : s.test.rows) mix(r);
  return h;
}

}  // namespace codemix
