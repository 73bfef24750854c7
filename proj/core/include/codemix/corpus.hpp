#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace codemix {

using LabelId = std::uint32_t;

struct Comment {
  std::string text;
  LabelId label = 0;
};

/// Dense label table; ids follow first-seen order in the source file.
class LabelTable {
 public:
  LabelTable() = default;

  /// Returns the id of name, appending it when unseen.
  LabelId intern(std::string_view name);
  void count(LabelId id) { ++frequencies_.at(id); }

  std::optional<LabelId> find(std::string_view name) const;
  const std::string& name(LabelId id) const { return names_.at(id); }
  std::size_t frequency(LabelId id) const { return frequencies_.at(id); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::size_t>& frequencies() const { return frequencies_; }

  bool operator==(const LabelTable& other) const {
    return names_ == other.names_ && frequencies_ == other.frequencies_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> frequencies_;
  std::unordered_map<std::string, LabelId> index_;
};

/// Labeled comments plus the label table of the file they came from.
///
/// `rows[i]` is the 0-based data-row index of `comments[i]` in the loaded
/// file, so partitions produced by split() can be compared by row. The label
/// table is shared between a corpus and its partitions and keeps the
/// frequencies of the full file.
struct Corpus {
  std::vector<Comment> comments;
  std::vector<std::size_t> rows;
  std::shared_ptr<const LabelTable> labels;

  std::size_t size() const { return comments.size(); }
  bool empty() const { return comments.empty(); }
  std::size_t num_classes() const { return labels ? labels->size() : 0; }
  std::vector<LabelId> label_ids() const;
};

struct CsvColumns {
  std::string text = "text";
  std::string label = "label";
};

/// Loads a labeled CSV. Throws DataError for a missing file or column, a
/// malformed UTF-8 row (reported by data-row number), an empty label value,
/// zero data rows, or fewer than two distinct labels.
Corpus load_csv(const std::filesystem::path& path, const CsvColumns& columns = {});
Corpus load_csv(std::istream& in, const CsvColumns& columns = {});

struct Split {
  Corpus train;
  Corpus test;
};

/// Seeded shuffle of row positions; the first floor(test_fraction * N)
/// shuffled rows form the test partition, the rest train. No stratification.
Split split(const Corpus& corpus, double test_fraction, std::uint64_t seed);

/// FNV-1a digest over the train and test row-index lists.
std::uint64_t partition_digest(const Split& s);

}  // namespace codemix
