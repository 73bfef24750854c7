#pragma once

#include <string>
#include <string_view>
#include <unordered_set>

namespace codemix {

/// A fixed, versioned stopword list.
class StopwordList {
 public:
  /// Parses the data-file format: one token per line, '#' starts a comment
  /// line, a "# ... version <tag>" comment sets the version tag.
  static StopwordList parse(std::string_view text);

  bool contains(std::string_view token) const { return words_.contains(std::string(token)); }
  std::size_t size() const { return words_.size(); }
  const std::string& version() const { return version_; }

 private:
  std::unordered_set<std::string> words_;
  std::string version_ = "unversioned";
};

/// The bundled English list (core/data/stopwords_en.txt, compiled in).
const StopwordList& english_stopwords();

}  // namespace codemix
