#include "codemix/stopwords.hpp"

namespace codemix {

namespace detail {
extern const std::string_view kStopwordsText;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

StopwordList StopwordList::parse(std::string_view text) {
  StopwordList list;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      constexpr std::string_view kTag = "version ";
      if (const auto pos = line.find(kTag); pos != std::string_view::npos) {
        list.version_ = std::string(trim(line.substr(pos + kTag.size())));
      }
      continue;
    }
    list.words_.emplace(line);
  }
  return list;
}

const StopwordList& english_stopwords() {
  static const StopwordList list = StopwordList::parse(detail::kStopwordsText);
  return list;
}

}  // namespace codemix
