#include "codemix/preprocess.hpp"

#include <algorithm>

#include "codemix/error.hpp"
#include "codemix/porter.hpp"
#include "codemix/stopwords.hpp"
#include "codemix/utf8.hpp"

namespace codemix {

std::string_view to_string(ScriptClass s) {
  switch (s) {
    case ScriptClass::Latin:
      return "latin";
    case ScriptClass::Malayalam:
      return "malayalam";
    case ScriptClass::Other:
      return "other";
  }
  return "other";
}

namespace {

constexpr bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' || cp == '\f';
}

constexpr bool is_zero_width_joiner(char32_t cp) { return cp == 0x200C || cp == 0x200D; }

}  // namespace

std::string clean(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool in_removed_run = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto d = utf8::decode_at(text, pos);
    const char32_t cp = d ? d->code_point : 0xFFFD;
    pos += d ? d->length : 1;
    if (d && is_zero_width_joiner(cp)) {
      continue;
    }
    if (d && (utf8::is_ascii_letter(cp) || utf8::is_malayalam(cp) || is_space(cp))) {
      utf8::append(out, cp);
      in_removed_run = false;
    } else if (!in_removed_run) {
      out.push_back(' ');
      in_removed_run = true;
    }
  }
  return out;
}

std::string lowercase_latin(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const auto space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  };
  while (i < text.size()) {
    while (i < text.size() && space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !space(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

ScriptClass classify_script(std::string_view token) {
  if (token.empty()) {
    throw ArgumentError("classify_script: empty token");
  }
  bool latin = false;
  std::size_t pos = 0;
  while (pos < token.size()) {
    const auto d = utf8::decode_at(token, pos);
    if (!d) {
      ++pos;
      continue;
    }
    if (utf8::is_malayalam(d->code_point)) return ScriptClass::Malayalam;
    latin = latin || utf8::is_ascii_letter(d->code_point);
    pos += d->length;
  }
  return latin ? ScriptClass::Latin : ScriptClass::Other;
}

std::string stem(std::string_view token, ScriptClass script) {
  if (script != ScriptClass::Latin) {
    return std::string(token);
  }
  return porter_stem(token);
}

std::vector<Token> remove_stopwords(std::vector<Token> tokens) {
  const auto& stop = english_stopwords();
  std::erase_if(tokens, [&](const Token& t) {
    return t.script == ScriptClass::Latin && stop.contains(t.text);
  });
  return tokens;
}

TokenizedDocument preprocess_document(std::string_view text, std::size_t source_index) {
  TokenizedDocument doc;
  doc.source_index = source_index;
  for (auto& word : tokenize(lowercase_latin(clean(text)))) {
    const ScriptClass script = classify_script(word);
    auto stemmed = stem(word, script);
    if (!stemmed.empty()) {
      doc.tokens.push_back(Token{std::move(stemmed), script});
    }
  }
  doc.tokens = remove_stopwords(std::move(doc.tokens));
  return doc;
}

std::vector<TokenizedDocument> preprocess_corpus(const Corpus& corpus) {
  std::vector<TokenizedDocument> docs;
  docs.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    docs.push_back(preprocess_document(corpus.comments[i].text, i));
  }
  return docs;
}

}  // namespace codemix
