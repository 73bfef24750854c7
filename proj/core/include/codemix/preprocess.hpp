#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "codemix/corpus.hpp"

namespace codemix {

enum class ScriptClass { Latin, Malayalam, Other };

std::string_view to_string(ScriptClass s);

struct Token {
  std::string text;
  ScriptClass script = ScriptClass::Other;

  bool operator==(const Token&) const = default;
};

/// Term sequence of one comment after the cleaning pipeline.
struct TokenizedDocument {
  std::vector<Token> tokens;
  std::size_t source_index = 0;
};

/// Keeps ASCII letters, Malayalam-block code points (U+0D00-U+0D7F) and
/// whitespace. Every maximal run of other code points (digits, punctuation,
/// symbols, emoji, invalid bytes) becomes a single space. Zero-width
/// joiner and non-joiner are dropped without a space since they sit inside
/// Malayalam words.
std::string clean(std::string_view text);

/// ASCII lowercase; other bytes are untouched.
std::string lowercase_latin(std::string_view text);

/// Splits on runs of ASCII whitespace; never yields an empty token.
std::vector<std::string> tokenize(std::string_view text);

/// Malayalam if any code point is in the Malayalam block, else Latin if any
/// ASCII letter, else Other. Throws ArgumentError on an empty token.
ScriptClass classify_script(std::string_view token);

/// Porter stems Latin tokens; Malayalam and Other tokens pass through.
std::string stem(std::string_view token, ScriptClass script);

/// Drops Latin tokens found in the bundled English list; order preserved.
std::vector<Token> remove_stopwords(std::vector<Token> tokens);

/// remove_stopwords(stem(tokenize(lowercase_latin(clean(text))))).
TokenizedDocument preprocess_document(std::string_view text, std::size_t source_index = 0);

/// Applies preprocess_document to every comment; source_index is the
/// position within the corpus.
std::vector<TokenizedDocument> preprocess_corpus(const Corpus& corpus);

}  // namespace codemix
