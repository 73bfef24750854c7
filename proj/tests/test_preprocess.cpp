#include <gtest/gtest.h>

#include <fstream>

#include "codemix/error.hpp"
#include "codemix/porter.hpp"
#include "codemix/preprocess.hpp"
#include "codemix/stopwords.hpp"
#include "support.hpp"

using namespace codemix;

namespace {

std::vector<std::string> texts(const TokenizedDocument& d) {
  std::vector<std::string> out;
  for (const auto& t : d.tokens) out.push_back(t.text);
  return out;
}

std::vector<Token> latin(std::initializer_list<const char*> words) {
  std::vector<Token> out;
  for (const auto* w : words) out.push_back({w, ScriptClass::Latin});
  return out;
}

}  // namespace

TEST(Clean, KeepsLettersMalayalamAndSpace) {
  EXPECT_EQ(tokenize(clean("Adipoli!!! 👍👍 100%")), std::vector<std::string>{"Adipoli"});
  EXPECT_EQ(clean(""), "");
  EXPECT_EQ(tokenize(clean("😀😀 123 456 🎉")), std::vector<std::string>{});
  EXPECT_EQ(clean("a1b"), "a b");
  EXPECT_EQ(clean("ചേച്ചി, super!"), "ചേച്ചി  super ");
}

TEST(Clean, RemovedRunBecomesOneSpace) {
  EXPECT_EQ(clean("good...food"), "good food");
  EXPECT_EQ(clean("x!?#y"), "x y");
}

TEST(Clean, ZeroWidthJoinersDroppedInsideWords) {
  // ന്‍ (chillu via ZWJ) stays one token.
  const std::string word = "\u0D05\u0D35\u0D28\u0D4D\u200D";
  EXPECT_EQ(tokenize(clean(word + " ok")),
            (std::vector<std::string>{"\u0D05\u0D35\u0D28\u0D4D", "ok"}));
  EXPECT_EQ(tokenize(clean("a\u200Cb")), std::vector<std::string>{"ab"});
}

TEST(Tokenize, Examples) {
  EXPECT_EQ(tokenize("good  food"), (std::vector<std::string>{"good", "food"}));
  EXPECT_EQ(tokenize(""), std::vector<std::string>{});
  EXPECT_EQ(tokenize("ചേച്ചി super"), (std::vector<std::string>{"ചേച്ചി", "super"}));
  EXPECT_EQ(tokenize(" \t a \n b \r\n"), (std::vector<std::string>{"a", "b"}));
}

TEST(ClassifyScript, Examples) {
  EXPECT_EQ(classify_script("super"), ScriptClass::Latin);
  EXPECT_EQ(classify_script("ചേച്ചി"), ScriptClass::Malayalam);
  EXPECT_EQ(classify_script("supergood്"), ScriptClass::Malayalam);
  EXPECT_EQ(classify_script("é"), ScriptClass::Other);
  EXPECT_THROW(classify_script(""), ArgumentError);
}

TEST(Stem, Examples) {
  EXPECT_EQ(stem("cooking", ScriptClass::Latin), "cook");
  EXPECT_EQ(stem("sky", ScriptClass::Latin), "sky");
  EXPECT_EQ(stem("ചേച്ചി", ScriptClass::Malayalam), "ചേച്ചി");
  EXPECT_EQ(stem("cooking", ScriptClass::Other), "cooking");
}

TEST(Porter, ClassicSteps) {
  const std::pair<const char*, const char*> cases[] = {
      {"caresses", "caress"}, {"ponies", "poni"},       {"cats", "cat"},
      {"feed", "feed"},       {"agreed", "agre"},       {"plastered", "plaster"},
      {"motoring", "motor"},  {"hopping", "hop"},       {"filing", "file"},
      {"happy", "happi"},     {"relational", "relat"},  {"generalization", "gener"},
      {"electrical", "electr"}, {"adjustment", "adjust"}, {"controll", "control"},
      {"roll", "roll"},       {"is", "is"},             {"as", "as"},
  };
  for (const auto& [in, out] : cases) EXPECT_EQ(porter_stem(in), out) << in;
}

TEST(Porter, PublishedVocabulary) {
  std::ifstream voc(testing_support::fixture("porter_voc.txt"));
  std::ifstream expected(testing_support::fixture("porter_output.txt"));
  ASSERT_TRUE(voc && expected);
  std::string w;
  std::string e;
  std::size_t n = 0;
  std::size_t agree = 0;
  while (voc >> w && expected >> e) {
    ++n;
    if (porter_stem(w) == e) ++agree;
  }
  EXPECT_EQ(n, 23531u);
  EXPECT_EQ(agree, n);
}

TEST(Stopwords, BundledList) {
  const auto& sw = english_stopwords();
  EXPECT_EQ(sw.size(), 127u);
  EXPECT_EQ(sw.version(), "en-127-v1");
  EXPECT_TRUE(sw.contains("the"));
  EXPECT_TRUE(sw.contains("is"));
  EXPECT_FALSE(sw.contains("food"));
}

TEST(Stopwords, ParseFormat) {
  const auto sw = StopwordList::parse("# list version t-1\nfoo\n\n  bar  \n# baz\n");
  EXPECT_EQ(sw.version(), "t-1");
  EXPECT_EQ(sw.size(), 2u);
  EXPECT_TRUE(sw.contains("bar"));
  EXPECT_FALSE(sw.contains("baz"));
}

TEST(RemoveStopwords, Examples) {
  const auto out = remove_stopwords(latin({"the", "food", "is", "super"}));
  EXPECT_EQ(out, latin({"food", "super"}));
  const std::vector<Token> mal{{"ഒരു", ScriptClass::Malayalam}, {"ആണ്", ScriptClass::Malayalam}};
  EXPECT_EQ(remove_stopwords(mal), mal);
  EXPECT_TRUE(remove_stopwords({}).empty());
}

TEST(PreprocessDocument, Examples) {
  EXPECT_EQ(texts(preprocess_document("Cooking is SUPER!!!")),
            (std::vector<std::string>{"cook", "super"}));
  EXPECT_TRUE(preprocess_document("").tokens.empty());
  EXPECT_TRUE(preprocess_document("123 👍").tokens.empty());
  const auto d = preprocess_document("ചേച്ചി Cooking", 7);
  EXPECT_EQ(d.source_index, 7u);
  ASSERT_EQ(d.tokens.size(), 2u);
  EXPECT_EQ(d.tokens[0].script, ScriptClass::Malayalam);
  EXPECT_EQ(d.tokens[1].text, "cook");
}

TEST(PreprocessDocument, StagewiseComposition) {
  const std::string raw = "Waiting for the NEXT video, ചേച്ചി!! 😍 #cooking";
  std::vector<Token> staged;
  for (const auto& t : tokenize(lowercase_latin(clean(raw)))) {
    const auto s = classify_script(t);
    staged.push_back({stem(t, s), s});
  }
  EXPECT_EQ(preprocess_document(raw).tokens, remove_stopwords(staged));
}
