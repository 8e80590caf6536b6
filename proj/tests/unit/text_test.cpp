// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <utility>

#include "flkit/text.hpp"

using Tokens = std::vector<std::string>;

// Reference outputs of NLTK's PorterStemmer in ORIGINAL_ALGORITHM mode.
TEST(Porter, MatchesReferenceStemmer) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"fails", "fail"},         {"parsing", "pars"},           {"parser", "parser"},
      {"caresses", "caress"},    {"ponies", "poni"},            {"ties", "ti"},
      {"cats", "cat"},           {"feed", "feed"},              {"agreed", "agre"},
      {"plastered", "plaster"},  {"bled", "bled"},              {"motoring", "motor"},
      {"sing", "sing"},          {"conflated", "conflat"},      {"troubled", "troubl"},
      {"sized", "size"},         {"hopping", "hop"},            {"tanned", "tan"},
      {"falling", "fall"},       {"hissing", "hiss"},           {"fizzed", "fizz"},
      {"failing", "fail"},       {"filing", "file"},            {"happy", "happi"},
      {"sky", "sky"},            {"relational", "relat"},       {"conditional", "condit"},
      {"rational", "ration"},    {"valenci", "valenc"},         {"hesitanci", "hesit"},
      {"digitizer", "digit"},    {"conformabli", "conform"},    {"radicalli", "radic"},
      {"differentli", "differ"}, {"vileli", "vile"},            {"analogousli", "analog"},
      {"vietnamization", "vietnam"}, {"predication", "predic"}, {"operator", "oper"},
      {"feudalism", "feudal"},   {"decisiveness", "decis"},     {"hopefulness", "hope"},
      {"callousness", "callous"}, {"formaliti", "formal"},      {"sensitiviti", "sensit"},
      {"sensibiliti", "sensibl"}, {"triplicate", "triplic"},    {"formative", "form"},
      {"formalize", "formal"},   {"electriciti", "electr"},     {"electrical", "electr"},
      {"hopeful", "hope"},       {"goodness", "good"},          {"revival", "reviv"},
      {"allowance", "allow"},    {"inference", "infer"},        {"airliner", "airlin"},
      {"gyroscopic", "gyroscop"}, {"adjustable", "adjust"},     {"defensible", "defens"},
      {"irritant", "irrit"},     {"replacement", "replac"},     {"adjustment", "adjust"},
      {"dependent", "depend"},   {"adoption", "adopt"},         {"homologou", "homolog"},
      {"communism", "commun"},   {"activate", "activ"},         {"angulariti", "angular"},
      {"homologous", "homolog"}, {"effective", "effect"},       {"bowdlerize", "bowdler"},
      {"probate", "probat"},     {"rate", "rate"},              {"cease", "ceas"},
      {"controll", "control"},   {"roll", "roll"},              {"generalizations", "gener"},
      {"oscillators", "oscil"},
  };
  for (const auto& [word, stem] : cases) EXPECT_EQ(flkit::porter_stem(word), stem) << word;
}

TEST(Porter, ShortWordsUnchanged) {
  EXPECT_EQ(flkit::porter_stem("is"), "is");
  EXPECT_EQ(flkit::porter_stem("a"), "a");
  EXPECT_EQ(flkit::porter_stem(""), "");
}

TEST(CamelCase, Splits) {
  EXPECT_EQ(flkit::camel_case_split("getFooBar"), (Tokens{"get", "Foo", "Bar"}));
  EXPECT_EQ(flkit::camel_case_split("HTMLParser"), (Tokens{"HTML", "Parser"}));
  EXPECT_EQ(flkit::camel_case_split("utf8Decoder"), (Tokens{"utf", "8", "Decoder"}));
  EXPECT_EQ(flkit::camel_case_split("plain"), (Tokens{"plain"}));
}

TEST(Tokenize, SpecExamples) {
  EXPECT_EQ(flkit::tokenize("getFooBar", true), (Tokens{"getfoobar", "get", "foo", "bar"}));
  EXPECT_TRUE(flkit::tokenize("", true).empty());
  EXPECT_EQ(flkit::tokenize("The parser fails parsing!", false), (Tokens{"parser", "fail", "pars"}));
}

TEST(Tokenize, CompoundKeptOnlyForCode) {
  EXPECT_EQ(flkit::tokenize("getFooBar", false), (Tokens{"get", "foo", "bar"}));
  EXPECT_EQ(flkit::tokenize("parse_depth", true), (Tokens{"pars", "depth"}));
}

TEST(Tokenize, DropsKeywordsNumbersAndSingleLetters) {
  EXPECT_EQ(flkit::tokenize("return x + 42 * count;", true), (Tokens{"count"}));
  EXPECT_EQ(flkit::tokenize("if (null == value) throw new Error();", true), (Tokens{"valu", "error"}));
}

TEST(Stopwords, CustomList) {
  const auto words = flkit::StopwordList::parse("# none\nparser\nFAILS\n");
  EXPECT_TRUE(words.contains("parser"));
  EXPECT_TRUE(words.contains("fails"));
  const flkit::Tokenizer tok(words);
  EXPECT_EQ(tok.tokenize("The parser fails", false), (Tokens{"the"}));
  EXPECT_GE(flkit::StopwordList::builtin().size(), 120u);
}
