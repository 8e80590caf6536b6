// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace flkit {

/// Porter (1980) suffix stripping. Input must be lower-case ASCII letters;
/// words of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

/// Splits an identifier at lower->Upper, acronym->Word ("HTMLParser" ->
/// HTML, Parser) and letter<->digit boundaries. No case folding.
std::vector<std::string> camel_case_split(std::string_view identifier);

class StopwordList {
 public:
  /// Whitespace-separated words; '#' starts a comment. Words are lower-cased.
  static StopwordList parse(std::string_view text);
  static StopwordList load(const std::filesystem::path& path);
  /// English function words plus Java keywords.
  static const StopwordList& builtin();

  bool contains(std::string_view word) const { return words_.find(word) != words_.end(); }
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::set<std::string, std::less<>> words_;
};

/// Text normalization pipeline used on both sides of retrieval:
///   split on non-alphanumerics -> CamelCase split -> case-fold ->
///   drop stopwords -> drop pure numbers and 1-char tokens -> Porter stem.
/// With `is_code`, a compound identifier is also kept whole (case-folded,
/// stemmed) ahead of its parts.
class Tokenizer {
 public:
  Tokenizer() : stopwords_(&StopwordList::builtin()) {}
  explicit Tokenizer(const StopwordList& stopwords) : stopwords_(&stopwords) {}

  std::vector<std::string> tokenize(std::string_view text, bool is_code) const;

  const StopwordList& stopwords() const noexcept { return *stopwords_; }

 private:
  bool keep(std::string_view folded) const;

  const StopwordList* stopwords_;
};

/// tokenize() with the built-in stopword list.
std::vector<std::string> tokenize(std::string_view text, bool is_code);

}  // namespace flkit
