// SPDX-License-Identifier: Apache-2.0
#include "flkit/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "embedded_data.hpp"
#include "flkit/error.hpp"

namespace flkit {
namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::string fold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::vector<std::string> camel_case_split(std::string_view id) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 1; i < id.size(); ++i) {
    const char prev = id[i - 1];
    const char cur = id[i];
    const bool boundary =
        (is_lower(prev) && is_upper(cur)) ||
        (is_upper(prev) && is_upper(cur) && i + 1 < id.size() && is_lower(id[i + 1])) ||
        (is_digit(prev) != is_digit(cur));
    if (boundary) {
      parts.emplace_back(id.substr(start, i - start));
      start = i;
    }
  }
  if (start < id.size()) parts.emplace_back(id.substr(start));
  return parts;
}

StopwordList StopwordList::parse(std::string_view text) {
  StopwordList list;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string w;
    while (words >> w) list.words_.insert(fold(w));
  }
  return list;
}

StopwordList StopwordList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MissingFile, path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const StopwordList& StopwordList::builtin() {
  static const StopwordList list = parse(embedded::stopwords());
  return list;
}

bool Tokenizer::keep(std::string_view folded) const {
  if (folded.size() < 2) return false;
  if (std::all_of(folded.begin(), folded.end(), is_digit)) return false;
  return !stopwords_->contains(folded);
}

std::vector<std::string> Tokenizer::tokenize(std::string_view text, bool is_code) const {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_alnum(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && is_alnum(text[i])) ++i;
    if (start == i) break;
    const std::string_view word = text.substr(start, i - start);

    const auto parts = camel_case_split(word);
    if (is_code && parts.size() > 1) {
      const std::string whole = fold(word);
      if (keep(whole)) out.push_back(porter_stem(whole));
    }
    for (const auto& part : parts) {
      const std::string folded = fold(part);
      if (keep(folded)) out.push_back(porter_stem(folded));
    }
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text, bool is_code) {
  static const Tokenizer tokenizer;
  return tokenizer.tokenize(text, is_code);
}

}  // namespace flkit
