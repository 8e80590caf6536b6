// SPDX-License-Identifier: Apache-2.0
#include "flkit/extract.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>

namespace flkit {
namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

enum class Tok { Ident, Keyword, Number, String, Char, Punct };

struct Token {
  Tok type;
  std::string text;
  int line;
  int end_line;
  std::size_t begin;
  std::size_t end;
};

struct Comment {
  std::string text;
  int line;
};

bool is_keyword(std::string_view w) {
  static constexpr std::array<std::string_view, 53> kws{
      "abstract", "assert",     "boolean",   "break",     "byte",      "case",     "catch",
      "char",     "class",      "const",     "continue",  "default",   "do",       "double",
      "else",     "enum",       "extends",   "final",     "finally",   "float",    "for",
      "goto",     "if",         "implements", "import",   "instanceof", "int",     "interface",
      "long",     "native",     "new",       "package",   "private",   "protected", "public",
      "return",   "short",      "static",    "strictfp",  "super",     "switch",   "synchronized",
      "this",     "throw",      "throws",    "transient", "try",       "void",     "volatile",
      "while",    "true",       "false",     "null"};
  return std::find(kws.begin(), kws.end(), w) != kws.end();
}

bool is_primitive(std::string_view w) {
  return w == "boolean" || w == "byte" || w == "char" || w == "short" || w == "int" ||
         w == "long" || w == "float" || w == "double";
}

bool is_modifier(std::string_view w) {
  return w == "public" || w == "protected" || w == "private" || w == "static" || w == "final" ||
         w == "abstract" || w == "native" || w == "synchronized" || w == "transient" ||
         w == "volatile" || w == "strictfp" || w == "default" || w == "sealed";
}

struct Lexed {
  std::vector<Token> tokens;
  std::vector<Comment> comments;
};

Lexed lex(std::string_view src) {
  static constexpr std::array<std::string_view, 20> multi{
      "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=",
      "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=", "<<"};
  Lexed out;
  int line = 1;
  std::size_t i = 0;
  const auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '$' ||
           static_cast<unsigned char>(c) >= 0x80;
  };
  const auto advance_to = [&](std::size_t j) {
    for (std::size_t k = i; k < j && k < src.size(); ++k) {
      if (src[k] == '\n') ++line;
    }
    i = std::min(j, src.size());
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    const int start_line = line;
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      const std::size_t eol = src.find('\n', i);
      advance_to(eol == std::string_view::npos ? src.size() : eol);
      out.comments.push_back({std::string(src.substr(start + 2, i - start - 2)), start_line});
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      const std::size_t close = src.find("*/", i + 2);
      const std::size_t stop = close == std::string_view::npos ? src.size() : close + 2;
      advance_to(stop);
      const std::size_t body_end = close == std::string_view::npos ? src.size() : close;
      out.comments.push_back({std::string(src.substr(start + 2, body_end - start - 2)), start_line});
      continue;
    }
    Token tok{Tok::Punct, {}, start_line, start_line, start, start};
    if (ident_char(c) && std::isdigit(static_cast<unsigned char>(c)) == 0) {
      while (i < src.size() && ident_char(src[i])) ++i;
      tok.text = std::string(src.substr(start, i - start));
      tok.type = is_keyword(tok.text) ? Tok::Keyword : Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(c)) != 0 ||
               (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])) != 0)) {
      ++i;
      while (i < src.size()) {
        const char d = src[i];
        if ((d == '+' || d == '-') && (src[i - 1] == 'e' || src[i - 1] == 'E' || src[i - 1] == 'p' ||
                                       src[i - 1] == 'P')) {
          ++i;
        } else if (std::isalnum(static_cast<unsigned char>(d)) != 0 || d == '_' || d == '.') {
          ++i;
        } else {
          break;
        }
      }
      tok.type = Tok::Number;
      tok.text = std::string(src.substr(start, i - start));
    } else if (c == '"') {
      if (src.substr(i, 3) == "\"\"\"") {
        const std::size_t close = src.find("\"\"\"", i + 3);
        advance_to(close == std::string_view::npos ? src.size() : close + 3);
      } else {
        ++i;
        while (i < src.size() && src[i] != '"' && src[i] != '\n') i += (src[i] == '\\') ? 2 : 1;
        if (i < src.size() && src[i] == '"') ++i;
      }
      tok.type = Tok::String;
      tok.text = std::string(src.substr(start, std::min(i, src.size()) - start));
    } else if (c == '\'') {
      ++i;
      while (i < src.size() && src[i] != '\'' && src[i] != '\n') i += (src[i] == '\\') ? 2 : 1;
      if (i < src.size() && src[i] == '\'') ++i;
      tok.type = Tok::Char;
      tok.text = std::string(src.substr(start, std::min(i, src.size()) - start));
    } else {
      std::size_t len = 1;
      for (const auto m : multi) {
        if (src.substr(i, m.size()) == m) {
          len = m.size();
          break;
        }
      }
      i += len;
      tok.text = std::string(src.substr(start, len));
    }
    i = std::min(i, src.size());
    tok.end = i;
    tok.end_line = line;
    out.tokens.push_back(std::move(tok));
  }
  return out;
}

enum class Role : unsigned char { None, ClassName, MethodName };

struct Rec {
  std::string kind;
  std::size_t first;
  std::size_t last;
  std::vector<std::size_t> children;
};

// Bracket matching and token-level helpers shared by the parser and the
// expression classifier.
class TokenView {
 public:
  explicit TokenView(const std::vector<Token>& tokens) : t_(tokens), match_(tokens.size(), npos) {
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (t_[i].type != Tok::Punct) continue;
      const std::string& s = t_[i].text;
      if (s == "(" || s == "[" || s == "{") {
        stack.push_back(i);
      } else if (s == ")" || s == "]" || s == "}") {
        const char open = s == ")" ? '(' : s == "]" ? '[' : '{';
        // Pop unmatched openers of other kinds so one stray bracket does not
        // poison the rest of the file.
        while (!stack.empty() && t_[stack.back()].text[0] != open) stack.pop_back();
        if (!stack.empty()) {
          match_[stack.back()] = i;
          match_[i] = stack.back();
          stack.pop_back();
        }
      }
    }
  }

  std::size_t size() const { return t_.size(); }
  const Token& operator[](std::size_t i) const { return t_[i]; }

  bool punct(std::size_t i, std::string_view p) const {
    return i < t_.size() && t_[i].type == Tok::Punct && t_[i].text == p;
  }
  bool keyword(std::size_t i, std::string_view k) const {
    return i < t_.size() && t_[i].type == Tok::Keyword && t_[i].text == k;
  }
  bool ident(std::size_t i) const { return i < t_.size() && t_[i].type == Tok::Ident; }
  bool ident(std::size_t i, std::string_view w) const { return ident(i) && t_[i].text == w; }
  bool adjacent(std::size_t a, std::size_t b) const { return t_[a].end == t_[b].begin; }

  std::size_t match(std::size_t i) const { return i < t_.size() ? match_[i] : npos; }

  bool opener(std::size_t i) const { return punct(i, "(") || punct(i, "[") || punct(i, "{"); }

  // At '<': index after the matching '>' when the bracketed tokens can only
  // be type arguments; npos otherwise (then '<' is a comparison).
  std::size_t skip_generic(std::size_t i, std::size_t limit) const {
    if (!punct(i, "<")) return npos;
    int depth = 0;
    for (std::size_t j = i; j < limit; ++j) {
      const Token& tk = t_[j];
      if (tk.type == Tok::Punct) {
        if (tk.text == "<") {
          ++depth;
        } else if (tk.text == ">") {
          if (--depth == 0) return j + 1;
        } else if (tk.text == "[" || tk.text == "]" || tk.text == "." || tk.text == "," ||
                   tk.text == "?" || tk.text == "&" || tk.text == "@") {
          // type syntax
        } else {
          return npos;
        }
      } else if (tk.type == Tok::Ident) {
        // type name
      } else if (tk.type == Tok::Keyword &&
                 (is_primitive(tk.text) || tk.text == "extends" || tk.text == "super")) {
        // bounded wildcard / primitive array
      } else {
        return npos;
      }
    }
    return npos;
  }

  // Index after a type starting at i (annotations, qualified name, type
  // arguments, array dims, varargs); npos when there is no type at i.
  std::size_t skip_type(std::size_t i, std::size_t limit) const {
    while (punct(i, "@") && ident(i + 1)) i = skip_annotation(i, limit);
    if (i >= limit) return npos;
    if (t_[i].type == Tok::Keyword && (is_primitive(t_[i].text) || t_[i].text == "void")) {
      ++i;
    } else if (ident(i)) {
      ++i;
      while (true) {
        if (punct(i, "<")) {
          const std::size_t g = skip_generic(i, limit);
          if (g == npos) return npos;
          i = g;
        }
        if (punct(i, ".") && ident(i + 1)) {
          i += 2;
          continue;
        }
        break;
      }
    } else {
      return npos;
    }
    while (punct(i, "[") && punct(i + 1, "]")) i += 2;
    if (punct(i, "...")) ++i;
    return i <= limit ? i : npos;
  }

  std::size_t skip_annotation(std::size_t i, std::size_t limit) const {
    ++i;  // '@'
    if (ident(i)) ++i;
    while (punct(i, ".") && ident(i + 1)) i += 2;
    if (punct(i, "(") && match(i) != npos && match(i) < limit) i = match(i) + 1;
    return i;
  }

  // Next index in [i, limit) at bracket depth 0 whose token is one of `stops`;
  // type-argument lists are skipped when `generic_aware`.
  std::size_t find_depth0(std::size_t i, std::size_t limit, std::initializer_list<std::string_view> stops,
                          bool generic_aware) const {
    while (i < limit) {
      const Token& tk = t_[i];
      if (tk.type == Tok::Punct) {
        for (const auto s : stops) {
          if (tk.text == s) return i;
        }
        if (opener(i)) {
          const std::size_t m = match(i);
          if (m == npos || m >= limit) return limit;
          i = m + 1;
          continue;
        }
        if (generic_aware && tk.text == "<") {
          const std::size_t g = skip_generic(i, limit);
          if (g != npos) {
            i = g;
            continue;
          }
        }
      }
      ++i;
    }
    return limit;
  }

 private:
  const std::vector<Token>& t_;
  std::vector<std::size_t> match_;
};

// ---------------------------------------------------------------------------
// Expression classification

bool operand_end(const Token& tk) {
  switch (tk.type) {
    case Tok::Ident:
    case Tok::Number:
    case Tok::String:
    case Tok::Char:
      return true;
    case Tok::Keyword:
      return tk.text == "this" || tk.text == "true" || tk.text == "false" || tk.text == "null" ||
             tk.text == "class" || tk.text == "super";
    case Tok::Punct:
      return tk.text == ")" || tk.text == "]" || tk.text == "++" || tk.text == "--" || tk.text == "}";
  }
  return false;
}

std::string classify_chain(const TokenView& t, std::size_t a, std::size_t b);

std::string classify_range(const TokenView& t, std::size_t a, std::size_t b) {
  if (a >= b) return {};
  bool arrow = false, assign = false, question = false, infix = false, instanceof = false;
  for (std::size_t i = a; i < b;) {
    const Token& tk = t[i];
    if (tk.type == Tok::Punct) {
      if (t.opener(i)) {
        const std::size_t m = t.match(i);
        if (m == npos || m >= b) return {};
        i = m + 1;
        continue;
      }
      const std::string& s = tk.text;
      if (s == "<" && i > a && (t.ident(i - 1) || t.punct(i - 1, "."))) {
        const std::size_t g = t.skip_generic(i, b);
        if (g != npos) {
          i = g;
          continue;
        }
      }
      if (s == "->") {
        arrow = true;
      } else if (s == "=") {
        // '>' '=' and '>' '>' '=' are lexed apart; re-join them here.
        if (i > a && t.punct(i - 1, ">") && t.adjacent(i - 1, i)) {
          if (i - 1 > a && t.punct(i - 2, ">") && t.adjacent(i - 2, i - 1)) {
            assign = true;
          } else {
            infix = true;
          }
        } else {
          assign = true;
        }
      } else if (s == "+=" || s == "-=" || s == "*=" || s == "/=" || s == "%=" || s == "&=" ||
                 s == "|=" || s == "^=" || s == "<<=") {
        assign = true;
      } else if (s == "?") {
        question = true;
      } else if (s == "||" || s == "&&" || s == "|" || s == "^" || s == "&" || s == "==" ||
                 s == "!=" || s == "<" || s == "<=" || s == "<<" || s == "*" || s == "/" || s == "%") {
        infix = true;
      } else if (s == ">") {
        const bool part_of_assign = t.punct(i + 1, "=") && t.adjacent(i, i + 1);
        const bool part_of_shift_assign =
            t.punct(i + 1, ">") && t.adjacent(i, i + 1) && t.punct(i + 2, "=") && t.adjacent(i + 1, i + 2);
        const bool second_of_shift_assign =
            i > a && t.punct(i - 1, ">") && t.adjacent(i - 1, i) && t.punct(i + 1, "=") && t.adjacent(i, i + 1);
        if (!part_of_assign && !part_of_shift_assign && !second_of_shift_assign) infix = true;
      } else if ((s == "+" || s == "-") && i > a && operand_end(t[i - 1])) {
        infix = true;
      }
    } else if (tk.type == Tok::Keyword && tk.text == "instanceof") {
      instanceof = true;
    }
    ++i;
  }
  if (arrow) return "LambdaExpression";
  if (assign) return "Assignment";
  if (question) return "ConditionalExpression";
  if (infix) return "InfixExpression";
  if (instanceof) return "InstanceofExpression";

  const Token& first = t[a];
  if (first.type == Tok::Punct &&
      (first.text == "!" || first.text == "~" || first.text == "-" || first.text == "+" ||
       first.text == "++" || first.text == "--")) {
    return "PrefixExpression";
  }
  if (b - a >= 2 && (t.punct(b - 1, "++") || t.punct(b - 1, "--"))) return "PostfixExpression";

  if (t.punct(a, "(")) {
    const std::size_t m = t.match(a);
    if (m == b - 1) return "ParenthesizedExpression";
    if (m != npos && t.skip_type(a + 1, m) == m && m + 1 < b &&
        (operand_end(t[m + 1]) || t.punct(m + 1, "(") || t.keyword(m + 1, "new") ||
         t.punct(m + 1, "!") || t.punct(m + 1, "~"))) {
      return "CastExpression";
    }
  }
  if (t.punct(a, "{") && t.match(a) == b - 1) return "ArrayInitializer";
  if (t.keyword(a, "switch")) return "SwitchExpression";
  return classify_chain(t, a, b);
}

// Primary followed by selectors; the last selector decides the kind.
std::string classify_chain(const TokenView& t, std::size_t a, std::size_t b) {
  std::string kind;
  std::size_t i = a;
  bool only_names = false;
  bool super_base = false;
  bool this_base = false;
  bool generic_type = false;
  std::size_t selectors = 0;

  const Token& first = t[a];
  if (first.type == Tok::Ident) {
    kind = "SimpleName";
    only_names = true;
    ++i;
  } else if (first.type == Tok::Number) {
    kind = "NumberLiteral";
    ++i;
  } else if (first.type == Tok::String) {
    kind = "StringLiteral";
    ++i;
  } else if (first.type == Tok::Char) {
    kind = "CharacterLiteral";
    ++i;
  } else if (t.keyword(a, "true") || t.keyword(a, "false")) {
    kind = "BooleanLiteral";
    ++i;
  } else if (t.keyword(a, "null")) {
    kind = "NullLiteral";
    ++i;
  } else if (t.keyword(a, "this")) {
    kind = "ThisExpression";
    this_base = true;
    ++i;
  } else if (t.keyword(a, "super")) {
    kind = "";
    super_base = true;
    ++i;
  } else if (t.punct(a, "(")) {
    const std::size_t m = t.match(a);
    if (m == npos || m >= b) return {};
    kind = "ParenthesizedExpression";
    i = m + 1;
  } else if (t.keyword(a, "new")) {
    std::size_t j = a + 1;
    while (t.punct(j, "@") && t.ident(j + 1)) j = t.skip_annotation(j, b);
    if (j < b && (t.ident(j) || (t[j].type == Tok::Keyword && is_primitive(t[j].text)))) ++j;
    while (true) {
      if (t.punct(j, "<")) {
        const std::size_t g = t.skip_generic(j, b);
        if (g == npos) break;
        j = g;
      }
      if (t.punct(j, ".") && t.ident(j + 1)) {
        j += 2;
        continue;
      }
      break;
    }
    if (t.punct(j, "[")) {
      while (t.punct(j, "[") && t.match(j) != npos && t.match(j) < b) j = t.match(j) + 1;
      if (t.punct(j, "{") && t.match(j) != npos && t.match(j) < b) j = t.match(j) + 1;
      kind = "ArrayCreation";
    } else if (t.punct(j, "(") && t.match(j) != npos && t.match(j) < b) {
      j = t.match(j) + 1;
      if (t.punct(j, "{") && t.match(j) != npos && t.match(j) < b) j = t.match(j) + 1;
      kind = "ClassInstanceCreation";
    } else {
      return {};
    }
    i = j;
  } else if (first.type == Tok::Keyword && (is_primitive(first.text) || first.text == "void")) {
    std::size_t j = a + 1;
    while (t.punct(j, "[") && t.punct(j + 1, "]")) j += 2;
    if (t.punct(j, ".") && t.keyword(j + 1, "class") && j + 2 == b) return "TypeLiteral";
    return {};
  } else {
    return {};
  }

  while (i < b) {
    if (t.punct(i, ".")) {
      if (t.keyword(i + 1, "class")) {
        kind = "TypeLiteral";
        i += 2;
      } else if (t.keyword(i + 1, "new")) {
        const std::string inner = classify_chain(t, i + 1, b);
        return inner.empty() ? std::string{} : inner;
      } else {
        std::size_t j = i + 1;
        if (t.punct(j, "<")) {
          const std::size_t g = t.skip_generic(j, b);
          if (g == npos) return {};
          j = g;
        }
        if (!t.ident(j)) return {};
        if (t.punct(j + 1, "(")) {
          const std::size_t m = t.match(j + 1);
          if (m == npos || m >= b) return {};
          kind = (super_base && selectors == 0) ? "SuperMethodInvocation" : "MethodInvocation";
          only_names = false;
          i = m + 1;
        } else {
          if (only_names) {
            kind = "QualifiedName";
          } else if (super_base && selectors == 0) {
            kind = "SuperFieldAccess";
          } else {
            kind = "FieldAccess";
          }
          i = j + 1;
        }
      }
      ++selectors;
      this_base = false;
    } else if (t.punct(i, "[")) {
      const std::size_t m = t.match(i);
      if (m == npos || m >= b) return {};
      kind = "ArrayAccess";
      only_names = false;
      i = m + 1;
      ++selectors;
    } else if (t.punct(i, "::")) {
      if (t.keyword(i + 1, "new")) {
        kind = "CreationReference";
      } else if (super_base && selectors == 0) {
        kind = "SuperMethodReference";
      } else if (generic_type) {
        kind = "TypeMethodReference";
      } else {
        kind = "ExpressionMethodReference";
      }
      i += 2;
      only_names = false;
      ++selectors;
    } else if (t.punct(i, "(") && i > a && t.ident(i - 1) && selectors == 0 && kind == "SimpleName") {
      const std::size_t m = t.match(i);
      if (m == npos || m >= b) return {};
      kind = "MethodInvocation";
      only_names = false;
      i = m + 1;
      ++selectors;
    } else if (t.punct(i, "<") && only_names) {
      const std::size_t g = t.skip_generic(i, b);
      if (g == npos) return {};
      generic_type = true;
      i = g;
    } else {
      return {};
    }
  }
  (void)this_base;
  return kind;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(const TokenView& t, std::vector<ExtractionDiagnostic>& diags)
      : t_(t), n_(t.size()), roles_(t.size(), Role::None), diags_(diags) {}

  void parse_unit() {
    while (pos_ < n_) {
      const std::size_t before = pos_;
      if (t_.keyword(pos_, "package") || t_.keyword(pos_, "import")) {
        pos_ = t_.find_depth0(pos_, n_, {";"}, false) + 1;
      } else if (t_.punct(pos_, ";")) {
        ++pos_;
      } else if (type_decl_ahead(pos_, true)) {
        type_decl();
      } else {
        diag(pos_, "unsupported top-level syntax");
        skip_member();
      }
      if (pos_ == before) ++pos_;
    }
  }

  std::vector<Rec> recs;
  const std::vector<Role>& roles() const { return roles_; }

 private:
  std::size_t open(std::string kind, std::size_t first) {
    const std::size_t idx = recs.size();
    recs.push_back({std::move(kind), first, first, {}});
    if (!stack_.empty()) recs[stack_.back()].children.push_back(idx);
    stack_.push_back(idx);
    return idx;
  }

  void close(std::size_t idx, std::size_t last) {
    recs[idx].last = std::max(recs[idx].first, std::min(last, n_ - 1));
    while (!stack_.empty()) {
      const std::size_t top = stack_.back();
      stack_.pop_back();
      if (top == idx) break;
    }
  }

  void diag(std::size_t i, std::string message) {
    diags_.push_back({i < n_ ? t_[i].line : (n_ > 0 ? t_[n_ - 1].end_line : 0), std::move(message)});
  }

  // Skips one unrecognized member: through the next ';' or balanced block.
  void skip_member() {
    std::size_t i = pos_;
    while (i < n_) {
      if (t_.punct(i, ";")) {
        pos_ = i + 1;
        return;
      }
      if (t_.punct(i, "}")) {
        pos_ = std::max(i, pos_ + 1);
        return;
      }
      if (t_.opener(i)) {
        const std::size_t m = t_.match(i);
        if (m == npos) {
          pos_ = n_;
          return;
        }
        if (t_.punct(i, "{")) {
          pos_ = m + 1;
          return;
        }
        i = m + 1;
        continue;
      }
      ++i;
    }
    pos_ = n_;
  }

  bool type_keyword_at(std::size_t i) const {
    if (t_.keyword(i, "class") || t_.keyword(i, "interface") || t_.keyword(i, "enum")) return true;
    if (t_.punct(i, "@") && t_.keyword(i + 1, "interface")) return true;
    return t_.ident(i, "record") && t_.ident(i + 1) && (t_.punct(i + 2, "(") || t_.punct(i + 2, "<"));
  }

  bool type_decl_ahead(std::size_t i, bool allow_all_modifiers) const {
    while (i < n_) {
      if (t_.punct(i, "@") && t_.ident(i + 1)) {
        i = t_.skip_annotation(i, n_);
      } else if (t_[i].type == Tok::Keyword && is_modifier(t_[i].text) &&
                 (allow_all_modifiers || t_[i].text == "final" || t_[i].text == "abstract" ||
                  t_[i].text == "static" || t_[i].text == "strictfp")) {
        ++i;
      } else if (t_.ident(i, "sealed") || t_.ident(i, "non")) {
        i += t_.ident(i, "non") ? 3 : 1;  // non-sealed
      } else {
        break;
      }
    }
    return type_keyword_at(i);
  }

  void annotation() {
    const std::size_t r = open("Annotation", pos_);
    const std::size_t end = t_.skip_annotation(pos_, n_);
    if (t_.punct(end - 1, ")")) scan_expr(t_.match(end - 1) + 1, end - 1);
    pos_ = end;
    close(r, end - 1);
  }

  void modifiers(bool class_body) {
    while (pos_ < n_) {
      if (t_.punct(pos_, "@") && t_.ident(pos_ + 1)) {
        annotation();
      } else if (t_[pos_].type == Tok::Keyword && is_modifier(t_[pos_].text) &&
                 (class_body || t_[pos_].text != "default") &&
                 !(t_[pos_].text == "synchronized" && t_.punct(pos_ + 1, "("))) {
        ++pos_;
      } else if (t_.ident(pos_, "sealed")) {
        ++pos_;
      } else if (t_.ident(pos_, "non") && t_.punct(pos_ + 1, "-") && t_.ident(pos_ + 2, "sealed")) {
        pos_ += 3;
      } else {
        break;
      }
    }
  }

  void type_decl() {
    modifiers(true);
    bool is_enum = false;
    bool is_record = false;
    if (t_.punct(pos_, "@")) {
      pos_ += 2;  // @interface
    } else {
      is_enum = t_.keyword(pos_, "enum");
      is_record = t_.ident(pos_, "record");
      ++pos_;
    }
    if (t_.ident(pos_)) roles_[pos_++] = Role::ClassName;
    if (t_.punct(pos_, "<")) {
      const std::size_t g = t_.skip_generic(pos_, n_);
      if (g != npos) pos_ = g;
    }
    if (is_record && t_.punct(pos_, "(")) {
      const std::size_t m = t_.match(pos_);
      if (m == npos) {
        pos_ = n_;
        return;
      }
      params(pos_ + 1, m);
      pos_ = m + 1;
    }
    const std::size_t body = t_.find_depth0(pos_, n_, {"{", ";"}, true);
    if (body >= n_ || !t_.punct(body, "{")) {
      diag(pos_, "type declaration without body");
      pos_ = std::min(body + 1, n_);
      return;
    }
    pos_ = body;
    class_body(is_enum);
  }

  void class_body(bool is_enum) {
    if (!t_.punct(pos_, "{")) {
      diag(pos_, "expected class body");
      return;
    }
    const std::size_t close_brace = t_.match(pos_);
    const std::size_t limit = close_brace == npos ? n_ : close_brace;
    ++pos_;
    if (is_enum) enum_constants(limit);
    while (pos_ < limit) {
      const std::size_t before = pos_;
      member(limit);
      if (pos_ == before) ++pos_;
    }
    pos_ = std::min(limit + 1, n_);
  }

  void enum_constants(std::size_t limit) {
    while (pos_ < limit) {
      modifiers(false);
      if (!t_.ident(pos_)) break;
      ++pos_;
      if (t_.punct(pos_, "(")) {
        const std::size_t m = t_.match(pos_);
        if (m == npos || m > limit) break;
        scan_expr(pos_ + 1, m);
        pos_ = m + 1;
      }
      if (t_.punct(pos_, "{")) {
        const std::size_t r = open("AnonymousClassDeclaration", pos_);
        class_body(false);
        close(r, pos_ - 1);
      }
      if (t_.punct(pos_, ",")) {
        ++pos_;
        continue;
      }
      break;
    }
    if (t_.punct(pos_, ";")) ++pos_;
  }

  void member(std::size_t limit) {
    if (t_.punct(pos_, ";")) {
      ++pos_;
      return;
    }
    if (t_.punct(pos_, "{")) {
      block_body();
      return;
    }
    if (t_.keyword(pos_, "static") && t_.punct(pos_ + 1, "{")) {
      ++pos_;
      block_body();
      return;
    }
    if (type_decl_ahead(pos_, true)) {
      type_decl();
      return;
    }
    modifiers(true);
    if (t_.punct(pos_, "<")) {
      const std::size_t g = t_.skip_generic(pos_, limit);
      if (g == npos) {
        diag(pos_, "unsupported type parameters");
        skip_member();
        return;
      }
      pos_ = g;
      while (t_.punct(pos_, "@") && t_.ident(pos_ + 1)) annotation();
    }
    if (t_.ident(pos_) && t_.punct(pos_ + 1, "(")) {
      roles_[pos_++] = Role::MethodName;
      method_rest(limit);
      return;
    }
    const std::size_t after_type = t_.skip_type(pos_, limit);
    if (after_type != npos && t_.ident(after_type)) {
      if (t_.punct(after_type + 1, "(")) {
        roles_[after_type] = Role::MethodName;
        pos_ = after_type + 1;
        method_rest(limit);
      } else {
        pos_ = after_type;
        field_declarators(limit);
      }
      return;
    }
    diag(pos_, "unsupported member declaration");
    skip_member();
  }

  void method_rest(std::size_t limit) {
    const std::size_t m = t_.match(pos_);
    if (m == npos || m > limit) {
      diag(pos_, "unterminated parameter list");
      pos_ = limit;
      return;
    }
    params(pos_ + 1, m);
    pos_ = m + 1;
    const std::size_t body = t_.find_depth0(pos_, limit, {"{", ";"}, true);
    pos_ = body;
    if (t_.punct(pos_, "{")) {
      block_body();
    } else if (pos_ < limit) {
      ++pos_;
    }
  }

  void params(std::size_t a, std::size_t b) {
    std::size_t start = a;
    while (start < b) {
      const std::size_t comma = t_.find_depth0(start, b, {","}, true);
      if (comma > start) {
        const std::size_t r = open("SingleVariableDeclaration", start);
        scan_expr(start, comma);
        close(r, comma - 1);
      }
      start = comma + 1;
    }
  }

  void field_declarators(std::size_t limit) {
    while (pos_ < limit && t_.ident(pos_)) {
      ++pos_;
      while (t_.punct(pos_, "[") && t_.punct(pos_ + 1, "]")) pos_ += 2;
      if (t_.punct(pos_, "=")) {
        const std::size_t init = pos_ + 1;
        const std::size_t end = t_.find_depth0(init, limit, {",", ";"}, true);
        const std::string kind = classify_range(t_, init, end);
        if (!kind.empty() && end > init) {
          const std::size_t r = open(kind, init);
          scan_expr(init, end);
          close(r, end - 1);
        } else {
          scan_expr(init, end);
        }
        pos_ = end;
      }
      if (t_.punct(pos_, ",")) {
        ++pos_;
        continue;
      }
      if (t_.punct(pos_, ";")) ++pos_;
      return;
    }
    diag(pos_, "unsupported field declaration");
    skip_member();
  }

  // '{' statements '}' without a record of its own.
  void block_body() {
    if (!t_.punct(pos_, "{")) {
      diag(pos_, "expected block");
      statement();
      return;
    }
    const std::size_t close_brace = t_.match(pos_);
    const std::size_t limit = close_brace == npos ? n_ : close_brace;
    ++pos_;
    while (pos_ < limit) {
      const std::size_t before = pos_;
      statement_bounded(limit);
      if (pos_ == before) ++pos_;
    }
    pos_ = std::min(limit + 1, n_);
  }

  void body() {
    if (t_.punct(pos_, "{")) {
      block_body();
    } else {
      statement();
    }
  }

  void statement() { statement_bounded(n_); }

  // Statement ending at ';' (depth 0) before `limit`.
  void leaf(const char* kind, std::size_t limit, std::size_t scan_from) {
    const std::size_t r = open(kind, pos_);
    std::size_t end = t_.find_depth0(pos_, limit, {";"}, false);
    if (end >= limit) {
      diag(pos_, std::string("missing ';' after ") + kind);
      end = limit;
      scan_expr(scan_from, end);
      close(r, end - 1);
      pos_ = end;
      return;
    }
    scan_expr(scan_from, end);
    close(r, end);
    pos_ = end + 1;
  }

  bool local_declaration_ahead(std::size_t i, std::size_t limit) const {
    bool modifier = false;
    while (i < limit) {
      if (t_.punct(i, "@") && t_.ident(i + 1)) {
        i = t_.skip_annotation(i, limit);
        modifier = true;
      } else if (t_.keyword(i, "final")) {
        ++i;
        modifier = true;
      } else {
        break;
      }
    }
    if (modifier) return true;
    if (i < limit && t_[i].type == Tok::Keyword && is_primitive(t_[i].text)) return true;
    if (!t_.ident(i)) return false;
    const std::size_t after = t_.skip_type(i, limit);
    if (after == npos || !t_.ident(after)) return false;
    const std::size_t next = after + 1;
    return t_.punct(next, "=") || t_.punct(next, ";") || t_.punct(next, ",") || t_.punct(next, "[") ||
           t_.punct(next, ":");
  }

  void statement_bounded(std::size_t limit) {
    if (pos_ >= limit) return;
    const Token& tk = t_[pos_];

    if (t_.punct(pos_, "{")) {
      const std::size_t r = open("Block", pos_);
      block_body();
      close(r, pos_ - 1);
      return;
    }
    if (t_.punct(pos_, ";")) {
      const std::size_t r = open("EmptyStatement", pos_);
      close(r, pos_);
      ++pos_;
      return;
    }
    if (tk.type == Tok::Keyword) {
      const std::string& k = tk.text;
      if (k == "if") {
        const std::size_t r = open("IfStatement", pos_);
        ++pos_;
        if (!condition()) return close(r, pos_ - 1);
        body();
        if (t_.keyword(pos_, "else")) {
          ++pos_;
          body();
        }
        return close(r, pos_ - 1);
      }
      if (k == "while") {
        const std::size_t r = open("WhileStatement", pos_);
        ++pos_;
        if (!condition()) return close(r, pos_ - 1);
        body();
        return close(r, pos_ - 1);
      }
      if (k == "for") return for_statement();
      if (k == "do") {
        const std::size_t r = open("DoStatement", pos_);
        ++pos_;
        body();
        if (t_.keyword(pos_, "while")) {
          ++pos_;
          condition();
        }
        if (t_.punct(pos_, ";")) ++pos_;
        return close(r, pos_ - 1);
      }
      if (k == "try") return try_statement();
      if (k == "switch") {
        const std::size_t r = open("SwitchStatement", pos_);
        switch_rest();
        return close(r, pos_ - 1);
      }
      if (k == "synchronized" && t_.punct(pos_ + 1, "(")) {
        const std::size_t r = open("SynchronizedStatement", pos_);
        ++pos_;
        if (!condition()) return close(r, pos_ - 1);
        block_body();
        return close(r, pos_ - 1);
      }
      if (k == "return") return leaf("ReturnStatement", limit, pos_ + 1);
      if (k == "throw") return leaf("ThrowStatement", limit, pos_ + 1);
      if (k == "break") return leaf("BreakStatement", limit, pos_ + 1);
      if (k == "continue") return leaf("ContinueStatement", limit, pos_ + 1);
      if (k == "assert") return leaf("AssertStatement", limit, pos_ + 1);
      if ((k == "this" || k == "super") && t_.punct(pos_ + 1, "(")) {
        const std::size_t m = t_.match(pos_ + 1);
        if (m != npos && t_.punct(m + 1, ";")) {
          return leaf(k == "this" ? "ConstructorInvocation" : "SuperConstructorInvocation", limit, pos_ + 1);
        }
      }
    }
    if (t_.ident(pos_) && t_.punct(pos_ + 1, ":")) {
      const std::size_t r = open("LabeledStatement", pos_);
      pos_ += 2;
      statement_bounded(limit);
      return close(r, pos_ - 1);
    }
    if (type_decl_ahead(pos_, false)) {
      const std::size_t r = open("TypeDeclarationStatement", pos_);
      type_decl();
      return close(r, pos_ - 1);
    }
    if (t_.ident(pos_, "yield") && !t_.punct(pos_ + 1, "=") && !t_.punct(pos_ + 1, "(") &&
        !t_.punct(pos_ + 1, ".")) {
      return leaf("ExpressionStatement", limit, pos_ + 1);
    }
    if (local_declaration_ahead(pos_, limit)) return leaf("VariableDeclarationStatement", limit, pos_);
    if (t_.punct(pos_, "}")) {
      diag(pos_, "unexpected '}'");
      ++pos_;
      return;
    }
    leaf("ExpressionStatement", limit, pos_);
  }

  // '(' expr ')' at pos_; false when malformed.
  bool condition() {
    if (!t_.punct(pos_, "(")) {
      diag(pos_, "expected '('");
      return false;
    }
    const std::size_t m = t_.match(pos_);
    if (m == npos) {
      diag(pos_, "unterminated '('");
      pos_ = n_;
      return false;
    }
    scan_expr(pos_ + 1, m);
    pos_ = m + 1;
    return true;
  }

  void for_statement() {
    std::size_t r = npos;
    const std::size_t start = pos_;
    ++pos_;
    if (!t_.punct(pos_, "(") || t_.match(pos_) == npos) {
      r = open("ForStatement", start);
      diag(pos_, "malformed for header");
      return close(r, pos_ - 1);
    }
    const std::size_t m = t_.match(pos_);
    const std::size_t colon = t_.find_depth0(pos_ + 1, m, {":", ";"}, true);
    if (colon < m && t_.punct(colon, ":")) {
      r = open("EnhancedForStatement", start);
      const std::size_t v = open("SingleVariableDeclaration", pos_ + 1);
      scan_expr(pos_ + 1, colon);
      close(v, colon - 1);
      scan_expr(colon + 1, m);
    } else {
      r = open("ForStatement", start);
      scan_expr(pos_ + 1, m);
    }
    pos_ = m + 1;
    body();
    close(r, pos_ - 1);
  }

  void try_statement() {
    const std::size_t r = open("TryStatement", pos_);
    ++pos_;
    if (t_.punct(pos_, "(")) {
      if (!condition()) return close(r, pos_ - 1);
    }
    block_body();
    while (t_.keyword(pos_, "catch")) {
      ++pos_;
      if (t_.punct(pos_, "(") && t_.match(pos_) != npos) {
        const std::size_t m = t_.match(pos_);
        if (m > pos_ + 1) {
          const std::size_t v = open("SingleVariableDeclaration", pos_ + 1);
          scan_expr(pos_ + 1, m);
          close(v, m - 1);
        }
        pos_ = m + 1;
      }
      block_body();
    }
    if (t_.keyword(pos_, "finally")) {
      ++pos_;
      block_body();
    }
    close(r, pos_ - 1);
  }

  // At 'switch': selector and body, through the closing '}'.
  void switch_rest() {
    ++pos_;
    if (!condition()) return;
    if (!t_.punct(pos_, "{")) {
      diag(pos_, "expected switch body");
      return;
    }
    const std::size_t close_brace = t_.match(pos_);
    const std::size_t limit = close_brace == npos ? n_ : close_brace;
    ++pos_;
    while (pos_ < limit) {
      const std::size_t before = pos_;
      const bool is_label = t_.keyword(pos_, "case") ||
                            (t_.keyword(pos_, "default") && (t_.punct(pos_ + 1, ":") || t_.punct(pos_ + 1, "->")));
      if (is_label) {
        std::size_t j = pos_ + 1;
        int pending_ternary = 0;
        while (j < limit) {
          if (t_.opener(j)) {
            const std::size_t m = t_.match(j);
            j = (m == npos || m >= limit) ? limit : m + 1;
            continue;
          }
          if (t_.punct(j, "?")) ++pending_ternary;
          if (t_.punct(j, ":")) {
            if (pending_ternary == 0) break;
            --pending_ternary;
          }
          if (t_.punct(j, "->")) break;
          ++j;
        }
        const std::size_t r = open("SwitchCase", pos_);
        scan_expr(pos_ + 1, j);
        close(r, j);
        const bool arrow = t_.punct(j, "->");
        pos_ = std::min(j + 1, limit);
        if (arrow && pos_ < limit) {
          if (t_.punct(pos_, "{")) {
            block_body();
          } else {
            statement_bounded(limit);
          }
        }
      } else {
        statement_bounded(limit);
      }
      if (pos_ == before) ++pos_;
    }
    pos_ = std::min(limit + 1, n_);
  }

  // Nested records inside an expression region: block lambdas, anonymous
  // classes, switch expressions, annotations.
  void scan_expr(std::size_t a, std::size_t b) {
    std::size_t i = a;
    while (i < b && i < n_) {
      if (t_.punct(i, "->") && t_.punct(i + 1, "{") && i > a) {
        std::size_t params_start = i - 1;
        if (t_.punct(i - 1, ")") && t_.match(i - 1) != npos) params_start = t_.match(i - 1);
        const std::size_t r = open("LambdaExpression", params_start);
        pos_ = i + 1;
        block_body();
        close(r, pos_ - 1);
        i = pos_;
        continue;
      }
      if (t_.keyword(i, "new")) {
        std::size_t j = i + 1;
        while (t_.punct(j, "@") && t_.ident(j + 1)) j = t_.skip_annotation(j, b);
        while (j < b && (t_.ident(j) || t_.punct(j, "."))) ++j;
        if (t_.punct(j, "<")) {
          const std::size_t g = t_.skip_generic(j, b);
          if (g != npos) j = g;
        }
        if (t_.punct(j, "(") && t_.match(j) != npos && t_.match(j) < b && t_.punct(t_.match(j) + 1, "{")) {
          const std::size_t m = t_.match(j);
          scan_expr(j + 1, m);
          const std::size_t r = open("AnonymousClassDeclaration", m + 1);
          pos_ = m + 1;
          class_body(false);
          close(r, pos_ - 1);
          i = pos_;
          continue;
        }
        i = j;
        continue;
      }
      if (t_.keyword(i, "switch") && t_.punct(i + 1, "(")) {
        const std::size_t r = open("SwitchExpression", i);
        pos_ = i;
        switch_rest();
        close(r, pos_ - 1);
        i = pos_;
        continue;
      }
      if (t_.punct(i, "@") && t_.ident(i + 1)) {
        pos_ = i;
        annotation();
        i = pos_;
        continue;
      }
      ++i;
    }
  }

  const TokenView& t_;
  const std::size_t n_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> stack_;
  std::vector<Role> roles_;
  std::vector<ExtractionDiagnostic>& diags_;
};

std::string literal_words(const Token& tk) {
  std::string s = tk.text;
  const auto q = s.find_first_not_of('"');
  const auto e = s.find_last_not_of('"');
  if (q == std::string::npos) return {};
  return s.substr(q, e - q + 1);
}

}  // namespace

ExtractedFile extract_file(std::string_view file_path, std::string_view source, const Tokenizer& tokenizer) {
  ExtractedFile out;
  const Lexed lexed = lex(source);
  const TokenView view(lexed.tokens);
  Parser parser(view, out.diagnostics);
  parser.parse_unit();

  const auto& roles = parser.roles();
  for (std::size_t i = 0; i < view.size(); ++i) {
    if (view[i].type != Tok::Ident) continue;
    switch (roles[i]) {
      case Role::ClassName: out.fields.class_names.push_back(view[i].text); break;
      case Role::MethodName: out.fields.method_names.push_back(view[i].text); break;
      case Role::None: out.fields.variable_names.push_back(view[i].text); break;
    }
  }
  for (const auto& c : lexed.comments) out.fields.comments.push_back(c.text);

  std::map<int, int> per_line;
  std::vector<bool> owned(view.size());
  for (const Rec& rec : parser.recs) {
    const Token& first = view[rec.first];
    const Token& last = view[rec.last];
    StatementRecord s;
    s.file_path = std::string(file_path);
    s.kind = rec.kind;
    s.start_line = first.line;
    s.end_line = std::max(first.line, last.end_line);
    s.statement_id = s.file_path + ":" + std::to_string(s.start_line) + ":" +
                     std::to_string(per_line[s.start_line]++);
    s.raw_text = std::string(source.substr(first.begin, last.end - first.begin));

    std::fill(owned.begin() + static_cast<std::ptrdiff_t>(rec.first),
              owned.begin() + static_cast<std::ptrdiff_t>(rec.last + 1), true);
    for (const std::size_t c : rec.children) {
      const Rec& child = parser.recs[c];
      std::fill(owned.begin() + static_cast<std::ptrdiff_t>(child.first),
                owned.begin() + static_cast<std::ptrdiff_t>(child.last + 1), false);
    }
    std::string terms;
    for (std::size_t i = rec.first; i <= rec.last; ++i) {
      if (!owned[i]) continue;
      if (view[i].type == Tok::Ident) {
        terms += view[i].text;
        terms += ' ';
      } else if (view[i].type == Tok::String) {
        terms += literal_words(view[i]);
        terms += ' ';
      }
    }
    std::fill(owned.begin() + static_cast<std::ptrdiff_t>(rec.first),
              owned.begin() + static_cast<std::ptrdiff_t>(rec.last + 1), false);
    s.tokens = tokenizer.tokenize(terms, true);
    out.statements.push_back(std::move(s));
  }
  return out;
}

std::vector<StatementRecord> extract_statements(std::string_view file_path, std::string_view source) {
  return extract_file(file_path, source).statements;
}

std::string classify_expression(std::string_view expression) {
  const Lexed lexed = lex(expression);
  if (lexed.tokens.empty()) return {};
  const TokenView view(lexed.tokens);
  return classify_range(view, 0, view.size());
}

}  // namespace flkit
