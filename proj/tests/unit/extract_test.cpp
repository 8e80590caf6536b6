// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <tuple>

#include "flkit/corpus.hpp"
#include "flkit/extract.hpp"
#include "helpers.hpp"

using Record = std::tuple<int, int, std::string>;

namespace {

std::vector<Record> records_of(const std::vector<flkit::StatementRecord>& statements) {
  std::vector<Record> out;
  for (const auto& s : statements) out.emplace_back(s.start_line, s.end_line, s.kind);
  return out;
}

}  // namespace

TEST(Extract, ReturnStatement) {
  const auto s = flkit::extract_statements("A.java", "class A {\n  int f(int x) {\n    return x + 1;\n  }\n}\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].kind, "SingleVariableDeclaration");
  EXPECT_EQ(s[1].kind, "ReturnStatement");
  EXPECT_EQ(s[1].start_line, 3);
  EXPECT_EQ(s[1].end_line, 3);
  EXPECT_EQ(s[1].statement_id, "A.java:3:0");
  EXPECT_EQ(s[1].raw_text, "return x + 1;");
}

TEST(Extract, ForLoopAndBody) {
  const auto s = flkit::extract_statements(
      "B.java", "class B {\n  void g(int n) {\n    for (int i=0;i<n;i++) {\n      s();\n    }\n  }\n}\n");
  const std::vector<Record> expected{{2, 2, "SingleVariableDeclaration"}, {3, 5, "ForStatement"},
                                     {4, 4, "ExpressionStatement"}};
  EXPECT_EQ(records_of(s), expected);
}

TEST(Extract, ToyClassMatchesHandAnnotation) {
  const auto dir = testing_util::fixture_dir() / "extract";
  const auto source = testing_util::read_file(dir / "Toy.java");
  std::vector<Record> expected;
  std::istringstream lines(testing_util::read_file(dir / "Toy.expected"));
  for (std::string line; std::getline(lines, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    Record r;
    fields >> std::get<0>(r) >> std::get<1>(r) >> std::get<2>(r);
    expected.push_back(r);
  }
  const auto extracted = flkit::extract_file("toy/Toy.java", source);
  EXPECT_TRUE(extracted.diagnostics.empty());
  EXPECT_EQ(records_of(extracted.statements), expected);

  const auto& fields = extracted.fields;
  EXPECT_NE(std::find(fields.class_names.begin(), fields.class_names.end(), "Toy"), fields.class_names.end());
  EXPECT_NE(std::find(fields.method_names.begin(), fields.method_names.end(), "sum"), fields.method_names.end());
  EXPECT_NE(std::find(fields.method_names.begin(), fields.method_names.end(), "check"), fields.method_names.end());
  EXPECT_FALSE(fields.comments.empty());
}

TEST(Extract, RecordInvariants) {
  const auto source = testing_util::read_file(testing_util::fixture_dir() / "extract" / "Toy.java");
  const auto statements = flkit::extract_statements("toy/Toy.java", source);
  const auto& catalog = flkit::StatementCatalog::builtin();
  std::set<std::string> ids;
  for (const auto& s : statements) {
    EXPECT_TRUE(catalog.contains(s.kind)) << s.kind;
    EXPECT_LE(s.start_line, s.end_line);
    EXPECT_EQ(s.file_path, "toy/Toy.java");
    EXPECT_TRUE(ids.insert(s.statement_id).second) << s.statement_id;
  }
  EXPECT_EQ(statements[4].statement_id, "toy/Toy.java:11:1");
}

TEST(Extract, OwnTokensExcludeChildren) {
  const auto s = flkit::extract_statements("C.java",
                                           "class C {\n  void h() {\n    if (ready) {\n      fire(target);\n    }\n  }\n}\n");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].kind, "IfStatement");
  EXPECT_NE(std::find(s[0].tokens.begin(), s[0].tokens.end(), "readi"), s[0].tokens.end());
  EXPECT_EQ(std::find(s[0].tokens.begin(), s[0].tokens.end(), "fire"), s[0].tokens.end());
  EXPECT_NE(std::find(s[1].tokens.begin(), s[1].tokens.end(), "fire"), s[1].tokens.end());
}

TEST(Extract, FreeStandingBlockAndLambda) {
  const auto s = flkit::extract_statements(
      "D.java", "class D {\n  void k() {\n    {\n      a();\n    }\n    Runnable r = () -> {\n      b();\n    };\n  }\n}\n");
  std::vector<std::string> kinds;
  for (const auto& r : s) kinds.push_back(r.kind);
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), "Block"), kinds.end());
  EXPECT_EQ(std::count(kinds.begin(), kinds.end(), "ExpressionStatement"), 2);
}

TEST(Classify, ExpressionKinds) {
  EXPECT_EQ(flkit::classify_expression("a.b()"), "MethodInvocation");
  EXPECT_EQ(flkit::classify_expression("10"), "NumberLiteral");
  EXPECT_EQ(flkit::classify_expression("\"x\""), "StringLiteral");
  EXPECT_EQ(flkit::classify_expression("new Foo()"), "ClassInstanceCreation");
  EXPECT_EQ(flkit::classify_expression("a + b"), "InfixExpression");
  EXPECT_EQ(flkit::classify_expression("null"), "NullLiteral");
  EXPECT_EQ(flkit::classify_expression("x -> x"), "LambdaExpression");
  EXPECT_EQ(flkit::classify_expression("c ? a : b"), "ConditionalExpression");
}
