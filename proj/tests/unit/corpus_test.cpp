// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "flkit/corpus.hpp"
#include "flkit/error.hpp"
#include "helpers.hpp"

using namespace testing_util;

namespace {

flkit::Errc load_error(const fs::path& dir) {
  try {
    flkit::load_defect_bundle(dir);
  } catch (const flkit::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "bundle loaded";
  return flkit::Errc::IoError;
}

}  // namespace

TEST(StatementCatalog, BuiltinHas57Kinds) {
  const auto& c = flkit::StatementCatalog::builtin();
  EXPECT_EQ(c.kinds().size(), 57u);
  EXPECT_EQ(c.count(flkit::KindCategory::Expression), 32u);
  EXPECT_EQ(c.count(flkit::KindCategory::Node), 3u);
  EXPECT_EQ(c.count(flkit::KindCategory::Statement), 22u);
  EXPECT_EQ(c.category_of("ReturnStatement"), flkit::KindCategory::Statement);
  EXPECT_EQ(c.category_of("MethodInvocation"), flkit::KindCategory::Expression);
  EXPECT_FALSE(c.contains("Banana"));
}

TEST(StatementCatalog, ParseRejectsUnknownCategory) {
  EXPECT_THROW(flkit::StatementCatalog::parse("widget Foo\n"), flkit::Error);
  const auto c = flkit::StatementCatalog::parse("# comment\nstatement Foo\n\nexpression Bar # trailing\n");
  EXPECT_TRUE(c.contains("Foo"));
  EXPECT_TRUE(c.contains("Bar"));
}

TEST(Bundle, SaveLoadRoundTrip) {
  TempDir dir;
  auto b = sample_bundle();
  b.file_texts["Parser.java"] = "class Parser {}\n";
  flkit::save_defect_bundle(b, dir.path());
  const auto loaded = flkit::load_defect_bundle(dir.path());
  EXPECT_EQ(loaded, b);

  TempDir again;
  flkit::save_defect_bundle(loaded, again.path());
  EXPECT_EQ(flkit::load_defect_bundle(again.path()), b);
}

TEST(Bundle, MissingGroundTruthIsAbsent) {
  TempDir dir;
  auto b = sample_bundle();
  b.ground_truth.reset();
  flkit::save_defect_bundle(b, dir.path());
  EXPECT_FALSE(flkit::load_defect_bundle(dir.path()).ground_truth.has_value());
}

TEST(Bundle, DanglingCoverageReference) {
  TempDir dir;
  flkit::save_defect_bundle(sample_bundle(), dir.path());
  std::ofstream(dir / "coverage.jsonl", std::ios::app) << R"({"test_id":"T","outcome":"fail","covered":["s999"]})"
                                                        << "\n";
  try {
    flkit::load_defect_bundle(dir.path());
    FAIL();
  } catch (const flkit::Error& e) {
    EXPECT_EQ(e.code(), flkit::Errc::DanglingReference);
    EXPECT_NE(std::string(e.what()).find("s999"), std::string::npos);
  }
}

TEST(Bundle, DanglingGroundTruthReference) {
  TempDir dir;
  flkit::save_defect_bundle(sample_bundle(), dir.path());
  write_file(dir / "ground_truth.json", R"({"buggy_statements":["nope"]})");
  EXPECT_EQ(load_error(dir.path()), flkit::Errc::DanglingReference);
}

TEST(Bundle, MissingFiles) {
  TempDir dir;
  EXPECT_EQ(load_error(dir.path()), flkit::Errc::MissingFile);
  flkit::save_defect_bundle(sample_bundle(), dir.path());
  fs::remove(dir / "bug_report.json");
  EXPECT_EQ(load_error(dir.path()), flkit::Errc::MissingFile);
}

TEST(Bundle, ParseErrorCarriesLineNumber) {
  TempDir dir;
  flkit::save_defect_bundle(sample_bundle(), dir.path());
  std::ofstream(dir / "statements.jsonl", std::ios::app) << "{not json\n";
  try {
    flkit::load_defect_bundle(dir.path());
    FAIL();
  } catch (const flkit::Error& e) {
    EXPECT_EQ(e.code(), flkit::Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(Bundle, DuplicateStatementIds) {
  auto b = sample_bundle();
  b.statements.push_back(b.statements.front());
  EXPECT_THROW(flkit::check_bundle_references(b), flkit::Error);
}

TEST(Bundle, UnknownKindRejected) {
  auto b = sample_bundle();
  b.statements[0].kind = "Banana";
  EXPECT_THROW(flkit::check_bundle_references(b), flkit::Error);
}

TEST(Bundle, ManifestPathsOverrideNames) {
  TempDir dir;
  flkit::save_defect_bundle(sample_bundle(), dir.path());
  fs::rename(dir / "coverage.jsonl", dir / "cov.jsonl");
  write_file(dir / "manifest.json",
             R"({"defect_id":"sample-1","project":"sample","paths":{"coverage":"cov.jsonl"}})");
  EXPECT_EQ(flkit::load_defect_bundle(dir.path()).coverage.size(), 2u);
}

TEST(Bundle, StatementsExtractedWhenOnlySourcesPresent) {
  TempDir dir;
  write_file(dir / "manifest.json", R"({"defect_id":"d","project":"p"})");
  write_file(dir / "bug_report.json", R"({"report_id":"r","summary":"add fails","description":""})");
  write_file(dir / "sources/src/A.java", "class A {\n  int f() {\n    return 1;\n  }\n}\n");
  write_file(dir / "coverage.jsonl", R"({"test_id":"t","outcome":"fail","covered":["src/A.java:3:0"]})" "\n");
  const auto b = flkit::load_defect_bundle(dir.path());
  ASSERT_EQ(b.statements.size(), 1u);
  EXPECT_EQ(b.statements[0].kind, "ReturnStatement");
  EXPECT_EQ(b.file_texts.count("src/A.java"), 1u);
}

TEST(Validate, Modes) {
  auto b = sample_bundle();
  EXPECT_TRUE(flkit::validate_bundle(b, flkit::Technique::Sbir).runnable);

  auto no_fail = b;
  for (auto& c : no_fail.coverage) c.outcome = flkit::TestOutcome::Pass;
  const auto r = flkit::validate_bundle(no_fail, flkit::Technique::Sbfl);
  EXPECT_FALSE(r.runnable);
  ASSERT_EQ(r.reasons.size(), 1u);
  EXPECT_EQ(r.reasons[0], "no failing test");
  EXPECT_TRUE(flkit::validate_bundle(no_fail, flkit::Technique::Irfl).runnable);

  auto no_report = b;
  no_report.bug_report.summary.clear();
  no_report.bug_report.description = "  \n";
  EXPECT_FALSE(flkit::validate_bundle(no_report, flkit::Technique::Irfl).runnable);
  EXPECT_TRUE(flkit::validate_bundle(no_report, flkit::Technique::Sbfl).runnable);
  EXPECT_FALSE(flkit::validate_bundle(no_report, flkit::Technique::Sbir).runnable);
}

TEST(Validate, SbirImpliesBoth) {
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto b = sample_bundle();
    if (rng() % 2) b.bug_report.summary.clear();
    if (rng() % 2) b.bug_report.description.clear();
    if (rng() % 2) b.coverage[0].outcome = flkit::TestOutcome::Pass;
    if (rng() % 4 == 0) b.statements.clear();
    if (flkit::validate_bundle(b, flkit::Technique::Sbir).runnable) {
      EXPECT_TRUE(flkit::validate_bundle(b, flkit::Technique::Sbfl).runnable);
      EXPECT_TRUE(flkit::validate_bundle(b, flkit::Technique::Irfl).runnable);
    }
  }
}
