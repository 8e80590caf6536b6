// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <set>

#include "bm25_oracle.hpp"
#include "flkit/blues.hpp"
#include "flkit/error.hpp"
#include "helpers.hpp"

using flkit::RankedList;
using flkit::RankerConfig;
using flkit::ScoreFn;
using testing_util::list_of;

namespace {

RankedList scored(const std::vector<std::pair<std::string, double>>& items) { return RankedList::from_ordered(items); }

}  // namespace

TEST(RankerConfig, NamesAndValidation) {
  const auto configs = flkit::ensemble_configs();
  ASSERT_EQ(configs.size(), 6u);
  std::vector<std::string> names;
  for (const auto& c : configs) names.push_back(c.name());
  EXPECT_EQ(names, (std::vector<std::string>{"m=1/high", "m=25/high", "m=50/high", "m=100/high", "m=all/high",
                                             "m=all/wt"}));
  EXPECT_THROW((RankerConfig{0, 1, ScoreFn::High}.validate()), flkit::Error);
  EXPECT_THROW((RankerConfig{5, 0, ScoreFn::High}.validate()), flkit::Error);
}

TEST(ApplyRankerConfig, HighAndWeighted) {
  const auto files = scored({{"A", 0.9}, {"B", 0.5}});
  const std::map<std::string, RankedList> per_file{{"A", scored({{"a1", 0.2}, {"a2", 0.1}})},
                                                   {"B", scored({{"b1", 0.8}, {"b2", 0.3}})}};
  const auto high = flkit::apply_ranker_config(files, per_file, {2, 1, ScoreFn::High});
  EXPECT_EQ(high.item_ids(), (std::vector<std::string>{"a1", "b1"}));

  const auto wt = flkit::apply_ranker_config(files, per_file, {2, 1, ScoreFn::Wt});
  EXPECT_EQ(wt.item_ids(), (std::vector<std::string>{"b1", "a1"}));
  EXPECT_NEAR(wt[0].score, 0.40, 1e-12);
  EXPECT_NEAR(wt[1].score, 0.18, 1e-12);

  const auto one_file = flkit::apply_ranker_config(files, per_file, {1, std::nullopt, ScoreFn::High});
  EXPECT_EQ(one_file, per_file.at("A"));

  const auto all = flkit::apply_ranker_config(files, per_file, {2, std::nullopt, ScoreFn::High});
  EXPECT_EQ(all.item_ids(), (std::vector<std::string>{"a1", "a2", "b1", "b2"}));
}

TEST(MergeBestRank, Examples) {
  const std::vector<RankedList> two{list_of({"a", "b"}), list_of({"b", "c"})};
  const auto merged = flkit::merge_best_rank(two);
  EXPECT_EQ(merged.item_ids(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_DOUBLE_EQ(merged[2].score, 0.5);

  const std::vector<RankedList> same(6, list_of({"x", "y", "z"}));
  EXPECT_EQ(flkit::merge_best_rank(same).item_ids(), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_TRUE(flkit::merge_best_rank(std::vector<RankedList>{}).empty());
}

TEST(MergeBestRank, RankOneItemsComeFirst) {
  const std::vector<RankedList> lists{list_of({"p", "q", "r"}), list_of({"s", "p"}), list_of({"t", "u", "q"})};
  const auto merged = flkit::merge_best_rank(lists);
  EXPECT_EQ(merged.item_ids(), (std::vector<std::string>{"p", "s", "t", "q", "u", "r"}));
}

TEST(RankFiles, ParserFirst) {
  const auto bundle = testing_util::sample_bundle();
  const auto files = flkit::rank_files(bundle);
  ASSERT_GE(files.size(), 1u);
  EXPECT_EQ(files[0].item_id, "Parser.java");
  EXPECT_FALSE(files.contains("Render.java"));
}

TEST(RankFiles, MatchesOracle) {
  const auto bundle = testing_util::sample_bundle();
  const flkit::Tokenizer tok;
  const auto docs = flkit::file_documents(bundle, tok);
  const auto query = flkit::bug_report_query(bundle.bug_report, tok);
  std::vector<oracle::Doc> odocs;
  for (const auto& d : docs) odocs.push_back({d.doc_id, d.fields});
  const auto files = flkit::rank_files(bundle);
  for (const auto& e : files) {
    EXPECT_NEAR(e.score, oracle::bm25(odocs, {query.doc_id, query.fields}, e.item_id), 1e-9);
  }
}

TEST(RankFiles, NoSharedTermsAndSingleFile) {
  auto bundle = testing_util::sample_bundle();
  bundle.bug_report = {"R", "zebra quokka", ""};
  EXPECT_TRUE(flkit::rank_files(bundle).empty());

  flkit::DefectBundle single;
  single.defect_id = "s";
  single.statements = {testing_util::stmt("Only.java", 1, 0, "parse(depth);")};
  single.bug_report = {"R", "parse fails", ""};
  single.reindex();
  // One document: every idf is zero, so nothing scores above zero.
  EXPECT_TRUE(flkit::rank_files(single).empty());
}

TEST(RankFiles, EmptyReportNotRunnable) {
  auto bundle = testing_util::sample_bundle();
  bundle.bug_report = {"R", "", ""};
  try {
    flkit::rank_files(bundle);
    FAIL();
  } catch (const flkit::Error& e) {
    EXPECT_EQ(e.code(), flkit::Errc::NotRunnable);
  }
}

TEST(RankStatements, MethodNameRanksFirst) {
  flkit::DefectBundle b;
  b.defect_id = "m";
  b.statements = {testing_util::stmt("P.java", 1, 0, "int count = 0;"),
                  testing_util::stmt("P.java", 2, 0, "int depth = parseDepth(text);"),
                  testing_util::stmt("P.java", 3, 0, "log.info(message);")};
  b.bug_report = {"R", "NPE", "at P.parseDepth(P.java:2)"};
  b.reindex();
  const auto ranked = flkit::rank_statements_in_file("P.java", b);
  ASSERT_GE(ranked.size(), 1u);
  EXPECT_EQ(ranked[0].item_id, "P.java:2:0");
  EXPECT_FALSE(ranked.contains("P.java:1:0"));

  b.bug_report = {"R", "unrelated words", ""};
  EXPECT_TRUE(flkit::rank_statements_in_file("P.java", b).empty());
  try {
    flkit::rank_statements_in_file("Missing.java", b);
    FAIL();
  } catch (const flkit::Error& e) {
    EXPECT_EQ(e.code(), flkit::Errc::NoStatements);
  }
}

TEST(RunBlues, EnsembleIsUnionOfConfigs) {
  std::vector<flkit::DefectBundle> bundles{testing_util::sample_bundle()};
  bundles.push_back(flkit::load_defect_bundle(testing_util::fixture_dir() / "corpus" / "calc-1"));
  bundles.push_back(flkit::load_defect_bundle(testing_util::fixture_dir() / "corpus" / "cache-1"));
  for (const auto& bundle : bundles) {
    const auto run = flkit::run_blues(bundle);
    ASSERT_EQ(run.config_lists.size(), 6u);
    std::set<std::string> from_configs;
    for (const auto& l : run.config_lists) {
      for (const auto& e : l) from_configs.insert(e.item_id);
    }
    const auto ids = run.ensemble.item_ids();
    EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()), from_configs) << bundle.defect_id;
    EXPECT_EQ(run.ensemble, flkit::merge_best_rank(run.config_lists));
    EXPECT_EQ(flkit::blues_ensemble(bundle), run.ensemble);
    for (std::size_t i = 0; i < run.ensemble.size(); ++i) {
      EXPECT_EQ(run.ensemble[i].rank, i + 1);
      EXPECT_TRUE(bundle.find_statement(run.ensemble[i].item_id) != nullptr);
    }
  }
}

TEST(RunBlues, SingleFileAllStatementsConfigEqualsStatementRanking) {
  auto bundle = testing_util::sample_bundle();
  const auto run = flkit::run_blues(bundle);
  ASSERT_EQ(run.files.size(), 1u);
  EXPECT_EQ(run.config_lists[4], run.per_file_statements.at("Parser.java"));
}
