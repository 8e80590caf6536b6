// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bm25_oracle.hpp"
#include "flkit/bm25.hpp"
#include "flkit/error.hpp"
#include "helpers.hpp"

using flkit::FieldedDocument;

namespace {

FieldedDocument doc(const std::string& id, std::vector<std::string> terms) { return {id, {{"body", std::move(terms)}}}; }
FieldedDocument query(std::vector<std::string> terms) { return {"q", {{"summary", std::move(terms)}}}; }

}  // namespace

TEST(Index, DocumentFrequencyAndIdf) {
  const auto index = flkit::build_index({doc("a", {"foo", "bar"}), doc("b", {"bar"})});
  EXPECT_EQ(index.doc_count(), 2u);
  EXPECT_EQ(index.df("body", "foo"), 1u);
  EXPECT_EQ(index.df("body", "bar"), 2u);
  EXPECT_DOUBLE_EQ(index.idf("body", "foo"), std::log(2.0));
  EXPECT_DOUBLE_EQ(index.idf("body", "bar"), 0.0);
}

TEST(Index, EmptyAndRepeatedTerms) {
  EXPECT_EQ(flkit::build_index({}).doc_count(), 0u);
  const auto index = flkit::build_index({doc("a", {"x", "x", "x"})});
  EXPECT_EQ(index.tf("a", "body", "x"), 3u);
  EXPECT_EQ(index.postings("body", "x").at("a"), 3u);
}

TEST(Index, DuplicateDocId) {
  try {
    flkit::build_index({doc("a", {}), doc("a", {"x"})});
    FAIL();
  } catch (const flkit::Error& e) {
    EXPECT_EQ(e.code(), flkit::Errc::DuplicateDocId);
  }
}

TEST(Index, OrderIndependent) {
  std::vector<FieldedDocument> docs{doc("a", {"x", "y"}), doc("b", {"y"}), doc("c", {"z", "x", "x"})};
  const auto first = flkit::build_index(docs);
  std::reverse(docs.begin(), docs.end());
  EXPECT_EQ(flkit::build_index(docs), first);
}

TEST(Index, DfInvariant) {
  const auto index = flkit::build_index({doc("a", {"x", "y"}), doc("b", {"y", "y"}), doc("c", {})});
  for (const std::string term : {"x", "y"}) {
    EXPECT_EQ(index.df("body", term), index.postings("body", term).size());
    EXPECT_LE(index.df("body", term), index.doc_count());
  }
}

TEST(Index, JsonRoundTrip) {
  testing_util::TempDir dir;
  const auto index = flkit::build_index({doc("a", {"x", "y"}), {"b", {{"title", {"x"}}, {"body", {}}}}});
  flkit::save_index(index, dir / "idx.json");
  EXPECT_EQ(flkit::load_index(dir / "idx.json"), index);
}

TEST(Bm25, AbsentTermsScoreZero) {
  const auto index = flkit::build_index({doc("a", {"x"}), doc("b", {"y"})});
  EXPECT_EQ(flkit::bm25_score(index, query({"nothing"}), "a"), 0.0);
}

TEST(Bm25, SingleDocumentHasZeroIdf) {
  const auto index = flkit::build_index({doc("a", {"parse"})});
  EXPECT_EQ(flkit::bm25_score(index, query({"parse"}), "a"), 0.0);
}

TEST(Bm25, UnknownDoc) {
  const auto index = flkit::build_index({doc("a", {"x"})});
  try {
    flkit::bm25_score(index, query({"x"}), "zzz");
    FAIL();
  } catch (const flkit::Error& e) {
    EXPECT_EQ(e.code(), flkit::Errc::UnknownDoc);
  }
}

TEST(Bm25, ThreeDocumentOracle) {
  const std::vector<oracle::Doc> odocs{
      {"A", {{"body", {"parse", "tree", "parse"}}}},
      {"B", {{"body", {"render", "tree"}}}},
      {"C", {{"body", {"parse", "render", "node", "node"}}}},
  };
  std::vector<FieldedDocument> docs;
  for (const auto& d : odocs) docs.push_back({d.id, d.fields});
  const auto index = flkit::build_index(docs);
  const oracle::Doc q{"q", {{"summary", {"parse"}}}};
  for (const auto& d : odocs) {
    EXPECT_NEAR(flkit::bm25_score(index, {q.id, q.fields}, d.id), oracle::bm25(odocs, q, d.id), 1e-9) << d.id;
  }
  // Hand computation for A: idf = ln(3/2), tf = 2, len = 3, avg = 3.
  const double a = std::log(1.5) * 2 * 2.2 / (2 + 1.2);
  EXPECT_NEAR(flkit::bm25_score(index, {q.id, q.fields}, "A"), a, 1e-12);
}

TEST(Bm25, MonotoneInTermFrequency) {
  for (int tf = 1; tf < 8; ++tf) {
    std::vector<std::string> more(static_cast<std::size_t>(tf + 1), "x");
    std::vector<std::string> fewer(static_cast<std::size_t>(tf), "x");
    more.push_back("pad");
    fewer.push_back("pad");
    fewer.push_back("pad2");  // same length for both
    const auto i1 = flkit::build_index({doc("a", fewer), doc("b", {"y"}), doc("c", {"z"})});
    const auto i2 = flkit::build_index({doc("a", more), doc("b", {"y"}), doc("c", {"z"})});
    EXPECT_LE(flkit::bm25_score(i1, query({"x"}), "a"), flkit::bm25_score(i2, query({"x"}), "a"));
  }
}

TEST(Bm25, FieldMapRestrictsPairs) {
  const FieldedDocument d1{"a", {{"title", {"x"}}, {"body", {"x"}}}};
  const FieldedDocument d2{"b", {{"title", {"y"}}, {"body", {"y"}}}};
  const auto index = flkit::build_index({d1, d2});
  const double all = flkit::bm25_score(index, query({"x"}), "a");
  flkit::FieldMap only_title{{{"summary", "title", 1.0}}};
  const double title = flkit::bm25_score(index, query({"x"}), "a", {}, only_title);
  EXPECT_NEAR(all, 2 * title, 1e-12);
  flkit::FieldMap doubled{{{"summary", "title", 2.0}}};
  EXPECT_NEAR(flkit::bm25_score(index, query({"x"}), "a", {}, doubled), 2 * title, 1e-12);
}

TEST(Bm25, InvalidParams) {
  EXPECT_THROW((flkit::Bm25Params{0.0, 0.5}.validate()), flkit::Error);
  EXPECT_THROW((flkit::Bm25Params{1.2, 1.5}.validate()), flkit::Error);
}

TEST(RankDocuments, OrderAndTies) {
  const auto index = flkit::build_index({doc("A", {"x"}), doc("B", {"x"}), doc("C", {"y"}), doc("D", {"z"})});
  const auto ranked = flkit::rank_documents(index, query({"x"}));
  ASSERT_EQ(ranked.size(), 2u);
  EXPECT_EQ(ranked[0].item_id, "A");
  EXPECT_EQ(ranked[1].item_id, "B");

  const auto higher = flkit::rank_documents(index, query({"y", "y"}));
  ASSERT_EQ(higher.size(), 1u);
  EXPECT_EQ(higher[0].item_id, "C");
  EXPECT_TRUE(flkit::rank_documents(index, query({"absent"})).empty());
}

TEST(RankDocuments, EmptyIndex) {
  try {
    flkit::rank_documents(flkit::build_index({}), query({"x"}));
    FAIL();
  } catch (const flkit::Error& e) {
    EXPECT_EQ(e.code(), flkit::Errc::EmptyIndex);
  }
}

TEST(RankDocuments, DuplicatedCorpusMatchesOracleOrder) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<oracle::Doc> odocs;
    for (int i = 0; i < 6; ++i) {
      oracle::Doc d{"d" + std::to_string(i), {{"body", {}}}};
      for (int t = 0; t < 5; ++t) d.fields["body"].push_back("t" + std::to_string(rng() % 8));
      odocs.push_back(d);
    }
    auto doubled = odocs;
    for (const auto& d : odocs) doubled.push_back({d.id + "_copy", d.fields});
    std::vector<FieldedDocument> docs;
    for (const auto& d : doubled) docs.push_back({d.id, d.fields});
    const oracle::Doc q{"q", {{"summary", {"t1", "t3", "t5"}}}};
    std::vector<std::pair<double, std::string>> expected;
    for (const auto& d : doubled) {
      const double s = oracle::bm25(doubled, q, d.id);
      if (s > 0) expected.emplace_back(-s, d.id);
    }
    std::sort(expected.begin(), expected.end());
    const auto ranked = flkit::rank_documents(flkit::build_index(docs), {q.id, q.fields});
    ASSERT_EQ(ranked.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_NEAR(ranked[i].score, -expected[i].first, 1e-9);
    }
  }
}
