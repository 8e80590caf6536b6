// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flkit/corpus.hpp"
#include "flkit/ranked_list.hpp"

namespace testing_util {

namespace fs = std::filesystem;

inline fs::path fixture_dir() { return fs::path(FLKIT_FIXTURE_DIR); }

/// Fresh directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = fs::temp_directory_path() / ("flkit_test_" + std::to_string(rng()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline flkit::StatementRecord stmt(const std::string& file, int line, int ordinal, const std::string& raw,
                                   const std::string& kind = "ExpressionStatement") {
  flkit::StatementRecord s;
  s.statement_id = file + ":" + std::to_string(line) + ":" + std::to_string(ordinal);
  s.file_path = file;
  s.kind = kind;
  s.start_line = line;
  s.end_line = line;
  s.raw_text = raw;
  return s;
}

inline flkit::CoverageRecord test_run(const std::string& id, bool failed, std::vector<std::string> covered) {
  flkit::CoverageRecord c;
  c.test_id = id;
  c.outcome = failed ? flkit::TestOutcome::Fail : flkit::TestOutcome::Pass;
  c.covered.insert(covered.begin(), covered.end());
  return c;
}

inline flkit::RankedList list_of(const std::vector<std::string>& ids) {
  flkit::RankedList l;
  for (std::size_t i = 0; i < ids.size(); ++i) l.push_back(ids[i], 1.0 / static_cast<double>(i + 1));
  return l;
}

/// A small complete bundle: two files, one failing and one passing test.
inline flkit::DefectBundle sample_bundle() {
  flkit::DefectBundle b;
  b.defect_id = "sample-1";
  b.project = "sample";
  b.statements = {
      stmt("Parser.java", 3, 0, "int depth = parseDepth(text);", "VariableDeclarationStatement"),
      stmt("Parser.java", 4, 0, "return depth + 1;", "ReturnStatement"),
      stmt("Render.java", 2, 0, "canvas.draw(shape);"),
  };
  b.bug_report = {"R-1", "Parser returns wrong depth", "parseDepth is off by one in Parser"};
  b.coverage = {
      test_run("ParserTest.depth", true, {"Parser.java:3:0", "Parser.java:4:0"}),
      test_run("RenderTest.draw", false, {"Render.java:2:0", "Parser.java:3:0"}),
  };
  b.ground_truth = flkit::GroundTruth{{"Parser.java:4:0"}};
  b.reindex();
  return b;
}

}  // namespace testing_util
