// SPDX-License-Identifier: Apache-2.0
#include "flkit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "flkit/aggregate.hpp"
#include "flkit/blues.hpp"
#include "flkit/corpus.hpp"
#include "flkit/error.hpp"
#include "flkit/eval.hpp"
#include "flkit/extract.hpp"
#include "flkit/sbfl.hpp"
#include "flkit/sbir.hpp"
#include "flkit/text.hpp"

namespace flkit {
namespace {

namespace fs = std::filesystem;

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  std::ofstream file(target, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(Errc::IoError, "cannot write " + path);
  file << text;
  if (!file) throw Error(Errc::IoError, "cannot write " + path);
}

// Options shared by every subcommand that ranks with Blues.
struct BluesFlags {
  double k1 = 1.2;
  double b = 0.75;
  std::size_t f = 50;
  std::string stopwords;

  void add(CLI::App* cmd) {
    cmd->add_option("--k1", k1, "BM25 term-frequency saturation")->capture_default_str();
    cmd->add_option("--b", b, "BM25 length normalization")->capture_default_str();
    cmd->add_option("--f", f, "number of top files whose statements are ranked")->capture_default_str();
    cmd->add_option("--stopwords", stopwords, "stopword list replacing the built-in one");
  }

  // The returned options point into `storage`.
  BluesOptions options(std::unique_ptr<StopwordList>& words, std::unique_ptr<Tokenizer>& storage) const {
    BluesOptions o;
    o.bm25 = {k1, b};
    o.bm25.validate();
    o.f = f;
    if (f == 0) throw Error(Errc::InvalidConfig, "--f must be >= 1");
    if (!stopwords.empty()) {
      words = std::make_unique<StopwordList>(StopwordList::load(stopwords));
      storage = std::make_unique<Tokenizer>(*words);
      o.tokenizer = storage.get();
    }
    return o;
  }
};

struct AggregationFlags {
  AggregationConfig config;
  std::string distance = "spearman";
  double rho = 0.0;
  std::size_t samples = 0;
  CLI::Option* rho_opt = nullptr;
  CLI::Option* samples_opt = nullptr;

  void add(CLI::App* cmd) {
    cmd->add_option("--k", config.k, "length of the aggregated list")->capture_default_str();
    cmd->add_option("--seed", config.seed, "random seed")->capture_default_str();
    cmd->add_option("--distance", distance, "spearman or kendall")->capture_default_str();
    cmd->add_option("--max-iter", config.max_iter, "iteration limit")->capture_default_str();
    cmd->add_option("--conv-in", config.conv_in, "stop after this many iterations without change")
        ->capture_default_str();
    rho_opt = cmd->add_option("--rho", rho, "elite quantile (default 0.01 when N >= 100, else 0.1)");
    samples_opt = cmd->add_option("--samples", samples, "samples per iteration (default 10*n*k)");
    cmd->add_option("--update-weight", config.update_weight, "smoothing weight w")->capture_default_str();
  }

  AggregationConfig resolve() const {
    AggregationConfig c = config;
    c.distance = parse_distance(distance);
    if (rho_opt->count() > 0) c.rho = rho;
    if (samples_opt->count() > 0) c.samples = samples;
    c.validate();
    return c;
  }
};

nlohmann::ordered_json run_log(const AggregationResult& r, const AggregationConfig& c) {
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["distance"] = std::string(distance_name(c.distance));
  j["k"] = r.k;
  j["universe_size"] = r.universe_size;
  j["samples"] = r.samples;
  j["rho"] = r.rho;
  j["iterations"] = r.iterations;
  j["stop_reason"] = r.stop_reason;
  j["objective"] = r.objective;
  j["final_iteration_objective"] = r.final_iteration_objective;
  j["final_iteration_best"] = r.final_iteration_best;
  return j;
}

void report_log(const AggregationResult& r, const AggregationConfig& c, const std::string& log_path,
                std::ostream& out, std::ostream& err) {
  if (!log_path.empty()) {
    write_text(log_path, run_log(r, c).dump(2) + "\n", out);
    return;
  }
  err << "flkit: " << r.stop_reason << " after " << r.iterations << " iterations, objective " << r.objective
      << '\n';
}

std::vector<fs::path> java_sources(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::MissingFile, path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<DefectBundle> load_corpus(const std::string& corpus, const std::vector<std::string>& bundles) {
  std::vector<fs::path> dirs;
  if (!corpus.empty()) {
    if (!fs::is_directory(corpus)) throw Error(Errc::MissingFile, corpus);
    for (const auto& entry : fs::directory_iterator(corpus)) {
      if (entry.is_directory() && fs::exists(entry.path() / "manifest.json")) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());
  }
  for (const auto& b : bundles) dirs.emplace_back(b);
  std::vector<DefectBundle> out;
  for (const auto& d : dirs) out.push_back(load_defect_bundle(d));
  return out;
}

// Values from a --config JSON file become flags, unless the same flag is on
// the command line. Keys are flag names without dashes; '_' stands for '-'.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;

  nlohmann::json config;
  try {
    config = nlohmann::json::parse(read_file(config_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidConfig, config_path + ": " + e.what());
  }
  if (!config.is_object()) throw Error(Errc::InvalidConfig, config_path + ": expected a JSON object");

  const auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  const auto scalar = [](const nlohmann::json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
  };
  std::vector<std::string> extra;
  for (const auto& [key, value] : config.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (flag == "--config" || given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        extra.push_back(flag);
        extra.push_back(scalar(v));
      }
    } else if (!value.is_null()) {
      extra.push_back(flag);
      extra.push_back(scalar(value));
    }
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::NotRunnable:
      return kExitNotRunnable;
    case Errc::InvalidConfig:
      return kExitUsage;
    default:
      return kExitData;
  }
}

}  // namespace

std::string version_string() {
  return std::string("flkit ") + FLKIT_VERSION + " (format " + FLKIT_FORMAT_VERSION + ")";
}

void emit_ranked_list(const RankedList& list, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(Errc::IoError, "cannot write " + path.string());
  file << dump_ranked_list(list);
  if (!file) throw Error(Errc::IoError, "cannot write " + path.string());
}

int run_command(std::span<const std::string> argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Statement-level fault localization toolkit", "flkit"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  std::string out_path = "-";
  std::string config_path;
  std::string bundle;
  std::string log_path;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "output file ('-' for standard output)")->capture_default_str();
    cmd->add_option("--config", config_path, "JSON file of flag values; command-line flags win");
  };

  auto* extract_cmd = app.add_subcommand("extract", "extract statement records from Java sources");
  std::string source;
  std::string stopwords;
  extract_cmd->add_option("--source", source, "a .java file or a directory searched recursively")->required();
  extract_cmd->add_option("--stopwords", stopwords, "stopword list replacing the built-in one");
  add_common(extract_cmd);

  auto* sbfl_cmd = app.add_subcommand("sbfl", "rank statements by Ochiai suspiciousness");
  sbfl_cmd->add_option("--bundle", bundle, "defect bundle directory")->required();
  add_common(sbfl_cmd);

  BluesFlags blues_flags;
  auto* blues_cmd = app.add_subcommand("blues", "rank statements by bug-report similarity");
  std::string lists_dir;
  std::string files_out;
  blues_cmd->add_option("--bundle", bundle, "defect bundle directory")->required();
  blues_cmd->add_option("--lists-dir", lists_dir, "also write each configuration's list here");
  blues_cmd->add_option("--files-out", files_out, "also write the file ranking here");
  blues_flags.add(blues_cmd);
  add_common(blues_cmd);

  AggregationFlags rafl_flags;
  AggregationFlags sbir_flags;
  auto* rafl_cmd = app.add_subcommand("rafl", "aggregate ranked lists");
  std::vector<std::string> list_paths;
  std::vector<double> weights;
  rafl_cmd->add_option("lists", list_paths, "ranked-list JSON files (two or more)")->required();
  rafl_cmd->add_option("--weights", weights, "one weight per list (default 1.0 each)");
  rafl_cmd->add_option("--log", log_path, "write the run log as JSON here");
  rafl_flags.add(rafl_cmd);
  add_common(rafl_cmd);

  auto* sbir_cmd = app.add_subcommand("sbir", "fuse SBFL and Blues by rank aggregation");
  sbir_cmd->add_option("--bundle", bundle, "defect bundle directory")->required();
  sbir_cmd->add_option("--log", log_path, "write the run log as JSON here");
  sbir_flags.add(sbir_cmd);
  blues_flags.add(sbir_cmd);
  add_common(sbir_cmd);

  auto* eval_cmd = app.add_subcommand("eval", "evaluate techniques over a corpus of bundles");
  std::string corpus;
  std::vector<std::string> bundles;
  std::vector<std::string> techniques;
  std::vector<std::string> cutoffs;
  std::string table_path;
  bool union_mode = false;
  std::uint64_t eval_seed = 1;
  eval_cmd->add_option("--corpus", corpus, "directory whose subdirectories are bundles");
  eval_cmd->add_option("--bundle", bundles, "bundle directory (repeatable)");
  eval_cmd->add_option("--technique", techniques, "technique to evaluate (repeatable; default all)");
  eval_cmd->add_option("--k", cutoffs, "cutoffs (repeatable; default 1 25 50 100 all)");
  eval_cmd->add_flag("--union", union_mode, "add the union of the six Blues configurations");
  eval_cmd->add_option("--table", table_path, "write the plain-text table here ('-' for standard output)");
  eval_cmd->add_option("--seed", eval_seed, "random seed for SBIR")->capture_default_str();
  blues_flags.add(eval_cmd);
  add_common(eval_cmd);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  try {
    args = merge_config(std::move(args));
  } catch (const Error& e) {
    err << "flkit: " << e.what() << '\n';
    return exit_code_for(e);
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (extract_cmd->parsed()) {
      std::unique_ptr<StopwordList> words;
      if (!stopwords.empty()) words = std::make_unique<StopwordList>(StopwordList::load(stopwords));
      const Tokenizer tokenizer = words ? Tokenizer(*words) : Tokenizer();
      const fs::path root(source);
      if (!fs::exists(root)) throw Error(Errc::MissingFile, source);
      const bool is_dir = fs::is_directory(root);
      const auto files = is_dir ? java_sources(root) : std::vector<fs::path>{root};
      std::string text;
      for (const auto& file : files) {
        const std::string rel = is_dir ? file.lexically_relative(root).generic_string() : file.filename().string();
        const auto extracted = extract_file(rel, read_file(file), tokenizer);
        for (const auto& d : extracted.diagnostics) err << "flkit: " << rel << ':' << d.line << ": " << d.message << '\n';
        for (const auto& s : extracted.statements) text += statement_to_jsonl(s) + "\n";
      }
      write_text(out_path, text, out);
    } else if (sbfl_cmd->parsed()) {
      write_text(out_path, dump_ranked_list(rank_sbfl(load_defect_bundle(bundle))), out);
    } else if (blues_cmd->parsed()) {
      std::unique_ptr<StopwordList> words;
      std::unique_ptr<Tokenizer> tokenizer;
      const auto options = blues_flags.options(words, tokenizer);
      const auto run = run_blues(load_defect_bundle(bundle), options);
      if (!lists_dir.empty()) {
        fs::create_directories(lists_dir);
        for (std::size_t i = 0; i < run.configs.size(); ++i) {
          std::string name = run.configs[i].name();
          std::replace(name.begin(), name.end(), '/', '-');
          std::replace(name.begin(), name.end(), '=', '-');
          emit_ranked_list(run.config_lists[i], fs::path(lists_dir) / (name + ".json"));
        }
      }
      if (!files_out.empty()) write_text(files_out, dump_ranked_list(run.files), out);
      write_text(out_path, dump_ranked_list(run.ensemble), out);
    } else if (rafl_cmd->parsed()) {
      if (list_paths.size() < 2) throw Error(Errc::InvalidConfig, "rafl needs at least two lists");
      std::vector<RankedList> lists;
      for (const auto& p : list_paths) lists.push_back(read_ranked_list(p));
      if (weights.empty()) weights.assign(lists.size(), 1.0);
      if (weights.size() != lists.size()) throw Error(Errc::InvalidConfig, "--weights needs one value per list");
      const auto config = rafl_flags.resolve();
      const auto result = ce_aggregate(lists, weights, config);
      write_text(out_path, dump_ranked_list(reciprocal_rank_list(result.items)), out);
      report_log(result, config, log_path, out, err);
    } else if (sbir_cmd->parsed()) {
      std::unique_ptr<StopwordList> words;
      std::unique_ptr<Tokenizer> tokenizer;
      SbirOptions options;
      options.blues = blues_flags.options(words, tokenizer);
      options.aggregation = sbir_flags.resolve();
      const auto run = run_sbir(load_defect_bundle(bundle), options);
      write_text(out_path, dump_ranked_list(run.ranked), out);
      report_log(run.aggregation, options.aggregation, log_path, out, err);
    } else if (eval_cmd->parsed()) {
      if (corpus.empty() && bundles.empty()) throw Error(Errc::InvalidConfig, "eval needs --corpus or --bundle");
      std::unique_ptr<StopwordList> words;
      std::unique_ptr<Tokenizer> tokenizer;
      EvalOptions options;
      options.sbir.blues = blues_flags.options(words, tokenizer);
      options.sbir.aggregation.seed = eval_seed;
      options.techniques = techniques;
      for (const auto& k : cutoffs) options.cutoffs.push_back(parse_cutoff(k));
      options.union_mode = union_mode;
      const auto corpus_bundles = load_corpus(corpus, bundles);
      const auto report = evaluate_corpus(corpus_bundles, options);
      write_text(out_path, dump_corpus_report(report), out);
      if (!table_path.empty()) write_text(table_path, format_report_table(report), out);
    }
  } catch (const Error& e) {
    err << "flkit: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    err << "flkit: ParseError: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "flkit: IoError: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace flkit
