#include "cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "eventcrawl/archive_index.h"
#include "eventcrawl/collection_spec.h"
#include "eventcrawl/csv.h"
#include "eventcrawl/evaluation.h"
#include "eventcrawl/synthetic_archive.h"
#include "eventcrawl/term_vector.h"

namespace eventcrawl::cli {
namespace fs = std::filesystem;
namespace {

struct CommonOptions {
  std::string spec;
  std::string index;
  std::string idf;
  std::string out;
  bool half_life_gamma = false;
  bool verbose = false;
};

struct IndexOptions {
  std::string warc_dir;
  std::string index;
  bool verbose = false;
};

struct GenOptions {
  std::string out;
  std::uint64_t seed = 1;
  SyntheticArchiveConfig config;
  bool no_gzip = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<fs::path> list_warcs(const fs::path& dir) {
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.ends_with(".warc") || name.ends_with(".warc.gz")) paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

// Loads and validates the spec; prints every diagnostic on failure.
std::optional<CollectionSpecification> load_valid_spec(const std::string& path, std::ostream& err) {
  CollectionSpecification spec;
  try {
    spec = load_spec_unvalidated(path);
  } catch (const SpecError& e) {
    fmt::print(err, "error: {}: {}\n", path, e.what());
    return std::nullopt;
  }
  const auto diagnostics = validate_spec(spec);
  if (diagnostics.empty()) return spec;
  fmt::print(err, "error: {}: invalid specification\n", path);
  for (const auto& d : diagnostics) fmt::print(err, "  {}: {}\n", d.field, d.message);
  return std::nullopt;
}

ArchiveIndex open_index(const std::string& path) {
  if (!fs::exists(path)) throw InputError("index not found: " + path);
  try {
    return ArchiveIndex::open(path);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

IdfDictionary load_idf(const std::string& path) {
  if (path.empty()) return IdfDictionary::bundled();
  try {
    return IdfDictionary::load(path);
  } catch (const std::exception& e) {
    throw InputError("idf dictionary " + path + ": " + e.what());
  }
}

std::vector<CrawlStrategy> parse_strategies(const std::string& list) {
  std::vector<CrawlStrategy> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string::npos) end = list.size();
    const std::string name = list.substr(start, end - start);
    if (!name.empty()) {
      try {
        const auto strategy = CrawlStrategy::parse(name);
        if (std::find(out.begin(), out.end(), strategy) == out.end()) out.push_back(strategy);
      } catch (const UnknownStrategyError& e) {
        throw UsageError(e.what());
      }
    }
    start = end + 1;
  }
  if (out.empty()) throw UsageError("no strategy given (valid: unfocused, c-f, t-f, ct-f)");
  return out;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw UsageError("cannot create output directory " + dir);
}

int cmd_index(const IndexOptions& o, std::ostream& out, std::ostream& err) {
  if (!fs::is_directory(o.warc_dir)) {
    fmt::print(err, "error: WARC directory not found: {}\n", o.warc_dir);
    return kUsageError;
  }
  const auto paths = list_warcs(o.warc_dir);
  if (paths.empty()) fmt::print(err, "warning: no .warc or .warc.gz files in {}\n", o.warc_dir);
  if (const auto parent = fs::path(o.index).parent_path(); !parent.empty()) {
    fs::create_directories(parent);
  }
  IndexBuildSummary summary;
  try {
    summary = build_index(paths, o.index);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kValidationFailure;
  }
  if (o.verbose) {
    for (const auto& problem : summary.problems) fmt::print(err, "skipped: {}\n", problem);
  }
  fmt::print(out, "warc_files {}\nurl_count {}\nrecord_count {}\nskipped {}\n", paths.size(),
             summary.url_count, summary.record_count, summary.skipped);
  return kOk;
}

int cmd_validate(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto spec = load_valid_spec(o.spec, err);
  if (!spec) return kValidationFailure;
  fmt::print(out, "ok: {} ({} seeds, {} reference documents, target_size {}, alpha {})\n",
             spec->name, spec->seeds.size(), spec->topical.reference_documents.size(),
             spec->target_size, spec->alpha);
  return kOk;
}

int cmd_crawl(const CommonOptions& o, const std::string& strategy_name, std::ostream& out,
              std::ostream& err) {
  const auto strategies = parse_strategies(strategy_name);
  if (strategies.size() != 1) throw UsageError("crawl takes exactly one strategy");
  const auto spec = load_valid_spec(o.spec, err);
  if (!spec) return kValidationFailure;
  const ArchiveIndex index = open_index(o.index);
  const IdfDictionary idf = load_idf(o.idf);
  ensure_out_dir(o.out);

  CrawlOptions options;
  options.temporal.half_life_gamma = o.half_life_gamma;
  const DocumentScorer scorer = DocumentScorer::for_spec(*spec, index, idf, options);
  TraceObserver observer;
  if (o.verbose) {
    observer = [&err](const TraceEntry& e) {
      fmt::print(err, "{} {} {}\n", e.step, trace_action_name(e.action), e.url);
    };
  }
  const CrawlResult result = run_crawl(*spec, index, strategies.front(), scorer, observer);

  CollectionWriter writer(o.out);
  double accumulated = 0.0;
  for (const auto& doc : result.collection) {
    writer.add({fetch_document(doc.snapshot), doc.score.combined, doc.outlinks});
    accumulated += doc.score.topical;
  }
  const CollectionManifest manifest = writer.finish();
  {
    auto trace = open_output(fs::path(o.out) / "trace.csv");
    write_trace_csv(trace, result.trace);
  }
  {
    auto summary = open_output(fs::path(o.out) / "summary.csv");
    write_csv_row(summary, {"strategy", "fetched", "missing", "queued_at_end",
                            "accumulated_relevance"});
    write_csv_row(summary, {strategies.front().name(), std::to_string(result.collection.size()),
                            std::to_string(result.missing.size()),
                            std::to_string(result.queued_at_end), format_real(accumulated)});
  }
  fmt::print(out,
             "strategy {}\nfetched {}\nmissing {}\nqueued_at_end {}\naccumulated_relevance {}\n"
             "edges {}\n",
             strategies.front().name(), result.collection.size(), result.missing.size(),
             result.queued_at_end, format_real(accumulated), manifest.edge_count);
  return kOk;
}

int cmd_eval(const CommonOptions& o, const std::string& strategy_list, std::int64_t checkpoint,
             const Hooks& hooks, std::ostream& out, std::ostream& err) {
  if (checkpoint <= 0) throw UsageError("checkpoint must be positive");
  const auto strategies = parse_strategies(strategy_list);
  const auto spec = load_valid_spec(o.spec, err);
  if (!spec) return kValidationFailure;
  const ArchiveIndex index = open_index(o.index);
  const IdfDictionary idf = load_idf(o.idf);
  ensure_out_dir(o.out);

  EvalOptions options;
  options.crawl.temporal.half_life_gamma = o.half_life_gamma;
  options.crawl_runner = hooks.crawl_runner;
  const EvalReport report = run_comparison(*spec, index, strategies,
                                           static_cast<std::size_t>(checkpoint), idf, options);
  {
    auto series = open_output(fs::path(o.out) / "series.csv");
    write_series_csv(series, report);
  }
  {
    auto summary = open_output(fs::path(o.out) / "summary.csv");
    write_summary_csv(summary, report);
  }
  for (const auto& s : report.series) {
    if (s.error) {
      fmt::print(err, "error: strategy {} failed: {}\n", s.strategy.name(), *s.error);
    } else {
      fmt::print(out, "{} fetched {} missing {} queued_at_end {} accumulated_relevance {}\n",
                 s.strategy.name(), s.fetched, s.missing, s.queued_at_end,
                 format_real(s.final_accumulated_relevance));
    }
  }
  return report.all_succeeded() ? kOk : kPartialFailure;
}

int cmd_gen(GenOptions o, std::ostream& out) {
  o.config.random_seed = o.seed;
  o.config.gzip = !o.no_gzip;
  try {
    o.config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  ensure_out_dir(o.out);
  const SyntheticArchive archive = generate_archive(o.config, o.out);
  std::size_t relevant = 0;
  for (const auto& page : archive.pages) relevant += page.label == PageLabel::relevant;
  fmt::print(out, "pages {}\nrelevant {}\nomitted {}\nwarc_files {}\nspec {}\nidf {}\n",
             archive.pages.size(), relevant, archive.omitted_urls().size(),
             archive.warc_paths.size(), archive.spec_path.string(), archive.idf_path.string());
  if (!archive.target_keyword.empty()) fmt::print(out, "target_keyword {}\n", archive.target_keyword);
  return kOk;
}

void add_scoring_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--spec", o.spec, "Collection specification (JSON)")->required();
  cmd->add_option("--index", o.index, "Index file written by `index`")->required();
  cmd->add_option("--out", o.out, "Output directory")->required();
  cmd->add_option("--idf", o.idf, "IDF dictionary (#corpus_size header, term<TAB>df lines)");
  cmd->add_flag("--half-life-gamma", o.half_life_gamma,
                "Read lead/cool-down times as half-lives of the temporal decay");
  cmd->add_flag("-v,--verbose", o.verbose, "Log every crawl step to stderr");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const Hooks& hooks) {
  CLI::App app{"Event-centric collection extraction from web archives", "eventcrawl"};
  app.require_subcommand(1);

  IndexOptions index_opts;
  auto* index_cmd = app.add_subcommand("index", "Build the URL lookup index over a WARC directory");
  index_cmd->add_option("--warc-dir", index_opts.warc_dir, "Directory of .warc/.warc.gz files")
      ->required();
  index_cmd->add_option("--index", index_opts.index, "Index file to write")->required();
  index_cmd->add_flag("-v,--verbose", index_opts.verbose, "List skipped records");

  CommonOptions crawl_opts;
  std::string crawl_strategy = "ct-f";
  auto* crawl_cmd = app.add_subcommand("crawl", "Extract one collection");
  add_scoring_flags(crawl_cmd, crawl_opts);
  crawl_cmd->add_option("--strategy", crawl_strategy, "unfocused, c-f, t-f or ct-f")
      ->capture_default_str();

  CommonOptions eval_opts;
  std::string eval_strategies = "unfocused,c-f,t-f,ct-f";
  std::int64_t checkpoint = 100;
  auto* eval_cmd = app.add_subcommand("eval", "Compare crawl strategies");
  add_scoring_flags(eval_cmd, eval_opts);
  eval_cmd->add_option("--strategy", eval_strategies, "Comma-separated strategies")
      ->capture_default_str();
  eval_cmd->add_option("--checkpoint", checkpoint, "Documents between accumulated-relevance samples")
      ->capture_default_str();

  CommonOptions validate_opts;
  auto* validate_cmd = app.add_subcommand("validate", "Check a collection specification");
  validate_cmd->add_option("--spec", validate_opts.spec, "Collection specification (JSON)")
      ->required();

  GenOptions gen_opts;
  auto& cfg = gen_opts.config;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic archive");
  gen_cmd->add_option("--out", gen_opts.out, "Output directory")->required();
  gen_cmd->add_option("--seed", gen_opts.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--pages", cfg.page_count, "Page count")->capture_default_str();
  gen_cmd->add_option("--relevant-fraction", cfg.relevant_fraction)->capture_default_str();
  gen_cmd->add_option("--locality", cfg.topical_locality, "Topical locality of links")
      ->capture_default_str();
  gen_cmd->add_option("--omit-fraction", cfg.omit_fraction, "Share of pages left out of the WARCs")
      ->capture_default_str();
  gen_cmd->add_option("--confusable-fraction", cfg.confusable_fraction,
                      "Share of pages in a keyword-separable look-alike cluster")
      ->capture_default_str();
  gen_cmd->add_option("--links", cfg.links_per_page, "Links per ordinary page")
      ->capture_default_str();
  gen_cmd->add_option("--seeds", cfg.seed_count, "Seed URLs in the generated spec")
      ->capture_default_str();
  gen_cmd->add_option("--budget", cfg.crawl_budget, "target_size of the generated spec")
      ->capture_default_str();
  gen_cmd->add_option("--warc-files", cfg.warc_files)->capture_default_str();
  gen_cmd->add_flag("--no-gzip", gen_opts.no_gzip, "Write uncompressed WARC records");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (index_cmd->parsed()) return cmd_index(index_opts, out, err);
    if (crawl_cmd->parsed()) return cmd_crawl(crawl_opts, crawl_strategy, out, err);
    if (eval_cmd->parsed()) return cmd_eval(eval_opts, eval_strategies, checkpoint, hooks, out, err);
    if (validate_cmd->parsed()) return cmd_validate(validate_opts, out, err);
    if (gen_cmd->parsed()) return cmd_gen(gen_opts, out);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsageError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kValidationFailure;
  }
  return kUsageError;
}

}  // namespace eventcrawl::cli
