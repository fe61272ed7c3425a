#include <gtest/gtest.h>

#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "eventcrawl/crawler.h"
#include "eventcrawl/random.h"
#include "eventcrawl/synthetic_archive.h"
#include "fixtures.h"

namespace eventcrawl {
namespace {

namespace fs = std::filesystem;
using testing::FixtureCapture;
using testing::TempDir;
using testing::ts;
using Strings = std::vector<std::string>;

SnapshotRecord at(Timestamp t) {
  SnapshotRecord r;
  r.canonical_url = "http://e.de/";
  r.capture_time = t;
  return r;
}

TEST(SelectSnapshot, EarliestInsideInterval) {
  const auto scope = default_event_scope();
  const std::vector<SnapshotRecord> snaps = {at(ts(2011, 3, 1)), at(ts(2011, 3, 12)),
                                             at(ts(2011, 3, 20))};
  EXPECT_EQ(select_snapshot(snaps, scope).capture_time, ts(2011, 3, 12));
}

TEST(SelectSnapshot, ClosestOutsideInterval) {
  const auto scope = default_event_scope();
  const std::vector<SnapshotRecord> after = {at(scope.event_end + std::chrono::days(2)),
                                             at(scope.event_end + std::chrono::days(5))};
  EXPECT_EQ(select_snapshot(after, scope).capture_time, scope.event_end + std::chrono::days(2));
  const std::vector<SnapshotRecord> single = {at(ts(2000, 1, 1))};
  EXPECT_EQ(select_snapshot(single, scope).capture_time, ts(2000, 1, 1));
  // Equidistant before and after: the earlier capture wins.
  const std::vector<SnapshotRecord> tie = {at(scope.event_start - std::chrono::days(3)),
                                           at(scope.event_end + std::chrono::days(3))};
  EXPECT_EQ(select_snapshot(tie, scope).capture_time, scope.event_start - std::chrono::days(3));
}

TEST(ExtractOutlinks, ResolutionAndFiltering) {
  EXPECT_EQ(extract_outlinks("<a href=\"/a\">1</a><a href=\"b.html\">2</a><a href=\"#frag\">3</a>"
                             "<a href=\"mailto:x\">4</a>",
                             "http://e.de/d/"),
            (Strings{"http://e.de/a", "http://e.de/d/b.html"}));
}

TEST(ExtractOutlinks, DuplicatesEmptyAndBase) {
  EXPECT_EQ(extract_outlinks("<a href=\"x\"></a><A HREF=\"x#y\"></A><a href=\"HTTP://E.DE/d/x\"></a>",
                             "http://e.de/d/"),
            (Strings{"http://e.de/d/x"}));
  EXPECT_TRUE(extract_outlinks("<p>no anchors</p>", "http://e.de/").empty());
  EXPECT_EQ(extract_outlinks("<base href=\"http://other.de/root/\"><a href=\"p\"></a>"
                             "<area href=\"q\"><a name=\"n\">",
                             "http://e.de/"),
            (Strings{"http://other.de/root/p", "http://other.de/root/q"}));
}

TEST(CrawlStrategy, ParseAndNames) {
  EXPECT_EQ(CrawlStrategy::parse("CT-F").kind, StrategyKind::combined);
  EXPECT_EQ(CrawlStrategy::parse("unfocused").name(), "unfocused");
  try {
    CrawlStrategy::parse("dfs");
    FAIL();
  } catch (const UnknownStrategyError& e) {
    const std::string msg = e.what();
    for (const char* name : {"unfocused", "c-f", "t-f", "ct-f"}) {
      EXPECT_NE(msg.find(name), std::string::npos);
    }
  }
  const auto score = RelevanceScore::make(0.3, 0.9, 0.5);
  EXPECT_EQ(CrawlStrategy::parse("unfocused").priority(score), 0.0);
  EXPECT_EQ(CrawlStrategy::parse("c-f").priority(score), 0.3);
  EXPECT_EQ(CrawlStrategy::parse("t-f").priority(score), 0.9);
  EXPECT_EQ(CrawlStrategy::parse("ct-f").priority(score), score.combined);
}

std::string page(const std::string& text, const Strings& links) {
  return testing::page_html(text, links);
}

TEST(RunCrawl, StarGraph) {
  TempDir dir;
  std::vector<FixtureCapture> captures = {
      {"http://e.de/seed", ts(2011, 3, 12),
       page("quake", {"http://e.de/r1", "http://e.de/r2", "http://e.de/r3"})},
      {"http://e.de/r1", ts(2011, 3, 12), page("one", {})},
      {"http://e.de/r2", ts(2011, 3, 12), page("two", {})},
      {"http://e.de/r3", ts(2011, 3, 12), page("three", {})}};
  const ArchiveIndex index = testing::index_fixture(dir.path(), captures);
  const auto spec = testing::fixture_spec("quake", {"http://e.de/seed"}, 10);
  for (const auto& strategy : kAllStrategies) {
    const auto result = run_crawl(spec, index, strategy);
    std::set<std::string> fetched;
    for (const auto& d : result.collection) fetched.insert(d.snapshot.canonical_url);
    EXPECT_EQ(fetched, (std::set<std::string>{"http://e.de/seed", "http://e.de/r1",
                                              "http://e.de/r2", "http://e.de/r3"}));
    EXPECT_TRUE(result.missing.empty());
    EXPECT_EQ(result.trace.size(), 4u);
    EXPECT_EQ(result.queued_at_end, 0u);
  }
}

TEST(RunCrawl, MissingRecordedOnce) {
  TempDir dir;
  std::vector<FixtureCapture> captures = {
      {"http://e.de/seed", ts(2011, 3, 12), page("quake", {"/gone", "/b"})},
      {"http://e.de/b", ts(2011, 3, 12), page("b", {"/gone", "/seed"})}};
  const ArchiveIndex index = testing::index_fixture(dir.path(), captures);
  const auto result =
      run_crawl(testing::fixture_spec("quake", {"http://e.de/seed"}, 10), index,
                CrawlStrategy{StrategyKind::unfocused});
  EXPECT_EQ(result.missing, (Strings{"http://e.de/gone"}));
  EXPECT_EQ(result.collection.size(), 2u);
  int misses = 0;
  for (const auto& e : result.trace) misses += e.action == TraceAction::miss;
  EXPECT_EQ(misses, 1);
}

TEST(RunCrawl, BudgetOfOne) {
  TempDir dir;
  std::vector<FixtureCapture> captures = {
      {"http://e.de/seed", ts(2011, 3, 12), page("quake", {"/b"})},
      {"http://e.de/b", ts(2011, 3, 12), page("b", {})}};
  const ArchiveIndex index = testing::index_fixture(dir.path(), captures);
  const auto result = run_crawl(testing::fixture_spec("quake", {"http://e.de/seed"}, 1), index,
                                CrawlStrategy{});
  ASSERT_EQ(result.collection.size(), 1u);
  EXPECT_EQ(result.collection[0].snapshot.canonical_url, "http://e.de/seed");
  EXPECT_EQ(result.queued_at_end, 1u);
}

TEST(RunCrawl, CorruptSnapshotIsSkipped) {
  TempDir dir;
  std::vector<FixtureCapture> captures = {
      {"http://e.de/seed", ts(2011, 3, 12), page("quake", {"/b", "/c"})},
      {"http://e.de/b", ts(2011, 3, 12), page("b", {})},
      {"http://e.de/c", ts(2011, 3, 12), page("c", {})}};
  const ArchiveIndex good = testing::index_fixture(dir.path(), captures);
  std::vector<SnapshotRecord> records(good.records().begin(), good.records().end());
  for (auto& r : records) {
    if (r.canonical_url == "http://e.de/b") r.offset += 3;
  }
  const ArchiveIndex index = ArchiveIndex::from_records(records);
  const auto result = run_crawl(testing::fixture_spec("quake", {"http://e.de/seed"}, 10), index,
                                CrawlStrategy{StrategyKind::unfocused});
  EXPECT_EQ(result.collection.size(), 2u);
  EXPECT_EQ(result.missing, (Strings{"http://e.de/b"}));
  EXPECT_EQ(result.trace[1].action, TraceAction::skip);
}

TEST(RunCrawl, UnfocusedEqualsBreadthFirstAndInvariantsHold) {
  Rng rng(42);
  for (int round = 0; round < 15; ++round) {
    TempDir dir;
    const std::size_t n = 10 + rng.below(30);
    std::vector<Strings> links(n);
    std::vector<FixtureCapture> captures;
    for (std::size_t i = 0; i < n; ++i) {
      for (auto k = rng.below(5); k > 0; --k) {
        links[i].push_back("http://g.de/p" + std::to_string(rng.below(n + 3)));
      }
      if (i == n - 1 || rng.chance(0.1)) continue;  // absent from the archive
      captures.push_back({"http://g.de/p" + std::to_string(i), ts(2011, 3, 12),
                          page("word" + std::to_string(rng.below(4)), links[i])});
    }
    const ArchiveIndex index = testing::index_fixture(dir.path(), captures);
    std::set<std::string> archived;
    for (const auto& c : captures) archived.insert(c.url);
    const std::string seed = "http://g.de/p0";
    if (!archived.contains(seed)) continue;

    // Reference BFS over the fixture link lists.
    std::map<std::string, Strings> graph;
    for (std::size_t i = 0; i < n; ++i) graph["http://g.de/p" + std::to_string(i)] = links[i];
    Strings bfs_fetched, bfs_missing;
    std::set<std::string> seen{seed};
    std::deque<std::string> queue{seed};
    while (!queue.empty()) {
      const auto url = queue.front();
      queue.pop_front();
      if (!archived.contains(url)) {
        bfs_missing.push_back(url);
        continue;
      }
      bfs_fetched.push_back(url);
      for (const auto& l : graph[url]) {
        if (seen.insert(l).second) queue.push_back(l);
      }
    }

    const auto spec = testing::fixture_spec("word0", {seed}, 1000);
    const auto result = run_crawl(spec, index, CrawlStrategy{StrategyKind::unfocused});
    Strings fetched;
    for (const auto& d : result.collection) fetched.push_back(d.snapshot.canonical_url);
    EXPECT_EQ(fetched, bfs_fetched);
    EXPECT_EQ(result.missing, bfs_missing);

    for (const auto& strategy : kAllStrategies) {
      const auto r = run_crawl(spec, index, strategy);
      std::set<std::string> once;
      std::map<std::string, double> enqueued_at;
      for (std::size_t i = 0; i < r.collection.size(); ++i) {
        const auto& d = r.collection[i];
        EXPECT_TRUE(once.insert(d.snapshot.canonical_url).second);
        // Popped priority equals the best strategy score among earlier linkers.
        if (i > 0) EXPECT_EQ(d.priority, enqueued_at[d.snapshot.canonical_url]);
        for (const auto& l : d.outlinks) {
          if (once.contains(l)) continue;
          enqueued_at[l] = std::max(enqueued_at.count(l) ? enqueued_at[l] : -1.0,
                                    strategy.priority(d.score));
        }
      }
    }
  }
}

TEST(RunCrawl, TraceCsv) {
  std::vector<TraceEntry> trace = {
      {1, TraceAction::fetch, "http://e.de/a", kSeedPriority, ts(2011, 3, 12),
       RelevanceScore::make(0.5, 1.0, 0.5)},
      {2, TraceAction::miss, "http://e.de/b,c", 0.25, std::nullopt, std::nullopt}};
  std::ostringstream out;
  write_trace_csv(out, trace);
  EXPECT_EQ(out.str(),
            "step,action,url,priority,snapshot_time,topical,temporal,combined\n"
            "1,fetch,http://e.de/a,seed,20110312000000,0.500000,1.000000,0.750000\n"
            "2,miss,\"http://e.de/b,c\",0.250000,,,,\n");
}

TEST(DocumentScorer, ArchiveUrlReference) {
  TempDir dir;
  std::vector<FixtureCapture> captures = {
      {"http://e.de/ref", ts(2011, 3, 1), "<p>old text</p>"},
      {"http://e.de/ref", ts(2011, 3, 12), "<p>tsunami warning</p>"}};
  const ArchiveIndex index = testing::index_fixture(dir.path(), captures);
  auto spec = testing::fixture_spec("", {"http://e.de/ref"}, 5);
  spec.topical.reference_documents = {{ReferenceKind::archive_url, "http://e.de/ref"}};
  const auto scorer = DocumentScorer::for_spec(spec, index, IdfDictionary::bundled());
  EXPECT_TRUE(scorer.reference().contains("tsunami"));
  EXPECT_FALSE(scorer.reference().contains("old"));
  spec.topical.reference_documents = {{ReferenceKind::archive_url, "http://e.de/none"}};
  EXPECT_THROW(DocumentScorer::for_spec(spec, index, IdfDictionary::bundled()),
               ReferenceResolutionError);
}

}  // namespace
}  // namespace eventcrawl
