#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <tuple>

#include <fmt/format.h>

#include "acceptance.h"
#include "eventcrawl/archive_index.h"
#include "eventcrawl/crawler.h"
#include "eventcrawl/html.h"
#include "eventcrawl/random.h"
#include "eventcrawl/relevance.h"
#include "eventcrawl/synthetic_archive.h"

namespace eventcrawl::acceptance {
namespace {

constexpr std::int64_t kYear = 365 * 86400;

TemporalScope random_scope(Rng& rng) {
  const auto start = rng.between(946684800, 1700000000);
  TemporalScope s;
  s.event_start = Timestamp{Seconds{start}};
  s.event_end = Timestamp{Seconds{start + rng.between(0, 60 * 86400)}};
  s.lead_time = Seconds{rng.chance(0.1) ? 0 : rng.between(1, kYear)};
  s.cool_down_time = Seconds{rng.chance(0.1) ? 0 : rng.between(1, kYear)};
  return s;
}

// Oracle: the decay law written out directly.
double expected_temporal(Timestamp t, const TemporalScope& s) {
  if (t >= s.event_start && t <= s.event_end) return 1.0;
  if (t < s.event_start) {
    if (s.lead_time.count() == 0) return 0.0;
    return std::exp(-static_cast<double>((s.event_start - t).count()) /
                    static_cast<double>(s.lead_time.count()));
  }
  if (s.cool_down_time.count() == 0) return 0.0;
  return std::exp(-static_cast<double>((t - s.event_end).count()) /
                  static_cast<double>(s.cool_down_time.count()));
}

Verdict temporal_law() {
  Rng rng(2011);
  std::size_t pairs = 0;
  std::string failure;
  auto fail = [&](std::string what) {
    if (failure.empty()) failure = std::move(what);
  };
  for (int round = 0; round < 200 && failure.empty(); ++round) {
    const auto s = random_scope(rng);
    std::vector<Timestamp> probes;
    for (int i = 0; i < 10; ++i) {
      probes.push_back(s.event_start - Seconds{rng.between(0, 3 * kYear)});
      probes.push_back(s.event_end + Seconds{rng.between(0, 3 * kYear)});
      probes.push_back(s.event_start + Seconds{rng.between(0, (s.event_end - s.event_start).count())});
    }
    probes.push_back(s.event_start - Seconds{1});
    probes.push_back(s.event_end + Seconds{1});
    std::sort(probes.begin(), probes.end());
    double previous_before = -1.0;
    double previous_after = 2.0;
    for (const auto t : probes) {
      ++pairs;
      const double r = temporal_relevance(t, s);
      const bool inside = t >= s.event_start && t <= s.event_end;
      if (std::abs(r - expected_temporal(t, s)) > 1e-12) fail(fmt::format("law mismatch r={}", r));
      if (inside && r != 1.0) fail("not exactly 1 inside");
      if (!inside && r >= 1.0) fail("1 outside the interval");
      if (r < 0.0 || r > 1.0) fail("out of [0,1]");
      if (t < s.event_start) {
        if (r < previous_before) fail("decreasing before the event");
        previous_before = r;
      } else if (t > s.event_end) {
        if (r > previous_after) fail("increasing after the event");
        previous_after = r;
      }
    }
    if (s.cool_down_time.count() > 0 &&
        std::abs(temporal_relevance(s.event_end + s.cool_down_time, s) - std::exp(-1.0)) > 1e-9) {
      fail("value at one cool-down time is not e^-1");
    }
    if (s.lead_time.count() > 0 &&
        std::abs(temporal_relevance(s.event_start - s.lead_time, s) - std::exp(-1.0)) > 1e-9) {
      fail("value at one lead time is not e^-1");
    }
    auto no_lead = s;
    no_lead.lead_time = Seconds{0};
    for (auto d : {1, 60, 86400, 1000000}) {
      ++pairs;
      if (temporal_relevance(no_lead.event_start - Seconds{d}, no_lead) != 0.0) {
        fail("non-zero before the event with zero lead time");
      }
    }
  }
  if (pairs < 1000) fail("fewer than 1000 pairs");
  return {failure.empty(), failure.empty() ? fmt::format("{} (scope, t) pairs", pairs) : failure};
}

TermVector random_vector(Rng& rng) {
  std::map<std::string, double> w;
  for (auto k = rng.below(8); k > 0; --k) {
    w["t" + std::to_string(rng.below(12))] = static_cast<double>(rng.below(1000)) / 100.0;
  }
  return TermVector(std::move(w));
}

Verdict topical_law() {
  Rng rng(7);
  std::string failure;
  auto fail = [&](std::string what) {
    if (failure.empty()) failure = std::move(what);
  };
  for (int i = 0; i < 2000; ++i) {
    const TermVector a = random_vector(rng);
    const TermVector b = random_vector(rng);
    const double ab = topical_relevance(a, b);
    if (ab != topical_relevance(b, a)) fail("not symmetric");
    if (ab < 0.0 || ab > 1.0) fail(fmt::format("out of range: {}", ab));
    const double c = 0.01 + rng.uniform() * 100.0;
    if (std::abs(topical_relevance(a.scaled(c), b) - ab) > 1e-9 ||
        std::abs(topical_relevance(a, b.scaled(c)) - ab) > 1e-9) {
      fail("not scale invariant");
    }
    // Independent cosine over the raw entries.
    double dot = 0, na = 0, nb = 0;
    for (const auto& [t, w] : a.entries()) {
      na += w * w;
      dot += w * b.weight(t);
    }
    for (const auto& [t, w] : b.entries()) nb += w * w;
    const double expect = (na == 0 || nb == 0) ? 0.0 : dot / std::sqrt(na * nb);
    if (std::abs(ab - expect) > 1e-12) fail("cosine mismatch");
  }
  const double example =
      topical_relevance(TermVector({{"a", 1.0}, {"b", 1.0}}), TermVector({{"a", 1.0}}));
  if (std::abs(example - 1.0 / std::sqrt(2.0)) > 1e-9) fail(fmt::format("1/sqrt2 example: {}", example));

  const Analyzer en(Language::english);
  const std::vector<std::string> words = {"earthquake", "tsunami", "nuclear", "plant", "coast",
                                          "evacuation", "reactor", "wave"};
  for (int i = 0; i < 300; ++i) {
    TopicalScope scope;
    std::string text;
    for (int k = 0; k < 20; ++k) text += words[rng.below(words.size())] + " ";
    scope.reference_documents = {{ReferenceKind::inline_text, text}};
    scope.keywords = {words[rng.below(words.size())], words[rng.below(words.size())] + " plant"};
    const TermVector plain = vectorize(en.analyze(text), IdfDictionary::bundled());
    if (!(build_reference_vector(scope, IdfDictionary::bundled(), {1.0, 1.0, 1.0}) == plain)) {
      fail("unit boost weights changed the vector");
    }
  }
  return {failure.empty(),
          failure.empty() ? fmt::format("2000 random pairs, 1/sqrt2 example {:.12f}", example)
                          : failure};
}

Verdict alpha_endpoints() {
  Rng rng(100);
  const auto scope = default_event_scope();
  const std::vector<std::string> words = {"flood", "dam",  "river", "rain",  "vote",
                                          "party", "film", "match", "storm", "levee"};
  const std::string reference = "flood river dam levee rain storm flood warning";
  std::vector<ArchivedDocument> docs;
  for (int i = 0; i < 100; ++i) {
    ArchivedDocument d;
    d.snapshot.canonical_url = fmt::format("http://fixture.example/doc{}", i);
    d.target_uri = d.snapshot.canonical_url;
    d.snapshot.capture_time = scope.event_start + Seconds{rng.between(-90 * 86400, 120 * 86400)};
    d.http_status = 200;
    d.headers = {{"Content-Type", "text/html"}};
    std::string text;
    for (auto k = 5 + rng.below(30); k > 0; --k) text += words[rng.below(words.size())] + " ";
    const Timestamp published =
        scope.event_start + Seconds{rng.between(-60 * 86400, 90 * 86400)};
    d.body = fmt::format(
        "<html><head><meta property=\"article:published_time\" content=\"{}\"></head>"
        "<body><p>{}</p></body></html>",
        format_iso8601(published), text);
    docs.push_back(std::move(d));
  }
  const IdfDictionary& idf = IdfDictionary::bundled();
  const TermVector ref = vectorize(analyze(reference, "en"), idf);

  // Single-component scorers built from the primitives.
  std::vector<double> topical_only, temporal_only;
  for (const auto& d : docs) {
    topical_only.push_back(topical_relevance(vectorize(analyze(extract_text(d.body), "en"), idf), ref));
    temporal_only.push_back(temporal_relevance(extract_document_time(d).time_point, scope));
  }
  const auto ranking = [](const std::vector<double>& scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
  };
  std::string detail;
  bool pass = true;
  for (double alpha : {1.0, 0.0}) {
    const DocumentScorer scorer(ref, Language::english, idf, scope, alpha);
    std::vector<double> combined;
    for (const auto& d : docs) combined.push_back(scorer.score(d).score.combined);
    const auto expected = ranking(alpha == 1.0 ? topical_only : temporal_only);
    const bool same = ranking(combined) == expected;
    pass = pass && same;
    detail += fmt::format("alpha={} order {}; ", alpha, same ? "equal" : "DIFFERS");
  }
  std::size_t distinct_topical = 0;
  for (std::size_t i = 1; i < topical_only.size(); ++i) {
    distinct_topical += topical_only[i] != topical_only[0];
  }
  if (distinct_topical == 0) {
    pass = false;
    detail += "degenerate fixture";
  }
  return {pass, detail + "100 documents"};
}

Verdict snapshot_oracle() {
  Rng rng(55);
  const auto scope = default_event_scope();
  const auto span = (scope.event_end - scope.event_start).count();
  std::size_t inside_cases = 0, tie_cases = 0;
  for (int round = 0; round < 1000; ++round) {
    std::vector<SnapshotRecord> snaps;
    const auto n = 1 + rng.below(8);
    for (std::uint64_t i = 0; i < n; ++i) {
      SnapshotRecord r;
      r.canonical_url = "http://e.de/";
      switch (rng.below(6)) {
        case 0: r.capture_time = scope.event_start; break;
        case 1: r.capture_time = scope.event_end; break;
        case 2: r.capture_time = scope.event_start + Seconds{rng.between(0, span)}; break;
        case 3: r.capture_time = scope.event_start - Seconds{rng.between(1, 20) * 86400}; break;
        case 4: r.capture_time = scope.event_end + Seconds{rng.between(1, 20) * 86400}; break;
        default: r.capture_time = scope.event_start - Seconds{rng.between(1, 400) * 3600}; break;
      }
      snaps.push_back(r);
    }
    if (rng.chance(0.1)) {  // plant an equidistant pair
      const auto d = Seconds{rng.between(1, 10) * 86400};
      snaps = {SnapshotRecord{}, SnapshotRecord{}};
      snaps[0].capture_time = scope.event_start - d;
      snaps[1].capture_time = scope.event_end + d;
      ++tie_cases;
    }
    std::sort(snaps.begin(), snaps.end(),
              [](const auto& a, const auto& b) { return a.capture_time < b.capture_time; });
    snaps.erase(std::unique(snaps.begin(), snaps.end(),
                            [](const auto& a, const auto& b) { return a.capture_time == b.capture_time; }),
                snaps.end());
    for (std::size_t i = 0; i < snaps.size(); ++i) snaps[i].offset = i;

    // Exhaustive oracle: minimize (outside?, inside ? time : distance, time).
    std::size_t best = 0;
    auto key = [&](const SnapshotRecord& r) {
      const bool inside = r.capture_time >= scope.event_start && r.capture_time <= scope.event_end;
      const std::int64_t distance =
          inside ? 0
                 : (r.capture_time < scope.event_start ? (scope.event_start - r.capture_time).count()
                                                       : (r.capture_time - scope.event_end).count());
      return std::tuple(!inside, inside ? r.capture_time.time_since_epoch().count() : distance,
                        r.capture_time.time_since_epoch().count());
    };
    for (std::size_t i = 1; i < snaps.size(); ++i) {
      if (key(snaps[i]) < key(snaps[best])) best = i;
    }
    inside_cases += std::get<0>(key(snaps[best])) == false;
    const auto& got = select_snapshot(snaps, scope);
    if (got.offset != best) {
      return {false, fmt::format("round {}: got {} expected {}", round,
                                 format_iso8601(got.capture_time),
                                 format_iso8601(snaps[best].capture_time))};
    }
  }
  return {true, fmt::format("1000 lists ({} with an in-interval pick, {} equidistant ties)",
                            inside_cases, tie_cases)};
}

}  // namespace

std::vector<Criterion> law_criteria() {
  using std::chrono::seconds;
  return {{"AC1", "temporal relevance law", seconds(5), temporal_law},
          {"AC2", "topical relevance law", seconds(5), topical_law},
          {"AC3", "alpha endpoints reproduce single-component rankings", seconds(5),
           alpha_endpoints},
          {"AC5", "snapshot selection matches exhaustive oracle", seconds(5), snapshot_oracle}};
}

}  // namespace eventcrawl::acceptance
