#include <gtest/gtest.h>

#include "eventcrawl/random.h"
#include "eventcrawl/url.h"

namespace eventcrawl {
namespace {

TEST(CanonicalizeUrl, LowercasesSchemeAndHostDropsPortAndFragment) {
  EXPECT_EQ(canonicalize_url("HTTP://Example.DE:80/a#frag"), "http://example.de/a");
}

TEST(CanonicalizeUrl, ResolvesDotDotAgainstBase) {
  EXPECT_EQ(canonicalize_url("../b", "http://example.de/x/y"), "http://example.de/b");
}

TEST(CanonicalizeUrl, RejectsUnsupportedScheme) {
  try {
    canonicalize_url("mailto:x@y", "http://example.de/");
    FAIL() << "expected UrlError";
  } catch (const UrlError& e) {
    EXPECT_NE(std::string(e.what()).find("unsupported scheme"), std::string::npos);
  }
  EXPECT_FALSE(try_canonicalize_url("ftp://example.de/file"));
  EXPECT_FALSE(try_canonicalize_url("javascript:void(0)", "http://e.de/"));
}

TEST(CanonicalizeUrl, RelativeWithoutBaseFails) {
  EXPECT_THROW(canonicalize_url("/a/b"), UrlError);
}

TEST(CanonicalizeUrl, HandPickedRules) {
  EXPECT_EQ(canonicalize_url("https://E.de:443"), "https://e.de/");
  EXPECT_EQ(canonicalize_url("http://e.de:8080/x"), "http://e.de:8080/x");
  EXPECT_EQ(canonicalize_url("http://e.de/a/./b/../c"), "http://e.de/a/c");
  EXPECT_EQ(canonicalize_url("http://e.de/%7euser/%2f"), "http://e.de/~user/%2F");
  EXPECT_EQ(canonicalize_url("http://e.de/a b"), "http://e.de/a%20b");
  EXPECT_EQ(canonicalize_url("http://e.de/s?b=2&a=1#top"), "http://e.de/s?b=2&a=1");
  EXPECT_EQ(canonicalize_url("//other.de/p", "http://e.de/x"), "http://other.de/p");
  EXPECT_EQ(canonicalize_url("?q=1", "http://e.de/d/page"), "http://e.de/d/page?q=1");
  EXPECT_EQ(canonicalize_url("", "http://e.de/d/page?q=1#f"), "http://e.de/d/page?q=1");
  EXPECT_EQ(canonicalize_url("b.html", "http://e.de/d/"), "http://e.de/d/b.html");
}

TEST(CanonicalizeUrl, QueryParameterOrderIsPreserved) {
  EXPECT_NE(canonicalize_url("http://e.de/?a=1&b=2"), canonicalize_url("http://e.de/?b=2&a=1"));
}

TEST(CanonicalizeUrl, IdempotentOnRandomInputs) {
  const std::string alphabet = "aZ09-._~%/?#&=+ :@!$'()*,;[]\x7f\xc3\xa4";
  const std::vector<std::string> bases = {"http://Ex.de/a/b/c", "https://x.org:443/", "http://h/"};
  Rng rng(7);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string ref;
    const auto len = rng.below(20);
    for (std::uint64_t k = 0; k < len; ++k) ref += alphabet[rng.below(alphabet.size())];
    const auto once = try_canonicalize_url(ref, bases[rng.below(bases.size())]);
    if (!once) continue;
    ++checked;
    EXPECT_EQ(canonicalize_url(*once), *once) << "input: " << ref;
  }
  EXPECT_GT(checked, 1000);
}

TEST(UrlPath, ExtractsPathWithoutQuery) {
  EXPECT_EQ(url_path("http://e.de/2009/09/27/wahl?x=1"), "/2009/09/27/wahl");
  EXPECT_EQ(url_path("http://e.de/"), "/");
}

}  // namespace
}  // namespace eventcrawl
