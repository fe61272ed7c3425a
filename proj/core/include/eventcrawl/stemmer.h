#pragma once

#include <string>
#include <string_view>

namespace eventcrawl {

/// M. F. Porter's 1980 suffix-stripping algorithm for English. Expects a
/// lowercased word; words of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

/// Snowball German stemmer operating on a lowercased UTF-8 word.
std::string german_stem(std::string_view word);

}  // namespace eventcrawl
