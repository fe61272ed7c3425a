#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace eventcrawl {

/// Priority given to seeds so they precede every discovered URL.
inline constexpr double kSeedPriority = std::numeric_limits<double>::max();

struct FrontierEntry {
  std::string url;
  double priority = 0.0;
  std::uint64_t sequence = 0;

  friend bool operator==(const FrontierEntry&, const FrontierEntry&) = default;
};

/// Max-priority crawl queue, FIFO among equal priorities, one entry per URL.
class Frontier {
 public:
  enum class PushResult { inserted, raised, unchanged };

  /// Inserts `url`, or raises the priority of an existing entry while keeping
  /// its sequence number. Throws std::invalid_argument for a non-finite
  /// priority.
  PushResult push(const std::string& url, double priority);

  /// Highest priority entry, earliest sequence first; nullopt when empty.
  std::optional<FrontierEntry> pop();

  bool contains(std::string_view url) const;
  std::optional<double> priority_of(std::string_view url) const;
  std::size_t size() const { return by_url_.size(); }
  bool empty() const { return by_url_.empty(); }

  /// Remaining entries in pop order.
  std::vector<FrontierEntry> entries() const;

 private:
  struct Key {
    double priority;
    std::uint64_t sequence;
    bool operator<(const Key& other) const {
      if (priority != other.priority) return priority > other.priority;
      return sequence < other.sequence;
    }
  };

  std::map<Key, std::string> queue_;
  std::unordered_map<std::string, Key> by_url_;
  std::uint64_t next_sequence_ = 0;
};

}  // namespace eventcrawl
