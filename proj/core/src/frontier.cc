#include "eventcrawl/frontier.h"

#include <cmath>
#include <stdexcept>

namespace eventcrawl {

Frontier::PushResult Frontier::push(const std::string& url, double priority) {
  if (!std::isfinite(priority)) throw std::invalid_argument("frontier priority must be finite");
  const auto it = by_url_.find(url);
  if (it == by_url_.end()) {
    const Key key{priority, next_sequence_++};
    queue_.emplace(key, url);
    by_url_.emplace(url, key);
    return PushResult::inserted;
  }
  if (priority <= it->second.priority) return PushResult::unchanged;
  auto node = queue_.extract(it->second);
  node.key().priority = priority;
  it->second = node.key();
  queue_.insert(std::move(node));
  return PushResult::raised;
}

std::optional<FrontierEntry> Frontier::pop() {
  if (queue_.empty()) return std::nullopt;
  auto node = queue_.extract(queue_.begin());
  by_url_.erase(node.mapped());
  return FrontierEntry{std::move(node.mapped()), node.key().priority, node.key().sequence};
}

bool Frontier::contains(std::string_view url) const {
  return by_url_.contains(std::string(url));
}

std::optional<double> Frontier::priority_of(std::string_view url) const {
  const auto it = by_url_.find(std::string(url));
  if (it == by_url_.end()) return std::nullopt;
  return it->second.priority;
}

std::vector<FrontierEntry> Frontier::entries() const {
  std::vector<FrontierEntry> out;
  out.reserve(queue_.size());
  for (const auto& [key, url] : queue_) out.push_back({url, key.priority, key.sequence});
  return out;
}

}  // namespace eventcrawl
