#pragma once

#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

namespace bernoulli {

/// Read-mostly memo table. Concurrent readers share the lock; inserts are
/// idempotent, so two workers racing on the same key both store the same
/// value and the first one wins.
template <typename Key, typename Value, typename Hash = std::hash<Key>>
class ConcurrentCache {
 public:
  std::optional<Value> find(const Key& key) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void insert(const Key& key, const Value& value) {
    std::unique_lock lock(mutex_);
    map_.try_emplace(key, value);
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, Value, Hash> map_;
};

}  // namespace bernoulli
