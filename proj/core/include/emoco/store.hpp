#pragma once

#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emoco/bundle.hpp"
#include "emoco/model.hpp"

namespace emoco {

/// Lazily filled map where each missing key is computed exactly once, even
/// when many threads ask for it at the same time. Failed computations are
/// not cached.
template <typename Value>
class SingleFlightCache {
 public:
  Value get(const std::string& key, const std::function<Value()>& compute) {
    std::shared_future<Value> future;
    std::promise<Value> promise;
    bool owner = false;
    {
      std::lock_guard lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end()) {
        future = it->second;
      } else {
        future = promise.get_future().share();
        entries_.emplace(key, future);
        owner = true;
      }
    }
    if (owner) {
      try {
        Value value = compute();
        {
          std::lock_guard lock(mutex_);
          ++computations_;
        }
        promise.set_value(std::move(value));
      } catch (...) {
        {
          std::lock_guard lock(mutex_);
          entries_.erase(key);
        }
        promise.set_exception(std::current_exception());
      }
    }
    return future.get();
  }

  std::size_t computations() const {
    std::lock_guard lock(mutex_);
    return computations_;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return entries_.size();
  }

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_future<Value>> entries_;
  std::size_t computations_ = 0;
};

struct StoredVideo {
  VideoRecord record;
  /// SHA-256 of the canonical record encoding; keys every derived model.
  std::string hash;
  /// Playable media file, when the bundle named one.
  std::optional<std::filesystem::path> media_path;
};

/// All ingested videos. Filled by one writer, then shared read-only.
class CorpusStore {
 public:
  CorpusStore() = default;

  /// Loads every video listed in `<dir>/index.json`.
  static CorpusStore open(const std::filesystem::path& dir);

  /// Loads and validates each bundle, then writes them into the store
  /// directory (replacing videos with the same id). Returns the ingested ids.
  /// Nothing is written if any bundle fails or two bundles share an id.
  static std::vector<std::string> ingest(const std::filesystem::path& dir,
                                         std::span<const std::filesystem::path> bundles,
                                         const LoadOptions& options = {});

  /// Adds an in-memory record. Throws Error{kUsage} on a duplicate id.
  void add(VideoRecord record, std::optional<std::filesystem::path> media_path = std::nullopt);

  const StoredVideo* find(std::string_view id) const;
  /// Sorted by id.
  std::vector<const StoredVideo*> videos() const;
  std::size_t size() const { return videos_.size(); }

  /// Store directory when opened from disk; derived bodies persist below it.
  const std::optional<std::filesystem::path>& directory() const { return directory_; }

 private:
  std::map<std::string, StoredVideo, std::less<>> videos_;
  std::optional<std::filesystem::path> directory_;
};

}  // namespace emoco
