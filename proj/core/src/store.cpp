#include "emoco/store.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace emoco {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kIndexFile = "index.json";

json read_index(const fs::path& dir) {
  std::ifstream in(dir / kIndexFile);
  if (!in) return json{{"videos", json::array()}};
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParse, (dir / kIndexFile).string() + ": " + e.what());
  }
}

}  // namespace

void CorpusStore::add(VideoRecord record, std::optional<fs::path> media_path) {
  std::string id = record.id;
  if (videos_.count(id) > 0) throw Error(ErrorCode::kUsage, "duplicate video id '" + id + "'");
  std::string hash = content_hash(record);
  videos_.emplace(id, StoredVideo{std::move(record), std::move(hash), std::move(media_path)});
}

const StoredVideo* CorpusStore::find(std::string_view id) const {
  auto it = videos_.find(id);
  return it == videos_.end() ? nullptr : &it->second;
}

std::vector<const StoredVideo*> CorpusStore::videos() const {
  std::vector<const StoredVideo*> out;
  out.reserve(videos_.size());
  for (const auto& [id, v] : videos_) out.push_back(&v);
  return out;
}

CorpusStore CorpusStore::open(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::kIo, "store not found: " + dir.string());
  CorpusStore store;
  store.directory_ = dir;
  json index = read_index(dir);
  for (const auto& entry : index.at("videos")) {
    const fs::path bundle = dir / entry.at("bundle").get<std::string>();
    LoadOptions options;
    options.laughter_threshold = entry.value("laughterThreshold", options.laughter_threshold);
    VideoRecord record = load_bundle(BundleManifest::from_directory(bundle), options);
    std::optional<fs::path> media;
    if (record.media && fs::exists(bundle / *record.media)) media = bundle / *record.media;
    store.add(std::move(record), std::move(media));
  }
  return store;
}

std::vector<std::string> CorpusStore::ingest(const fs::path& dir,
                                             std::span<const fs::path> bundles,
                                             const LoadOptions& options) {
  struct Loaded {
    VideoRecord record;
    fs::path source;
  };
  std::vector<Loaded> loaded;
  std::set<std::string> ids;
  for (const auto& bundle : bundles) {
    VideoRecord record = load_bundle(BundleManifest::from_directory(bundle), options);
    if (!ids.insert(record.id).second) {
      throw Error(ErrorCode::kValidation, "duplicate video id '" + record.id + "' in " +
                                              bundle.string());
    }
    if (record.media && !fs::exists(bundle / *record.media)) {
      throw Error(ErrorCode::kIo, "media file missing: " + (bundle / *record.media).string());
    }
    loaded.push_back({std::move(record), bundle});
  }

  fs::create_directories(dir);
  json index = read_index(dir);
  json kept = json::array();
  for (const auto& entry : index.at("videos")) {
    if (ids.count(entry.at("id").get<std::string>()) == 0) kept.push_back(entry);
  }

  std::vector<std::string> out;
  for (const auto& [record, source] : loaded) {
    const fs::path rel = fs::path("videos") / record.id;
    const fs::path target = dir / rel;
    fs::remove_all(target);
    write_bundle(record, target);
    if (record.media) {
      fs::copy_file(source / *record.media, target / *record.media,
                    fs::copy_options::overwrite_existing);
    }
    kept.push_back({{"id", record.id},
                    {"bundle", rel.generic_string()},
                    {"hash", content_hash(record)},
                    {"laughterThreshold", options.laughter_threshold}});
    out.push_back(record.id);
  }

  std::sort(kept.begin(), kept.end(), [](const json& a, const json& b) {
    return a.at("id").get<std::string>() < b.at("id").get<std::string>();
  });
  std::ofstream file(dir / kIndexFile, std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot write store index in " + dir.string());
  file << json{{"videos", kept}}.dump(2) << '\n';
  return out;
}

}  // namespace emoco
