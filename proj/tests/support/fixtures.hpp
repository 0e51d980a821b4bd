#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "emoco/model.hpp"
#include "emoco/service.hpp"
#include "emoco/store.hpp"
#include "json.hpp"

namespace emoco::testing {

/// The bundled fixture corpus, built in code. tests/fixtures/corpus holds the
/// same records written with write_bundle().
VideoRecord coherent_keynote();  // every triple neutral, with audio
VideoRecord eq1_demo();          // three 2 s segments with degrees 2, 0, 1
VideoRecord mixed_signals();     // laughter masking, missing faces, audio
VideoRecord two_cluster();       // 20 sentences in two emotion clusters

std::vector<VideoRecord> fixture_corpus();

/// Segment ids of the happiness cluster in two_cluster().
std::vector<int> two_cluster_happy_ids();

/// 24-dim sentence-like vectors: ten one-hot on happiness in all three
/// channels, then ten on sadness, plus uniform noise in [0, jitter].
std::vector<std::vector<double>> two_cluster_vectors(std::uint64_t seed, double jitter);

/// Store holding every bundle under corpus_dir(), loaded from disk.
std::shared_ptr<CorpusStore> load_fixture_store();

/// Store built from in-memory records, loaded as if read from bundles.
std::shared_ptr<CorpusStore> make_store(std::vector<VideoRecord> records);

struct GoldenCase {
  std::string name;  // golden file stem
  HttpRequest request;
};

/// Requests whose responses are checked in under golden_dir().
std::vector<GoldenCase> golden_cases();

/// {"status": ..., "body": ...} as stored in the golden files.
nlohmann::json golden_record(const HttpResponse& response);

/// Structural equality with numbers compared to an absolute tolerance.
/// On mismatch `where` receives a JSON pointer to the first difference.
bool json_near(const nlohmann::json& a, const nlohmann::json& b, double tolerance,
               std::string* where = nullptr);

std::filesystem::path fixture_dir();
std::filesystem::path corpus_dir();
std::filesystem::path golden_dir();

}  // namespace emoco::testing
