#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "emoco/bundle.hpp"
#include "synthetic.hpp"

namespace emoco::testing {

namespace {

constexpr int kSampleRate = 8000;

// Voiced tone over each span, silence elsewhere.
AudioTrack tone_track(double duration, const std::vector<std::tuple<TimeSpan, double, double>>& tones) {
  AudioTrack track;
  track.sample_rate = kSampleRate;
  track.samples.assign(static_cast<std::size_t>(duration * kSampleRate), 0.0f);
  const double two_pi = 2.0 * std::acos(-1.0);
  for (const auto& [span, freq, amp] : tones) {
    auto first = static_cast<std::size_t>(span.start * kSampleRate);
    auto last = std::min(track.samples.size(), static_cast<std::size_t>(span.end * kSampleRate));
    for (std::size_t i = first; i < last; ++i) {
      double t = static_cast<double>(i - first) / kSampleRate;
      // Quantize to 16-bit so the track survives a WAV round trip unchanged.
      double v = amp * std::sin(two_pi * freq * t);
      track.samples[i] = static_cast<float>(std::round(v * 32768.0) / 32768.0);
    }
  }
  return track;
}

void append(std::vector<FrameAnnotation>& frames, std::vector<FrameAnnotation> more) {
  frames.insert(frames.end(), more.begin(), more.end());
}

}  // namespace

VideoRecord coherent_keynote() {
  VideoRecord v;
  v.id = "coherent-keynote";
  v.title = "The power of calm";
  v.category = "Education";
  v.duration = 8.0;
  v.frame_rate = 5.0;
  append(v.frames, frame_run(0.0, 5.0, 40, Emotion::kNeutral, 0.875));
  v.frames[12].face_detected = false;
  v.frames[12].emotions = {};
  v.segments = {
      make_segment(0, {0.5, 2.5}, "Today I want to talk about calm",
                   only(Emotion::kNeutral, 0.75), only(Emotion::kNeutral, 0.625)),
      make_segment(1, {2.5, 4.5}, "Calm is a skill you can practice",
                   peaked(Emotion::kNeutral, 0.8125), only(Emotion::kNeutral, 0.9375)),
      make_segment(2, {5.0, 7.0}, "Breathe and you have it",
                   only(Emotion::kNeutral, 0.875), peaked(Emotion::kNeutral, 0.6875)),
  };
  v.audio = tone_track(v.duration, {{{0.5, 2.5}, 160.0, 0.25},
                                    {{2.5, 4.5}, 200.0, 0.5},
                                    {{5.0, 7.0}, 180.0, 0.375}});
  return v;
}

VideoRecord eq1_demo() {
  VideoRecord v;
  v.id = "eq1-demo";
  v.title = "Why spam filters fail";
  v.category = "Technology";
  v.duration = 6.0;
  v.frame_rate = 10.0;
  append(v.frames, frame_run(0.0, 10.0, 20, Emotion::kHappiness, 0.75));
  // Anger with a one-frame flicker of surprise.
  append(v.frames, frame_run(2.0, 10.0, 9, Emotion::kAnger, 0.625));
  append(v.frames, frame_run(2.9, 10.0, 1, Emotion::kSurprise, 0.5));
  append(v.frames, frame_run(3.0, 10.0, 10, Emotion::kAnger, 0.6875));
  // Neutral, then a held switch to happiness inside the last sentence.
  append(v.frames, frame_run(4.0, 10.0, 12, Emotion::kNeutral, 0.8125));
  append(v.frames, frame_run(5.2, 10.0, 8, Emotion::kHappiness, 0.5625));
  for (auto& f : v.frames) f.timestamp = std::round(f.timestamp * 10.0) / 10.0;
  v.segments = {
      make_segment(0, {0.0, 2.0}, "Spam is everywhere and we love to hate it",
                   only(Emotion::kHappiness, 0.875), only(Emotion::kHappiness, 0.75)),
      make_segment(1, {2.0, 4.0}, "Filters learn from our angry clicks",
                   peaked(Emotion::kHappiness, 0.625), peaked(Emotion::kSadness, 0.5625)),
      make_segment(2, {4.0, 6.0}, "So what do we do about it",
                   only(Emotion::kHappiness, 0.6875), only(Emotion::kNeutral, 0.8125)),
  };
  return v;
}

VideoRecord mixed_signals() {
  VideoRecord v;
  v.id = "mixed-signals";
  v.title = "Deadpan humor and the art of timing";
  v.category = "Entertainment";
  v.duration = 14.0;
  v.frame_rate = 4.0;
  append(v.frames, frame_run(0.0, 4.0, 12, Emotion::kNeutral, 0.75));      // 0-3
  append(v.frames, frame_run(3.0, 4.0, 8, Emotion::kNeutral, 0.6875));     // 3-5
  append(v.frames, frame_run(5.0, 4.0, 8, Emotion::kSurprise, 0.625));     // 5-7
  append(v.frames, frame_run(7.0, 4.0, 8, Emotion::kHappiness, 0.9375));   // 7-9
  append(v.frames, frame_run(9.0, 4.0, 8, std::nullopt));                  // 9-11 no face
  append(v.frames, frame_run(11.0, 4.0, 12, Emotion::kContempt, 0.5625));  // 11-14
  v.segments = {
      // face neutral, text neutral, audio sadness -> 1
      make_segment(0, {0.0, 3.0}, "You have you and I have me",
                   only(Emotion::kNeutral, 0.75), only(Emotion::kSadness, 0.625)),
      // face neutral, text happiness, audio fear -> 0
      make_segment(1, {3.0, 5.0}, "This is the funniest thing you will hear",
                   peaked(Emotion::kHappiness, 0.875), only(Emotion::kFear, 0.5)),
      // face surprise, text surprise, audio anger -> 1
      make_segment(2, {5.0, 7.0}, "Wow you did not expect that",
                   only(Emotion::kSurprise, 0.8125), only(Emotion::kAnger, 0.5625)),
      // laughter covers it: audio masked -> absent
      make_segment(3, {7.0, 9.0}, "Everyone laughs here",
                   only(Emotion::kHappiness, 0.9375), only(Emotion::kHappiness, 0.875)),
      // no face detected -> absent
      make_segment(4, {9.0, 11.0}, "Silence is part of the joke",
                   only(Emotion::kNeutral, 0.625), only(Emotion::kNeutral, 0.75)),
      // face contempt, text disgust, audio neutral -> 0
      make_segment(5, {11.0, 13.5}, "You have to hate it a little",
                   peaked(Emotion::kDisgust, 0.6875), peaked(Emotion::kNeutral, 0.625)),
  };
  v.laughter = {{7.25, 8.75}, {12.0, 12.5}};
  v.audio = tone_track(v.duration, {{{0.0, 3.0}, 120.0, 0.25},
                                    {{3.0, 5.0}, 240.0, 0.5},
                                    {{5.0, 7.0}, 300.0, 0.375},
                                    {{7.0, 9.0}, 200.0, 0.625},
                                    {{9.0, 11.0}, 100.0, 0.125},
                                    {{11.0, 13.5}, 150.0, 0.25}});
  return v;
}

std::vector<int> two_cluster_happy_ids() { return {0, 1, 2, 3, 4, 10, 11, 12, 13, 14}; }

VideoRecord two_cluster() {
  VideoRecord v;
  v.id = "two-cluster";
  v.title = "Joy and sorrow";
  v.category = "Psychology";
  v.duration = 41.0;
  v.frame_rate = 4.0;
  const auto happy = two_cluster_happy_ids();
  for (int id = 0; id < 20; ++id) {
    const bool is_happy = std::find(happy.begin(), happy.end(), id) != happy.end();
    const Emotion e = is_happy ? Emotion::kHappiness : Emotion::kSadness;
    const double start = 0.5 + 2.0 * id;
    // Confidences vary per sentence so affinities are not degenerate.
    const double jitter = (id % 5) / 32.0;
    append(v.frames, frame_run(start, 4.0, 8, e, 0.6875 + jitter / 2.0));
    v.segments.push_back(make_segment(
        id, {start, start + 2.0},
        is_happy ? "What a happy wonderful day to love" : "Sad tears and loss remain with us",
        peaked(e, 0.625 + jitter), peaked(e, 0.5625 + jitter)));
  }
  return v;
}

std::vector<VideoRecord> fixture_corpus() {
  return {coherent_keynote(), eq1_demo(), mixed_signals(), two_cluster()};
}

std::filesystem::path fixture_dir() { return EMOCO_FIXTURE_DIR; }
std::filesystem::path corpus_dir() { return fixture_dir() / "corpus"; }
std::filesystem::path golden_dir() { return EMOCO_GOLDEN_DIR; }

}  // namespace emoco::testing

namespace emoco::testing {

std::vector<std::vector<double>> two_cluster_vectors(std::uint64_t seed, double jitter) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(0.0, jitter);
  std::vector<std::vector<double>> out;
  for (int i = 0; i < 20; ++i) {
    std::vector<double> v(24);
    for (double& x : v) x = jitter > 0.0 ? noise(rng) : 0.0;
    const std::size_t k = index_of(i < 10 ? Emotion::kHappiness : Emotion::kSadness);
    for (std::size_t block = 0; block < 3; ++block) v[block * kEmotionCount + k] = 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

std::shared_ptr<CorpusStore> load_fixture_store() {
  auto store = std::make_shared<CorpusStore>();
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir())) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  for (const auto& dir : dirs) {
    auto manifest = BundleManifest::from_directory(dir);
    store->add(load_bundle(manifest));
  }
  return store;
}

std::shared_ptr<CorpusStore> make_store(std::vector<VideoRecord> records) {
  auto store = std::make_shared<CorpusStore>();
  // Round trip through the bundle encoding so masking and sorting match disk.
  for (const auto& r : records) store->add(parse_bundle(encode_bundle(r), r.audio));
  return store;
}

namespace {

HttpRequest get(std::string path, std::map<std::string, std::string> query = {}) {
  HttpRequest r;
  r.path = std::move(path);
  r.query = std::move(query);
  return r;
}

HttpRequest post(std::string path, std::string body) {
  HttpRequest r;
  r.method = "POST";
  r.path = std::move(path);
  r.body = std::move(body);
  return r;
}

HttpRequest ranged(std::string path, std::string range) {
  auto r = get(std::move(path));
  r.range = std::move(range);
  return r;
}

}  // namespace

std::vector<GoldenCase> golden_cases() {
  return {
      {"videos", get("/videos")},
      {"videos-by-coherence", get("/videos", {{"sort", "coherence"}})},
      {"videos-by-face-happiness", get("/videos", {{"sort", "percentage:face:happiness"}})},
      {"videos-keyword-spam", get("/videos", {{"q", "spam"}})},
      {"video-eq1-demo", get("/videos/eq1-demo")},
      {"video-mixed-signals", get("/videos/mixed-signals")},
      {"sankey-eq1-demo", get("/videos/eq1-demo/sankey")},
      {"sankey-mixed-signals", get("/videos/mixed-signals/sankey")},
      {"sankey-coherent-keynote", get("/videos/coherent-keynote/sankey")},
      {"projection-two-cluster", get("/videos/two-cluster/projection")},
      {"projection-eq1-demo-literal3",
       get("/videos/eq1-demo/projection", {{"mode", "literal3"}, {"seed", "7"}})},
      {"sentence-mixed-signals-1", get("/videos/mixed-signals/sentences/1")},
      {"sentence-eq1-demo-2", get("/videos/eq1-demo/sentences/2")},
      {"words-mixed-signals", get("/videos/mixed-signals/words")},
      {"words-mixed-signals-duration",
       get("/videos/mixed-signals/words", {{"sort", "duration"}, {"q", "ha"}})},
      {"words-eq1-demo-anger",
       get("/videos/eq1-demo/words", {{"sort", "category-duration:anger"}})},
      {"selection-link-eq1-demo",
       post("/videos/eq1-demo/selection",
            R"({"link":{"stage":"face-text","from":"anger","to":"happiness"}})")},
      {"selection-node-mixed-signals",
       post("/videos/mixed-signals/selection", R"({"node":{"channel":"text","category":"happiness"}})")},
      {"selection-brush-eq1-demo",
       post("/videos/eq1-demo/selection",
            R"({"brush":{"x0":-1e9,"y0":-1e9,"x1":1e9,"y1":1e9}})")},
      {"media-coherent-keynote", get("/media/coherent-keynote")},
      {"media-coherent-keynote-range", ranged("/media/coherent-keynote", "bytes=0-43")},
      {"error-media-without-audio", get("/media/eq1-demo")},
      {"error-unknown-video", get("/videos/nope/sankey")},
      {"error-bad-sort", get("/videos", {{"sort", "loudness"}})},
      {"error-unknown-sentence", get("/videos/eq1-demo/sentences/99")},
      {"error-method", post("/videos", "")},
  };
}

nlohmann::json golden_record(const HttpResponse& response) {
  if (response.content_type != "application/json") {
    // Binary payloads are pinned by size and digest.
    nlohmann::json headers = nlohmann::json::object();
    for (const auto& [k, v] : response.headers) headers[k] = v;
    return {{"status", response.status},
            {"contentType", response.content_type},
            {"headers", headers},
            {"bytes", response.body.size()},
            {"sha256", sha256_hex(response.body)}};
  }
  nlohmann::json body = nlohmann::json::parse(response.body, nullptr, false);
  if (body.is_discarded()) body = response.body;
  return {{"status", response.status}, {"body", body}};
}

namespace {

bool near_at(const nlohmann::json& a, const nlohmann::json& b, double tol, std::string path,
             std::string* where) {
  auto fail = [&] {
    if (where) *where = path.empty() ? "/" : path;
    return false;
  };
  if (a.is_number() && b.is_number()) {
    return std::abs(a.get<double>() - b.get<double>()) <= tol ? true : fail();
  }
  if (a.type() != b.type()) return fail();
  if (a.is_object()) {
    if (a.size() != b.size()) return fail();
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return fail();
      if (!near_at(it.value(), b.at(it.key()), tol, path + "/" + it.key(), where)) return false;
    }
    return true;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return fail();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!near_at(a[i], b[i], tol, path + "/" + std::to_string(i), where)) return false;
    }
    return true;
  }
  return a == b ? true : fail();
}

}  // namespace

bool json_near(const nlohmann::json& a, const nlohmann::json& b, double tolerance,
               std::string* where) {
  return near_at(a, b, tolerance, "", where);
}

}  // namespace emoco::testing
