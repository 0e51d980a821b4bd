#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "emoco/fusion.hpp"
#include "emoco/prosody.hpp"
#include "emoco/tsne.hpp"

using namespace emoco;

namespace {

EmotionDistribution random_distribution(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  EmotionDistribution d;
  for (auto e : kAllEmotions) d.set(e, u(rng));
  return d;
}

// A video with `segments` back-to-back sentences of 2 s at 25 fps.
VideoRecord make_video(int segments) {
  std::mt19937_64 rng(7);
  VideoRecord v;
  v.id = "bench";
  v.frame_rate = 25.0;
  v.duration = segments * 2.0;
  const int frames = static_cast<int>(v.duration * v.frame_rate);
  for (int i = 0; i < frames; ++i) {
    FrameAnnotation f;
    f.timestamp = i / v.frame_rate;
    f.face_detected = i % 17 != 0;
    if (f.face_detected) f.emotions = random_distribution(rng);
    v.frames.push_back(f);
  }
  for (int s = 0; s < segments; ++s) {
    Segment seg;
    seg.id = s;
    seg.span = {s * 2.0, s * 2.0 + 2.0};
    for (int w = 0; w < 5; ++w) {
      seg.words.push_back({"word", {seg.span.start + w * 0.4, seg.span.start + w * 0.4 + 0.35}});
    }
    seg.text_emotion = random_distribution(rng);
    seg.audio_emotion = random_distribution(rng);
    v.segments.push_back(std::move(seg));
  }
  return v;
}

void BM_FuseVideo(benchmark::State& state) {
  const auto v = make_video(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fuse_video(v));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FuseVideo)->Arg(10)->Arg(50)->Arg(200);

void BM_FuseWords(benchmark::State& state) {
  const auto v = make_video(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fuse_words(v));
}
BENCHMARK(BM_FuseWords)->Arg(50);

void BM_Tsne(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> x(static_cast<std::size_t>(state.range(0)), std::vector<double>(24));
  for (auto& row : x) {
    for (double& v : row) v = u(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(tsne(x));
}
BENCHMARK(BM_Tsne)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Pitch(benchmark::State& state) {
  const int sr = static_cast<int>(state.range(0));
  std::vector<float> x(static_cast<std::size_t>(sr));
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = static_cast<float>(0.5 * std::sin(2 * M_PI * 180.0 * static_cast<double>(i) / sr));
  }
  for (auto _ : state) benchmark::DoNotOptimize(pitch(x, sr, 0.04, 0.01, 75.0, 500.0));
  state.SetLabel("1 s of audio");
}
BENCHMARK(BM_Pitch)->Arg(8000)->Arg(16000)->Arg(44100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
