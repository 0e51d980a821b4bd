#include "emoco/model.hpp"

#include <algorithm>
#include <cctype>

namespace emoco {

double TimeSpan::overlap(const TimeSpan& other) const {
  return std::max(0.0, std::min(end, other.end) - std::max(start, other.start));
}

std::string WordToken::normalized() const {
  std::string out = text;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

FrameRange frames_in(std::span<const FrameAnnotation> frames, const TimeSpan& span) {
  auto by_time = [](const FrameAnnotation& f, double t) { return f.timestamp < t; };
  auto lo = std::lower_bound(frames.begin(), frames.end(), span.start, by_time);
  auto hi = std::lower_bound(lo, frames.end(), span.end, by_time);
  return {static_cast<std::size_t>(lo - frames.begin()),
          static_cast<std::size_t>(hi - frames.begin())};
}

}  // namespace emoco
