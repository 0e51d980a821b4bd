#pragma once

#include <string>
#include <vector>

#include "emoco/model.hpp"

namespace emoco {

struct Violation {
  std::string path;    // e.g. "segments[3].words[1]"
  std::string reason;  // e.g. "word outside segment"

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Checks every structural invariant of a video record. Never throws.
ValidationReport validate(const VideoRecord& video);

}  // namespace emoco
