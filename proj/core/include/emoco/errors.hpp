#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace emoco {

enum class ErrorCode {
  kNoDetection,
  kNoFaces,
  kNoAudio,
  kDegenerateInput,
  kUsage,
  kNotFound,
  kParse,
  kValidation,
  kIo,
};

std::string_view to_string(ErrorCode code);

/// Exception type thrown by every emoco operation that can fail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace emoco
