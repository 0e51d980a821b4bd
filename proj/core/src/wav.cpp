#include "emoco/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "emoco/errors.hpp"

namespace emoco {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = bytes_[pos_] | (bytes_[pos_ + 1] << 8) | (bytes_[pos_ + 2] << 16) |
                      (static_cast<std::uint32_t>(bytes_[pos_ + 3]) << 24);
    pos_ += 4;
    return v;
  }
  std::uint16_t u16() {
    need(2);
    auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::string tag() {
    need(4);
    std::string t(reinterpret_cast<const char*>(bytes_.data() + pos_), 4);
    pos_ += 4;
    return t;
  }
  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  void skip(std::size_t n) { pos_ += std::min(n, remaining()); }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) {
      throw Error(ErrorCode::kParse,
                  "wav: truncated at byte offset " + std::to_string(pos_));
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}
void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

}  // namespace

AudioTrack parse_wav(std::span<const std::uint8_t> bytes) {
  ByteReader in(bytes);
  if (in.tag() != "RIFF") throw Error(ErrorCode::kParse, "wav: missing RIFF header at offset 0");
  in.u32();
  if (in.tag() != "WAVE") throw Error(ErrorCode::kParse, "wav: missing WAVE tag at offset 8");

  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint32_t sample_rate = 0;
  bool have_fmt = false;

  while (in.remaining() >= 8) {
    const std::size_t chunk_offset = in.offset();
    std::string id = in.tag();
    std::uint32_t size = in.u32();
    if (id == "fmt ") {
      if (size < 16) {
        throw Error(ErrorCode::kParse,
                    "wav: fmt chunk too small at offset " + std::to_string(chunk_offset));
      }
      auto body = in.take(size);
      ByteReader fmt(body);
      std::uint16_t format = fmt.u16();
      channels = fmt.u16();
      sample_rate = fmt.u32();
      fmt.u32();  // byte rate
      fmt.u16();  // block align
      bits = fmt.u16();
      if (format == kFormatExtensible && size >= 26) {
        fmt.u16();  // cbSize
        fmt.u16();  // valid bits
        fmt.u32();  // channel mask
        format = fmt.u16();
      }
      if (format != kFormatPcm || bits != 16) {
        throw Error(ErrorCode::kParse, "wav: only 16-bit PCM is supported");
      }
      if (channels == 0 || sample_rate == 0) {
        throw Error(ErrorCode::kParse, "wav: zero channels or sample rate");
      }
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) {
        throw Error(ErrorCode::kParse,
                    "wav: data chunk before fmt at offset " + std::to_string(chunk_offset));
      }
      std::size_t usable = std::min<std::size_t>(size, in.remaining());
      auto body = in.take(usable);
      const std::size_t frame_bytes = 2u * channels;
      AudioTrack track;
      track.sample_rate = static_cast<int>(sample_rate);
      track.samples.reserve(body.size() / frame_bytes);
      for (std::size_t pos = 0; pos + frame_bytes <= body.size(); pos += frame_bytes) {
        auto raw = static_cast<std::int16_t>(body[pos] | (body[pos + 1] << 8));
        track.samples.push_back(static_cast<float>(raw) / 32768.0f);
      }
      return track;
    } else {
      in.skip(size);
    }
    if (size % 2 == 1) in.skip(1);
  }
  throw Error(ErrorCode::kParse, "wav: no data chunk");
}

AudioTrack read_wav(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                                  std::istreambuf_iterator<char>());
  try {
    return parse_wav(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_wav(const AudioTrack& track) {
  const auto data_bytes = static_cast<std::uint32_t>(track.samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(track.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(track.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (float s : track.samples) {
    double scaled = std::round(static_cast<double>(s) * 32768.0);
    auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    put_u16(out, static_cast<std::uint16_t>(v));
  }
  return out;
}

void write_wav(const std::filesystem::path& path, const AudioTrack& track) {
  auto bytes = encode_wav(track);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  file.write(reinterpret_cast<const char*>(bytes.data()),
             static_cast<std::streamsize>(bytes.size()));
}

}  // namespace emoco
