// Copyright 2026 The scatter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "scatter/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "scatter/errors.hpp"

namespace scatter {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::size_t size() const { return bytes_.size(); }

  void need(std::size_t offset, std::size_t count, const char* what) const {
    if (offset > bytes_.size() || count > bytes_.size() - offset)
      throw FormatError(std::string("truncated ") + what, offset);
  }
  std::uint16_t u16(std::size_t at) const {
    need(at, 2, "field");
    return static_cast<std::uint16_t>(bytes_[at] | (bytes_[at + 1] << 8));
  }
  std::uint32_t u32(std::size_t at) const {
    need(at, 4, "field");
    return static_cast<std::uint32_t>(bytes_[at]) | (static_cast<std::uint32_t>(bytes_[at + 1]) << 8) |
           (static_cast<std::uint32_t>(bytes_[at + 2]) << 16) |
           (static_cast<std::uint32_t>(bytes_[at + 3]) << 24);
  }
  std::uint64_t u64(std::size_t at) const {
    return static_cast<std::uint64_t>(u32(at)) | (static_cast<std::uint64_t>(u32(at + 4)) << 32);
  }
  bool tag(std::size_t at, const char* id) const {
    need(at, 4, "chunk id");
    return std::memcmp(bytes_.data() + at, id, 4) == 0;
  }
  std::uint8_t u8(std::size_t at) const { return bytes_[at]; }

 private:
  std::span<const std::uint8_t> bytes_;
};

struct Format {
  std::uint16_t code = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t bits = 0;
  std::uint16_t block_align = 0;
};

double decode_sample(const Reader& r, std::size_t at, const Format& fmt) {
  if (fmt.code == kFormatFloat) {
    if (fmt.bits == 32) return static_cast<double>(std::bit_cast<float>(r.u32(at)));
    return std::bit_cast<double>(r.u64(at));
  }
  switch (fmt.bits) {
    case 8:
      return (static_cast<double>(r.u8(at)) - 128.0) / 128.0;
    case 16:
      return static_cast<double>(static_cast<std::int16_t>(r.u16(at))) / 32768.0;
    case 24: {
      std::uint32_t v = static_cast<std::uint32_t>(r.u8(at)) |
                        (static_cast<std::uint32_t>(r.u8(at + 1)) << 8) |
                        (static_cast<std::uint32_t>(r.u8(at + 2)) << 16);
      if (v & 0x800000u) v |= 0xFF000000u;
      return static_cast<double>(static_cast<std::int32_t>(v)) / 8388608.0;
    }
    default:
      return static_cast<double>(static_cast<std::int32_t>(r.u32(at))) / 2147483648.0;
  }
}

Format parse_format(const Reader& r, std::size_t body, std::uint32_t size) {
  if (size < 16) throw FormatError("fmt chunk shorter than 16 bytes", body);
  Format fmt;
  fmt.code = r.u16(body);
  fmt.channels = r.u16(body + 2);
  fmt.rate = r.u32(body + 4);
  fmt.block_align = r.u16(body + 12);
  fmt.bits = r.u16(body + 14);

  if (fmt.code == kFormatExtensible) {
    if (size < 40) throw FormatError("extensible fmt chunk shorter than 40 bytes", body);
    fmt.code = r.u16(body + 24);
  }
  if (fmt.code != kFormatPcm && fmt.code != kFormatFloat)
    throw FormatError("unsupported WAV codec " + std::to_string(fmt.code), body);
  if (fmt.channels == 0) throw FormatError("zero channels", body + 2);

  const bool ok = fmt.code == kFormatPcm
                      ? (fmt.bits == 8 || fmt.bits == 16 || fmt.bits == 24 || fmt.bits == 32)
                      : (fmt.bits == 32 || fmt.bits == 64);
  if (!ok) throw FormatError("unsupported bit depth " + std::to_string(fmt.bits), body + 14);
  if (fmt.block_align != fmt.channels * (fmt.bits / 8))
    throw FormatError("block alignment does not match channels and bit depth", body + 12);
  return fmt;
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* id) { out.insert(out.end(), id, id + 4); }

std::int64_t quantize(double v, double scale, std::int64_t lo, std::int64_t hi) {
  return std::clamp(static_cast<std::int64_t>(std::llround(v * scale)), lo, hi);
}

}  // namespace

WavData read_wav(std::span<const std::uint8_t> bytes) {
  const Reader r(bytes);
  if (bytes.size() < 12) throw FormatError("file shorter than a RIFF header", bytes.size());
  if (!r.tag(0, "RIFF")) throw FormatError("missing RIFF signature", 0);
  if (!r.tag(8, "WAVE")) throw FormatError("missing WAVE form type", 8);

  std::optional<Format> fmt;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t size = r.u32(pos + 4);
    const std::size_t body = pos + 8;
    if (r.tag(pos, "fmt ")) {
      r.need(body, size, "fmt chunk");
      fmt = parse_format(r, body, size);
    } else if (r.tag(pos, "data")) {
      if (!fmt) throw FormatError("data chunk before fmt chunk", pos);
      r.need(body, size, "data chunk");
      const std::size_t frames = size / fmt->block_align;
      const std::size_t width = fmt->bits / 8;
      WavData out;
      out.sample_rate = fmt->rate;
      out.channels = fmt->channels;
      out.samples.resize(frames);
      for (std::size_t f = 0; f < frames; ++f) {
        double sum = 0.0;
        for (std::size_t c = 0; c < fmt->channels; ++c)
          sum += decode_sample(r, body + f * fmt->block_align + c * width, *fmt);
        out.samples[f] = sum / fmt->channels;
      }
      return out;
    } else {
      r.need(body, size, "chunk");
    }
    pos = body + size + (size & 1u);
  }
  throw FormatError(fmt ? "missing data chunk" : "missing fmt chunk", pos);
}

WavData ingest_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return read_wav(bytes);
}

std::vector<std::uint8_t> encode_wav(std::span<const double> interleaved, std::uint16_t channels,
                                     std::uint32_t sample_rate, WavEncoding encoding) {
  if (channels == 0 || interleaved.size() % channels != 0)
    throw ParameterError("encode_wav: sample count is not a multiple of the channel count");

  std::uint16_t bits = 16;
  std::uint16_t code = kFormatPcm;
  switch (encoding) {
    case WavEncoding::kPcm8: bits = 8; break;
    case WavEncoding::kPcm16: bits = 16; break;
    case WavEncoding::kPcm24: bits = 24; break;
    case WavEncoding::kPcm32: bits = 32; break;
    case WavEncoding::kFloat32: bits = 32; code = kFormatFloat; break;
    case WavEncoding::kFloat64: bits = 64; code = kFormatFloat; break;
  }
  const std::uint16_t align = static_cast<std::uint16_t>(channels * (bits / 8));
  const auto data_size = static_cast<std::uint32_t>(interleaved.size() * (bits / 8));

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size + 1);
  put_tag(out, "RIFF");
  put32(out, 36 + data_size + (data_size & 1u));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put32(out, 16);
  put16(out, code);
  put16(out, channels);
  put32(out, sample_rate);
  put32(out, sample_rate * align);
  put16(out, align);
  put16(out, bits);
  put_tag(out, "data");
  put32(out, data_size);

  for (double v : interleaved) {
    switch (encoding) {
      case WavEncoding::kPcm8:
        out.push_back(static_cast<std::uint8_t>(quantize(v, 128.0, -128, 127) + 128));
        break;
      case WavEncoding::kPcm16:
        put16(out, static_cast<std::uint16_t>(quantize(v, 32768.0, -32768, 32767)));
        break;
      case WavEncoding::kPcm24: {
        const auto q = static_cast<std::uint32_t>(quantize(v, 8388608.0, -8388608, 8388607));
        for (int i = 0; i < 3; ++i) out.push_back(static_cast<std::uint8_t>((q >> (8 * i)) & 0xFF));
        break;
      }
      case WavEncoding::kPcm32:
        put32(out, static_cast<std::uint32_t>(quantize(v, 2147483648.0, INT32_MIN, INT32_MAX)));
        break;
      case WavEncoding::kFloat32:
        put32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
        break;
      case WavEncoding::kFloat64: {
        const auto b = std::bit_cast<std::uint64_t>(v);
        put32(out, static_cast<std::uint32_t>(b & 0xFFFFFFFFu));
        put32(out, static_cast<std::uint32_t>(b >> 32));
        break;
      }
    }
  }
  if (data_size & 1u) out.push_back(0);
  return out;
}

void write_wav(const std::filesystem::path& path, std::span<const double> interleaved,
               std::uint16_t channels, std::uint32_t sample_rate, WavEncoding encoding) {
  const std::vector<std::uint8_t> bytes = encode_wav(interleaved, channels, sample_rate, encoding);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

}  // namespace scatter
