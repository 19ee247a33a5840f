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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace scatter {

struct WavData {
  std::vector<double> samples;  // mono, in [-1, 1]
  std::uint32_t sample_rate = 0;
  std::uint16_t channels = 0;
};

enum class WavEncoding { kPcm8, kPcm16, kPcm24, kPcm32, kFloat32, kFloat64 };

// Reads integer PCM (8/16/24/32 bit) or IEEE float (32/64 bit) WAV files,
// including WAVE_FORMAT_EXTENSIBLE. Channels are averaged to mono.
// Throws FormatError with the offending byte offset.
WavData read_wav(std::span<const std::uint8_t> bytes);
WavData ingest_wav(const std::filesystem::path& path);

// Interleaved frames; samples.size() must be a multiple of channels.
std::vector<std::uint8_t> encode_wav(std::span<const double> interleaved, std::uint16_t channels,
                                     std::uint32_t sample_rate, WavEncoding encoding);
void write_wav(const std::filesystem::path& path, std::span<const double> interleaved,
               std::uint16_t channels, std::uint32_t sample_rate, WavEncoding encoding);

}  // namespace scatter
