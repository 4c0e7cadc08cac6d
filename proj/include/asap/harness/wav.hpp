// Copyright 2026 The ASAP-DOA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Minimal RIFF/WAVE reader and writer for multichannel recordings.
// Supported encodings: 16-bit PCM and 32-bit IEEE float, plain or
// WAVE_FORMAT_EXTENSIBLE. Channel order is microphone order.

#ifndef ASAP_HARNESS_WAV_HPP_
#define ASAP_HARNESS_WAV_HPP_

#include <optional>
#include <string>

#include "asap/spectral.hpp"

namespace asap {

enum class WavEncoding { kPcm16, kFloat32 };

// PCM16 samples are scaled by 1/32768. When expected_channels is given the
// file must have exactly that many channels. Throws std::runtime_error.
MultichannelSignal load_wav(const std::string& path,
                            std::optional<int> expected_channels = std::nullopt);

// PCM16 output is rounded and clipped to [-32768, 32767].
void save_wav(const std::string& path, const MultichannelSignal& signal, WavEncoding encoding);

}  // namespace asap

#endif  // ASAP_HARNESS_WAV_HPP_
