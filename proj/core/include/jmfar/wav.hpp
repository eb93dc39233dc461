#pragma once

#include <string>

#include "jmfar/types.hpp"

namespace jmfar {

// PCM 16-bit WAV reader. Stereo is averaged to mono. Malformed or truncated
// files raise FormatError; non-PCM or non-16-bit encodings raise
// UnsupportedError. Never returns a partial result.
RawAudio read_wav(const std::string& path);

// Mono 16-bit PCM writer.
void write_wav(const std::string& path, const RawAudio& audio);

}  // namespace jmfar
