#pragma once

#include <string>

#include "sprobe/wave.hpp"

namespace sprobe {

// RIFF WAV I/O, interleaved channels. The writer emits IEEE float32 by
// default (exact for this pipeline's dynamic range) or 16-bit PCM when
// requested; the reader accepts 16-bit PCM, 32-bit PCM and float32.
void write_wav(const std::string& path, const MultichannelWave& wave,
               bool pcm16 = false);

MultichannelWave read_wav(const std::string& path);

}  // namespace sprobe
