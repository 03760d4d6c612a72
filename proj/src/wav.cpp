#include "sprobe/wav.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

namespace sprobe {

namespace {

void put_u32(std::vector<char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u16(std::vector<char>& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

void write_wav(const std::string& path, const MultichannelWave& wave, bool pcm16) {
  wave.check_rectangular();
  const int channels = wave.channels();
  const std::size_t frames = wave.length();
  const std::uint16_t bits = pcm16 ? 16 : 32;
  const std::uint16_t block_align = static_cast<std::uint16_t>(channels * bits / 8);
  const std::uint32_t data_bytes = static_cast<std::uint32_t>(frames * block_align);

  std::vector<char> out;
  out.reserve(44 + data_bytes);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_bytes);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, pcm16 ? 1 : 3);  // PCM or IEEE float
  put_u16(out, static_cast<std::uint16_t>(channels));
  put_u32(out, static_cast<std::uint32_t>(wave.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(wave.sample_rate) * block_align);
  put_u16(out, block_align);
  put_u16(out, bits);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_bytes);

  for (std::size_t i = 0; i < frames; ++i) {
    for (int c = 0; c < channels; ++c) {
      const double v = wave.samples[c][i];
      if (pcm16) {
        double scaled = v * 32767.0;
        if (scaled > 32767.0) scaled = 32767.0;
        if (scaled < -32768.0) scaled = -32768.0;
        const std::int16_t s = static_cast<std::int16_t>(std::lround(scaled));
        put_u16(out, static_cast<std::uint16_t>(s));
      } else {
        const float f = static_cast<float>(v);
        std::uint32_t u;
        std::memcpy(&u, &f, 4);
        put_u32(out, u);
      }
    }
  }

  std::ofstream fs(path, std::ios::binary | std::ios::trunc);
  if (!fs) throw DataError("cannot open for writing: " + path);
  fs.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!fs) throw DataError("write failed: " + path);
}

MultichannelWave read_wav(const std::string& path) {
  std::ifstream fs(path, std::ios::binary);
  if (!fs) throw DataError("cannot open: " + path);
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(fs)),
                                 std::istreambuf_iterator<char>());
  if (buf.size() < 44 || std::memcmp(buf.data(), "RIFF", 4) != 0 ||
      std::memcmp(buf.data() + 8, "WAVE", 4) != 0)
    throw DataError("not a RIFF WAV file: " + path);

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  std::size_t data_off = 0, data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const char* id = reinterpret_cast<const char*>(buf.data() + pos);
    const std::uint32_t len = get_u32(buf.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(id, "fmt ", 4) == 0 && body + 16 <= buf.size()) {
      format = get_u16(buf.data() + body);
      channels = get_u16(buf.data() + body + 2);
      sample_rate = get_u32(buf.data() + body + 4);
      bits = get_u16(buf.data() + body + 14);
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_off = body;
      data_len = std::min<std::size_t>(len, buf.size() - body);
    }
    pos = body + len + (len & 1);  // chunks are word-aligned
  }

  if (format == 0xfffe) format = bits == 32 ? 3 : 1;  // extensible: trust bits
  if (channels == 0 || data_off == 0) throw DataError("malformed WAV: " + path);
  const bool is_float = format == 3;
  if (!is_float && format != 1) throw DataError("unsupported WAV format: " + path);
  if (bits != 16 && bits != 32) throw DataError("unsupported WAV bit depth: " + path);

  const std::size_t bytes_per = bits / 8;
  const std::size_t frames = data_len / (bytes_per * channels);
  MultichannelWave wave(channels, frames, static_cast<int>(sample_rate));
  const unsigned char* p = buf.data() + data_off;
  for (std::size_t i = 0; i < frames; ++i) {
    for (int c = 0; c < channels; ++c) {
      double v;
      if (is_float) {
        float f;
        std::memcpy(&f, p, 4);
        v = f;
      } else if (bits == 16) {
        const std::int16_t s = static_cast<std::int16_t>(get_u16(p));
        v = s / 32768.0;
      } else {
        const std::int32_t s = static_cast<std::int32_t>(get_u32(p));
        v = s / 2147483648.0;
      }
      wave.samples[c][i] = v;
      p += bytes_per;
    }
  }
  return wave;
}

}  // namespace sprobe
