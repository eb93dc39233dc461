#include "jmfar/wav.hpp"

#include <cstring>
#include <fstream>
#include <vector>

#include "jmfar/errors.hpp"

namespace jmfar {

namespace {

uint32_t read_u32(const unsigned char* p) {
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const unsigned char* p) {
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& v, uint32_t x) {
    v.push_back(x & 0xff);
    v.push_back((x >> 8) & 0xff);
    v.push_back((x >> 16) & 0xff);
    v.push_back((x >> 24) & 0xff);
}

void put_u16(std::vector<unsigned char>& v, uint16_t x) {
    v.push_back(x & 0xff);
    v.push_back((x >> 8) & 0xff);
}

}  // namespace

RawAudio read_wav(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FormatError("cannot open WAV file: " + path);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                     std::istreambuf_iterator<char>());

    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        throw FormatError("not a RIFF/WAVE file: " + path);

    uint16_t format = 0, channels = 0, bits = 0;
    uint32_t sample_rate = 0;
    bool have_fmt = false;
    const unsigned char* data = nullptr;
    uint32_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const unsigned char* hdr = bytes.data() + pos;
        const uint32_t chunk_size = read_u32(hdr + 4);
        const std::size_t body = pos + 8;
        if (body + chunk_size > bytes.size())
            throw FormatError("truncated WAV chunk: " + path);

        if (std::memcmp(hdr, "fmt ", 4) == 0) {
            if (chunk_size < 16) throw FormatError("short fmt chunk: " + path);
            format = read_u16(bytes.data() + body);
            channels = read_u16(bytes.data() + body + 2);
            sample_rate = read_u32(bytes.data() + body + 4);
            bits = read_u16(bytes.data() + body + 14);
            have_fmt = true;
        } else if (std::memcmp(hdr, "data", 4) == 0) {
            data = bytes.data() + body;
            data_size = chunk_size;
        }
        pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
    }

    if (!have_fmt || data == nullptr) throw FormatError("missing fmt/data chunk: " + path);
    if (format != 1) throw UnsupportedError("only PCM WAV is supported: " + path);
    if (bits != 16) throw UnsupportedError("only 16-bit WAV is supported: " + path);
    if (channels == 0 || channels > 2) throw UnsupportedError("only mono/stereo WAV: " + path);
    if (sample_rate == 0) throw FormatError("zero sample rate: " + path);
    if (data_size % (2u * channels) != 0) throw FormatError("ragged data chunk: " + path);

    RawAudio audio;
    audio.sample_rate_hz = static_cast<int>(sample_rate);
    const std::size_t frames = data_size / (2u * channels);
    audio.samples.resize(frames);
    for (std::size_t f = 0; f < frames; ++f) {
        if (channels == 1) {
            audio.samples[f] = static_cast<int16_t>(read_u16(data + 2 * f));
        } else {
            const auto l = static_cast<int16_t>(read_u16(data + 4 * f));
            const auto r = static_cast<int16_t>(read_u16(data + 4 * f + 2));
            audio.samples[f] = static_cast<int16_t>((static_cast<int>(l) + r) / 2);
        }
    }
    return audio;
}

void write_wav(const std::string& path, const RawAudio& audio) {
    const uint32_t data_size = static_cast<uint32_t>(audio.samples.size() * 2);
    std::vector<unsigned char> out;
    out.reserve(44 + data_size);

    out.insert(out.end(), {'R', 'I', 'F', 'F'});
    put_u32(out, 36 + data_size);
    out.insert(out.end(), {'W', 'A', 'V', 'E'});
    out.insert(out.end(), {'f', 'm', 't', ' '});
    put_u32(out, 16);
    put_u16(out, 1);  // PCM
    put_u16(out, 1);  // mono
    put_u32(out, static_cast<uint32_t>(audio.sample_rate_hz));
    put_u32(out, static_cast<uint32_t>(audio.sample_rate_hz) * 2);
    put_u16(out, 2);
    put_u16(out, 16);
    out.insert(out.end(), {'d', 'a', 't', 'a'});
    put_u32(out, data_size);
    for (int16_t s : audio.samples) put_u16(out, static_cast<uint16_t>(s));

    std::ofstream os(path, std::ios::binary);
    if (!os) throw FormatError("cannot open WAV file for writing: " + path);
    os.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!os) throw FormatError("failed writing WAV file: " + path);
}

}  // namespace jmfar
