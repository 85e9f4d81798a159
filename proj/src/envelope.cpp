#include "rcm/envelope.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace rcm {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {'R', 'C', 'M', '1'};

std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k)
            c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
        table[i] = c;
    }
    return table;
}

void put_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32_be(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

// Reassembles whole bytes from an MSB-first bit stream.
std::vector<std::uint8_t> bytes_at(const BitStream& bits, std::size_t bit_pos,
                                   std::size_t count) {
    std::vector<std::uint8_t> out(count, 0);
    for (std::size_t i = 0; i < count * 8; ++i)
        out[i / 8] = static_cast<std::uint8_t>((out[i / 8] << 1) |
                                               bits[bit_pos + i]);
    return out;
}

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept {
    static const std::array<std::uint32_t, 256> table = make_crc_table();
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::uint8_t byte : data) c = table[(c ^ byte) & 0xFF] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

BitStream envelope_encode(std::span<const std::uint8_t> payload) {
    if (payload.size() > 0xFFFFFFFFull)
        throw UsageError("payload exceeds the 4 GiB frame limit");
    std::vector<std::uint8_t> frame;
    frame.reserve(kEnvelopeHeaderBytes + payload.size());
    frame.insert(frame.end(), kMagic.begin(), kMagic.end());
    put_u32_be(frame, static_cast<std::uint32_t>(payload.size()));
    put_u32_be(frame, crc32(payload));
    frame.insert(frame.end(), payload.begin(), payload.end());
    return BitStream::from_bytes(frame);
}

std::vector<std::uint8_t> envelope_decode(const BitStream& bits) {
    if (bits.size() < kEnvelopeHeaderBits)
        throw Truncated("stream holds " + std::to_string(bits.size()) +
                        " bits, shorter than the 96-bit frame header");
    const std::vector<std::uint8_t> header =
        bytes_at(bits, 0, kEnvelopeHeaderBytes);
    if (!std::equal(kMagic.begin(), kMagic.end(), header.begin()))
        throw EnvelopeCorrupt("frame magic mismatch");
    const std::uint32_t length = get_u32_be(header.data() + 4);
    const std::uint32_t expected_crc = get_u32_be(header.data() + 8);
    const std::size_t need = kEnvelopeHeaderBits + std::size_t(length) * 8;
    if (bits.size() < need)
        throw Truncated("frame declares " + std::to_string(length) +
                        " payload bytes but the stream ends early");
    std::vector<std::uint8_t> payload =
        bytes_at(bits, kEnvelopeHeaderBits, length);
    if (crc32(payload) != expected_crc)
        throw EnvelopeCorrupt("payload checksum mismatch");
    return payload;
}

}  // namespace rcm
