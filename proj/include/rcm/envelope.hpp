#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rcm/bitstream.hpp"

namespace rcm {

// CRC-32 as used by zip and ethernet: reflected polynomial 0xEDB88320,
// initial value and final xor all ones.
std::uint32_t crc32(std::span<const std::uint8_t> data) noexcept;

// Self-describing payload frame carried inside the watermark bitstream:
//   "RCM1" | payload length (u32, big-endian) | crc32(payload) (u32, BE)
//   | payload bytes
// Bits are laid out MSB-first per byte, so the header occupies the first
// 96 bits of the stream.
inline constexpr std::size_t kEnvelopeHeaderBytes = 12;
inline constexpr std::size_t kEnvelopeHeaderBits = kEnvelopeHeaderBytes * 8;

BitStream envelope_encode(std::span<const std::uint8_t> payload);

// Decodes the frame at the head of the stream; bits after the declared
// payload length are ignored (the embedder pads slots with zeros).
std::vector<std::uint8_t> envelope_decode(const BitStream& bits);

}  // namespace rcm
