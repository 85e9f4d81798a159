#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rcm/errors.hpp"

namespace rcm {

// A sequence of bits with an exact length. Byte conversions are MSB-first:
// bit 0 of the stream is the most significant bit of byte 0.
class BitStream {
public:
    BitStream() = default;

    // Takes a vector whose elements must each be 0 or 1.
    explicit BitStream(std::vector<std::uint8_t> bits);

    static BitStream from_bytes(std::span<const std::uint8_t> bytes);

    // Requires size() to be a multiple of 8.
    std::vector<std::uint8_t> to_bytes() const;

    void push_back(int bit);
    void append(const BitStream& other);
    BitStream slice(std::size_t pos, std::size_t count) const;

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }
    int operator[](std::size_t i) const noexcept { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

    friend bool operator==(const BitStream&, const BitStream&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace rcm
