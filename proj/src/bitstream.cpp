#include "rcm/bitstream.hpp"

#include <utility>

namespace rcm {

BitStream::BitStream(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (std::uint8_t b : bits_)
        if (b > 1) throw UsageError("bitstream elements must be 0 or 1");
}

BitStream BitStream::from_bytes(std::span<const std::uint8_t> bytes) {
    BitStream out;
    out.bits_.reserve(bytes.size() * 8);
    for (std::uint8_t byte : bytes)
        for (int i = 7; i >= 0; --i)
            out.bits_.push_back((byte >> i) & 1);
    return out;
}

std::vector<std::uint8_t> BitStream::to_bytes() const {
    if (bits_.size() % 8 != 0)
        throw UsageError("bitstream length " + std::to_string(bits_.size()) +
                         " is not a whole number of bytes");
    std::vector<std::uint8_t> out(bits_.size() / 8, 0);
    for (std::size_t i = 0; i < bits_.size(); ++i)
        out[i / 8] = static_cast<std::uint8_t>((out[i / 8] << 1) | bits_[i]);
    return out;
}

void BitStream::push_back(int bit) {
    if (bit != 0 && bit != 1) throw UsageError("bit must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(bit));
}

void BitStream::append(const BitStream& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

BitStream BitStream::slice(std::size_t pos, std::size_t count) const {
    if (pos > bits_.size() || count > bits_.size() - pos)
        throw UsageError("bitstream slice out of range");
    BitStream out;
    out.bits_.assign(bits_.begin() + pos, bits_.begin() + pos + count);
    return out;
}

}  // namespace rcm
