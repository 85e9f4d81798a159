#include "rcm/lut.hpp"

#include <bit>

namespace rcm {

namespace {

// Bits needed to store one sample in [0, max_level].
int sample_bits(int max_level) {
    return std::bit_width(static_cast<unsigned>(max_level));
}

// LSB-first bit packer: the first value written lands in the low bits of
// the first output byte.
class BitPacker {
public:
    void put(std::uint64_t value, int nbits) {
        for (int i = 0; i < nbits; ++i) {
            if (used_ == 0) out_.push_back(0);
            out_.back() |= static_cast<std::uint8_t>(((value >> i) & 1)
                                                     << used_);
            used_ = (used_ + 1) % 8;
        }
    }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
    int used_ = 0;
};

std::vector<std::uint8_t> pack_entries(const LutTables& tables, bool mark) {
    const int l = sample_bits(tables.spec.max_level());
    BitPacker packer;
    const std::size_t n = tables.mark.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t x, y, f, s;
        if (mark) {
            const MarkEntry& e = tables.mark[i];
            x = e.x, y = e.y, f = e.f, s = e.s;
        } else {
            const DetectEntry& e = tables.detect[i];
            x = e.x, y = e.y, f = e.f, s = e.s;
        }
        packer.put(x | (y << l) | (f << (2 * l)) | (s << (2 * l + 1)),
                   2 * l + 2);
    }
    return packer.take();
}

}  // namespace

LutTables build_luts(const DomainSpec& spec) {
    const int ceiling = spec.max_level();
    if (ceiling > 0xFFFF)
        throw UsageError("lookup tables support ceilings up to 65535");
    const std::size_t side = std::size_t(ceiling) + 1;
    LutTables tables{spec, std::vector<MarkEntry>(side * side),
                     std::vector<DetectEntry>(side * side)};
    for (int x = 0; x <= ceiling; ++x) {
        for (int y = 0; y <= ceiling; ++y) {
            const PixelPair p{x, y};
            const std::size_t addr = tables.address(x, y);

            MarkEntry& me = tables.mark[addr];
            switch (classify(p, spec)) {
            case PairClass::Transformable: {
                const PixelPair t = forward_rcm(p);
                me = {std::uint16_t(t.x | 1), std::uint16_t(t.y & ~1), 1, 0};
                break;
            }
            case PairClass::OddEmbeddable:
                me = {std::uint16_t(x & ~1), std::uint16_t(y & ~1), 1, 0};
                break;
            case PairClass::NotTransformable:
                me = {std::uint16_t(x & ~1), std::uint16_t(y), 0, 1};
                break;
            }

            DetectEntry& de = tables.detect[addr];
            const Detection d = detect_pair(p, spec);
            if (d.needs_saved_bit)
                de = {std::uint16_t(x & ~1), std::uint16_t(y), 0, 1};
            else
                de = {std::uint16_t(d.recovered->x),
                      std::uint16_t(d.recovered->y), 1, 0};
        }
    }
    return tables;
}

MarkedPair lut_mark_pair(const LutTables& tables, PixelPair p,
                         std::optional<int> bit) {
    const int ceiling = tables.spec.max_level();
    if (p.x < 0 || p.x > ceiling || p.y < 0 || p.y > ceiling)
        throw UsageError("pair lies outside the lookup-table range");
    const MarkEntry& e = tables.mark_entry(p);
    const bool wants_bit = e.f != 0;
    if (wants_bit != bit.has_value())
        throw UsageError(wants_bit
                             ? "embeddable pair needs a payload bit"
                             : "nontransformable pair cannot take a payload bit");
    if (bit && (*bit != 0 && *bit != 1))
        throw UsageError("payload bit must be 0 or 1");
    if (e.f) return {e.x, e.y | *bit, std::nullopt};
    return {e.x, e.y, p.x & 1};
}

Detection lut_detect_pair(const LutTables& tables, PixelPair marked) noexcept {
    const DetectEntry& e = tables.detect_entry(marked);
    if (e.s)
        return {PairClass::NotTransformable, std::nullopt, std::nullopt, true};
    const PairClass cls =
        (marked.x & 1) ? PairClass::Transformable : PairClass::OddEmbeddable;
    return {cls, marked.y & 1, PixelPair{e.x, e.y}, false};
}

std::vector<std::uint8_t> packed_mark_table(const LutTables& tables) {
    return pack_entries(tables, true);
}

std::vector<std::uint8_t> packed_detect_table(const LutTables& tables) {
    return pack_entries(tables, false);
}

std::size_t packed_table_bytes(int max_level) {
    const std::size_t entries =
        (std::size_t(max_level) + 1) * (std::size_t(max_level) + 1);
    const std::size_t bits = entries * std::size_t(2 * sample_bits(max_level) + 2);
    return (bits + 7) / 8;
}

}  // namespace rcm
