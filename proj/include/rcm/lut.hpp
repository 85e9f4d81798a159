#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rcm/core.hpp"
#include "rcm/image.hpp"

namespace rcm {

// One marking-table entry. For slot pairs (f == 1) the stored y keeps its
// LSB clear and the embedder ors the payload bit in; for nontransformable
// pairs (s == 1) the input pixel's own LSB is what gets saved.
struct MarkEntry {
    std::uint16_t x{0};
    std::uint16_t y{0};
    std::uint8_t f{0};  // 1 when the second output LSB is a payload slot
    std::uint8_t s{0};  // 1 when the first input LSB must be saved
};

// One detection-table entry. For slot pairs (f == 1) x,y are the recovered
// values (the payload bit is the marked second LSB); for s == 1 the first
// pixel's LSB stays clear until its saved bit is assigned.
struct DetectEntry {
    std::uint16_t x{0};
    std::uint16_t y{0};
    std::uint8_t f{0};  // 1 when the pair carries a payload bit
    std::uint8_t s{0};  // 1 when the first LSB comes from the saved sequence
};

// Precomputed per-pair marking and detection tables, (ceiling+1)^2 entries
// each, addressed by (ceiling+1)*x + y.
struct LutTables {
    DomainSpec spec;
    std::vector<MarkEntry> mark;
    std::vector<DetectEntry> detect;

    std::size_t address(int x, int y) const noexcept {
        return std::size_t(spec.max_level() + 1) * std::size_t(x) +
               std::size_t(y);
    }
    const MarkEntry& mark_entry(PixelPair p) const noexcept {
        return mark[address(p.x, p.y)];
    }
    const DetectEntry& detect_entry(PixelPair p) const noexcept {
        return detect[address(p.x, p.y)];
    }
};

LutTables build_luts(const DomainSpec& spec);

// Table-backed versions of the pair operations. Behaviour is identical to
// mark_pair and detect_pair for every input in [0, ceiling]^2.
MarkedPair lut_mark_pair(const LutTables& tables, PixelPair p,
                         std::optional<int> bit);
Detection lut_detect_pair(const LutTables& tables, PixelPair marked) noexcept;

// Serialized table images for size audits: entries in address order, each
// packed into 2l+2 bits (x | y<<l | f<<2l | s<<(2l+1), l = bits needed for
// one sample) and streamed LSB-first into bytes with no per-entry padding.
std::vector<std::uint8_t> packed_mark_table(const LutTables& tables);
std::vector<std::uint8_t> packed_detect_table(const LutTables& tables);
std::size_t packed_table_bytes(int max_level);

// Which pair-operation implementation image passes run on.
enum class Backend { Direct, Lut };

// Median embedding throughput in megapixels per second over `repetitions`
// runs of a full-capacity marking pass on `image`.
double throughput_bench(const GrayImage& image, const DomainSpec& spec,
                        Backend backend, int repetitions);

// Timing report for both backends and both directions, gated on the two
// backends producing byte-identical images first.
struct BenchReport {
    bool outputs_identical{false};
    double embed_direct_mpps{0.0};
    double embed_lut_mpps{0.0};
    double extract_direct_mpps{0.0};
    double extract_lut_mpps{0.0};
};

BenchReport run_backend_bench(const GrayImage& image, const DomainSpec& spec,
                              int repetitions, std::uint64_t seed);

}  // namespace rcm
