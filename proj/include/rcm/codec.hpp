#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rcm/bitstream.hpp"
#include "rcm/core.hpp"
#include "rcm/image.hpp"

namespace rcm {

struct LutTables;  // defined in rcm/lut.hpp; pass nullptr for the direct path

// How pixels are grouped into pairs. Rows pair horizontal neighbors
// (r,2i)-(r,2i+1); columns pair vertical neighbors (2i,c)-(2i+1,c). A
// leftover odd row or column passes through untouched and is not counted.
enum class PairingOrder { RowMajor, ColumnMajor };

// Pairing order per embedding iteration. The alternating plan switches
// direction every iteration, starting with rows, so repeated passes do not
// keep hammering the same pair boundaries.
struct IterationPlan {
    std::vector<PairingOrder> orders;

    static IterationPlan alternating(int iterations);
    std::size_t size() const noexcept { return orders.size(); }
};

struct EmbedStats {
    std::int64_t pairs{0};          // pairs visited (P)
    std::int64_t embeddable{0};     // pairs that carry a payload bit (T)
    std::int64_t capacity_bits{0};  // 2T - P, may be negative
    double bitrate_bpp{0.0};        // capacity / (2P), at most 0.5
};

// Counts classes over one pass without touching the image.
EmbedStats capacity(const GrayImage& image, const DomainSpec& spec,
                    PairingOrder order, const LutTables* lut = nullptr);

struct EmbedResult {
    GrayImage marked;
    EmbedStats stats;
    std::size_t consumed_bits{0};  // watermark bits actually stored
};

// Single marking pass. Saved LSBs displaced by nontransformable pairs are
// queued and each lands in the nearest later slot, ahead of watermark bits;
// slots left over once the watermark is exhausted are padded with zeros.
// Throws PayloadTooLarge when the watermark exceeds 2T - P bits and
// TrailingSavedBits when a saved bit finds no later slot (no output is
// produced in either case).
EmbedResult embed(const GrayImage& image, const BitStream& watermark,
                  const DomainSpec& spec, PairingOrder order,
                  const LutTables* lut = nullptr);

struct ExtractResult {
    GrayImage original;
    BitStream watermark;  // exactly 2T - P bits
    EmbedStats stats;
};

// Inverse of embed: recovers the original image bit-exactly and the full
// slot stream minus the bits that were re-routed to saved LSBs. Throws
// TrailingUnresolvedPairs when a displaced LSB never shows up.
ExtractResult extract(const GrayImage& marked, const DomainSpec& spec,
                      PairingOrder order, const LutTables* lut = nullptr);

struct MultiEmbedResult {
    GrayImage marked;
    std::vector<EmbedStats> per_iteration;
    std::vector<std::size_t> consumed_per_iteration;
};

// Wraps the payload in its envelope and spreads it greedily over every
// iteration of the plan (later iterations carry zero padding once the
// payload runs out, so extraction with the same plan stays symmetric).
MultiEmbedResult embed_multi(const GrayImage& image,
                             std::span<const std::uint8_t> payload,
                             const IterationPlan& plan, const DomainSpec& spec,
                             const LutTables* lut = nullptr);

struct MultiExtractResult {
    GrayImage original;
    std::vector<std::uint8_t> payload;
    std::vector<EmbedStats> per_iteration;  // in forward iteration order
};

// Peels iterations in reverse plan order, reassembles the slot stream in
// forward order and opens the envelope.
MultiExtractResult extract_multi(const GrayImage& marked,
                                 const IterationPlan& plan,
                                 const DomainSpec& spec,
                                 const LutTables* lut = nullptr);

struct CropRect {
    int x0{0};
    int y0{0};
    int w{0};
    int h{0};
};

struct CropRecovery {
    GrayImage recovered;
    BitStream watermark_fragment;
    std::int64_t pairs{0};
    std::int64_t slot_pixels{0};         // pixels of pairs detected as slots
    std::int64_t unresolved_pairs{0};    // saved bits that never arrived
    // Ground-truth comparison, filled in when the pristine original is given.
    std::optional<double> exact_fraction;
    std::int64_t mismatched_pixels{0};
    std::int64_t slot_pixels_exact{0};
    std::int64_t slot_pixels_total{0};
    int max_abs_error{0};
};

// Decodes a pair-aligned rectangle of a marked image on its own. Saved-bit
// bookkeeping cannot cross the crop edge, so nontransformable first pixels
// may be off by their LSB until the queue re-synchronizes; pairs that carry
// payload bits are always recovered exactly. The rectangle must not split
// pairs (MisalignedCrop otherwise) and must stay inside the image.
CropRecovery crop_recover(const GrayImage& marked, CropRect rect,
                          const DomainSpec& spec, PairingOrder order,
                          const GrayImage* original = nullptr,
                          const LutTables* lut = nullptr);

}  // namespace rcm
