#pragma once

#include <optional>

#include "rcm/errors.hpp"

namespace rcm {

// Ordered pair of graylevels, the unit the pairwise transform works on.
struct PixelPair {
    int x{0};
    int y{0};

    friend bool operator==(const PixelPair&, const PixelPair&) = default;
};

// Graylevel ceiling plus an optional distortion threshold.
//
// The ceiling must be odd: marking forces flag bits to 1, and with an even
// ceiling that could push a sample past the representable range. A threshold
// of ceiling+1 admits every pair and is therefore the same as no threshold.
class DomainSpec {
public:
    explicit DomainSpec(int max_level,
                        std::optional<int> threshold = std::nullopt)
        : max_level_(max_level), threshold_(threshold) {
        if (max_level_ < 1)
            throw UsageError("graylevel ceiling must be at least 1");
        if (max_level_ % 2 == 0)
            throw UsageError("graylevel ceiling must be odd, got " +
                             std::to_string(max_level_));
        if (threshold_ && (*threshold_ < 1 || *threshold_ > max_level_ + 1))
            throw UsageError("distortion threshold must lie in [1, ceiling+1]");
    }

    int max_level() const noexcept { return max_level_; }
    std::optional<int> threshold() const noexcept { return threshold_; }

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;

private:
    int max_level_;
    std::optional<int> threshold_;
};

// How a pair behaves during marking.
enum class PairClass {
    Transformable,     // transformed, flag bit set, payload bit in second LSB
    OddEmbeddable,     // kept in place, payload bit overwrites second LSB
    NotTransformable,  // first LSB cleared and saved for later embedding
};

// Result of marking one pair. saved_bit is set only for pairs whose first
// LSB had to be displaced (the NotTransformable case).
struct MarkedPair {
    int x{0};
    int y{0};
    std::optional<int> saved_bit;

    friend bool operator==(const MarkedPair&, const MarkedPair&) = default;
};

// Result of detecting one marked pair. recovered is absent while the pair
// still waits for its saved LSB (needs_saved_bit true); bit is present only
// when the pair carried a payload bit.
struct Detection {
    PairClass cls{PairClass::NotTransformable};
    std::optional<int> bit;
    std::optional<PixelPair> recovered;
    bool needs_saved_bit{false};
};

// The pairwise contrast stretch (x, y) -> (2x - y, 2y - x) and its exact
// integer inverse. The inverse uses ceiling division by 3, so it also undoes
// a stretch whose results had their least significant bits cleared.
PixelPair forward_rcm(PixelPair p) noexcept;
PixelPair inverse_rcm(PixelPair p) noexcept;

// True when the stretched pair stays inside [0, ceiling] on both axes and,
// if a threshold is set, the pair's contrast stays strictly below it.
bool in_domain(PixelPair p, const DomainSpec& spec) noexcept;

// Odd-odd pairs sitting right at the domain border: after marking they are
// indistinguishable from a re-oddified nontransformable pair, so they must
// be excluded from the transformable set.
bool is_ambiguous_odd(PixelPair p, const DomainSpec& spec) noexcept;

// The working domain: in_domain minus the ambiguous odd-odd pairs.
bool in_dc(PixelPair p, const DomainSpec& spec) noexcept;

PairClass classify(PixelPair p, const DomainSpec& spec) noexcept;

// Marks one pair. bit must be present exactly when the pair can carry a
// payload bit (Transformable or OddEmbeddable) and must be 0 or 1.
MarkedPair mark_pair(PixelPair p, const DomainSpec& spec,
                     std::optional<int> bit);

// Classifies a marked pair and recovers what can be recovered locally.
Detection detect_pair(PixelPair marked, const DomainSpec& spec) noexcept;

}  // namespace rcm
