#include "rcm/core.hpp"

#include <cstdlib>

namespace rcm {

namespace {

// Exact ceil(n / 3) for n >= 0 without floating point.
inline int ceil_div3(int n) noexcept { return (n + 2) / 3; }

}  // namespace

PixelPair forward_rcm(PixelPair p) noexcept {
    return {2 * p.x - p.y, 2 * p.y - p.x};
}

PixelPair inverse_rcm(PixelPair p) noexcept {
    return {ceil_div3(2 * p.x + p.y), ceil_div3(p.x + 2 * p.y)};
}

bool in_domain(PixelPair p, const DomainSpec& spec) noexcept {
    const int ceiling = spec.max_level();
    const int tx = 2 * p.x - p.y;
    const int ty = 2 * p.y - p.x;
    if (tx < 0 || tx > ceiling || ty < 0 || ty > ceiling) return false;
    if (spec.threshold() && std::abs(p.x - p.y) >= *spec.threshold())
        return false;
    return true;
}

bool is_ambiguous_odd(PixelPair p, const DomainSpec& spec) noexcept {
    if (p.x % 2 == 0 || p.y % 2 == 0) return false;
    if (!in_domain(p, spec)) return false;
    // A nontransformable pair is marked by clearing LSBs; detection re-sets
    // them and asks whether the result lies inside the domain. An odd-odd
    // pair whose even-rounded neighbors fall outside the domain would give
    // the opposite answer for the same marked values, so it is banned.
    return !in_domain({p.x - 1, p.y}, spec) ||
           !in_domain({p.x, p.y - 1}, spec) ||
           !in_domain({p.x - 1, p.y - 1}, spec);
}

bool in_dc(PixelPair p, const DomainSpec& spec) noexcept {
    return in_domain(p, spec) && !is_ambiguous_odd(p, spec);
}

PairClass classify(PixelPair p, const DomainSpec& spec) noexcept {
    if (!in_dc(p, spec)) return PairClass::NotTransformable;
    const bool both_odd = (p.x % 2 == 1) && (p.y % 2 == 1);
    return both_odd ? PairClass::OddEmbeddable : PairClass::Transformable;
}

MarkedPair mark_pair(PixelPair p, const DomainSpec& spec,
                     std::optional<int> bit) {
    const PairClass cls = classify(p, spec);
    const bool wants_bit = cls != PairClass::NotTransformable;
    if (wants_bit != bit.has_value())
        throw UsageError(wants_bit
                             ? "embeddable pair needs a payload bit"
                             : "nontransformable pair cannot take a payload bit");
    if (bit && (*bit != 0 && *bit != 1))
        throw UsageError("payload bit must be 0 or 1");

    switch (cls) {
    case PairClass::Transformable: {
        const PixelPair t = forward_rcm(p);
        return {t.x | 1, (t.y & ~1) | *bit, std::nullopt};
    }
    case PairClass::OddEmbeddable:
        return {p.x & ~1, (p.y & ~1) | *bit, std::nullopt};
    case PairClass::NotTransformable:
    default:
        return {p.x & ~1, p.y, p.x & 1};
    }
}

Detection detect_pair(PixelPair marked, const DomainSpec& spec) noexcept {
    if (marked.x & 1) {
        // Flag bit set: undo the stretch; both LSBs were overwritten.
        const PixelPair recovered =
            inverse_rcm({marked.x & ~1, marked.y & ~1});
        return {PairClass::Transformable, marked.y & 1, recovered, false};
    }
    // Flag bit clear: the pair was either odd-odd (LSBs overwritten) or
    // nontransformable (first LSB parked in the payload). Re-setting the
    // LSBs decides which, because ambiguous odd-odd pairs were never marked.
    const PixelPair candidate{marked.x | 1, marked.y | 1};
    if (in_dc(candidate, spec))
        return {PairClass::OddEmbeddable, marked.y & 1, candidate, false};
    return {PairClass::NotTransformable, std::nullopt, std::nullopt, true};
}

}  // namespace rcm
