#include "rcm/codec.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <utility>

#include "rcm/envelope.hpp"
#include "rcm/lut.hpp"

namespace rcm {

namespace {

// Visits every pair as a couple of sample indices, in scan order.
template <typename Fn>
void for_each_pair(const GrayImage& img, PairingOrder order, Fn&& fn) {
    if (order == PairingOrder::RowMajor) {
        const int pairs_per_row = img.width / 2;
        for (int y = 0; y < img.height; ++y) {
            const std::size_t row = std::size_t(y) * std::size_t(img.width);
            for (int i = 0; i < pairs_per_row; ++i)
                fn(row + std::size_t(2 * i), row + std::size_t(2 * i + 1));
        }
    } else {
        const int pairs_per_col = img.height / 2;
        for (int x = 0; x < img.width; ++x)
            for (int i = 0; i < pairs_per_col; ++i)
                fn(std::size_t(2 * i) * std::size_t(img.width) +
                       std::size_t(x),
                   std::size_t(2 * i + 1) * std::size_t(img.width) +
                       std::size_t(x));
    }
}

// Marking outcome in raw form: slot pairs leave the second LSB clear for
// the caller to or the payload bit in.
struct RawMark {
    int x;
    int y;
    bool slot;
    int saved_bit;  // meaningful only when !slot
};

struct RawDetect {
    int x;              // for pending pairs: first value with its LSB clear
    int y;
    bool slot;          // carries a payload bit in the marked second LSB
    bool pending;       // waits for a saved bit to complete the first LSB
};

struct DirectBackend {
    const DomainSpec& spec;

    bool is_slot(PixelPair p) const noexcept {
        return classify(p, spec) != PairClass::NotTransformable;
    }

    RawMark mark(PixelPair p) const noexcept {
        switch (classify(p, spec)) {
        case PairClass::Transformable: {
            const PixelPair t = forward_rcm(p);
            return {t.x | 1, t.y & ~1, true, 0};
        }
        case PairClass::OddEmbeddable:
            return {p.x & ~1, p.y & ~1, true, 0};
        case PairClass::NotTransformable:
        default:
            return {p.x & ~1, p.y, false, p.x & 1};
        }
    }

    RawDetect detect(PixelPair m) const noexcept {
        const Detection d = detect_pair(m, spec);
        if (d.needs_saved_bit) return {m.x, m.y, false, true};
        return {d.recovered->x, d.recovered->y, true, false};
    }
};

struct TableBackend {
    const LutTables& tables;

    bool is_slot(PixelPair p) const noexcept {
        return tables.mark_entry(p).f != 0;
    }

    RawMark mark(PixelPair p) const noexcept {
        const MarkEntry& e = tables.mark_entry(p);
        return {e.x, e.y, e.f != 0, p.x & 1};
    }

    RawDetect detect(PixelPair m) const noexcept {
        const DetectEntry& e = tables.detect_entry(m);
        return {e.x, e.y, e.f != 0, e.s != 0};
    }
};

template <typename B>
EmbedStats capacity_impl(const GrayImage& img, PairingOrder order,
                         const B& backend) {
    EmbedStats st;
    for_each_pair(img, order, [&](std::size_t a, std::size_t b) {
        ++st.pairs;
        if (backend.is_slot({img.samples[a], img.samples[b]}))
            ++st.embeddable;
    });
    st.capacity_bits = 2 * st.embeddable - st.pairs;
    st.bitrate_bpp =
        st.pairs ? double(st.capacity_bits) / double(2 * st.pairs) : 0.0;
    return st;
}

template <typename B>
EmbedResult embed_impl(const GrayImage& img, const BitStream& watermark,
                       PairingOrder order, const B& backend) {
    const EmbedStats st = capacity_impl(img, order, backend);
    if (std::int64_t(watermark.size()) > st.capacity_bits)
        throw PayloadTooLarge(watermark.size(), st.capacity_bits);

    GrayImage marked = img;
    std::deque<std::uint8_t> queue;  // saved LSBs waiting for the next slot
    std::size_t next = 0;
    for_each_pair(img, order, [&](std::size_t a, std::size_t b) {
        const PixelPair p{img.samples[a], img.samples[b]};
        const RawMark m = backend.mark(p);
        int out_y = m.y;
        if (m.slot) {
            int bit;
            if (!queue.empty()) {
                bit = queue.front();
                queue.pop_front();
            } else if (next < watermark.size()) {
                bit = watermark[next++];
            } else {
                bit = 0;
            }
            out_y |= bit;
        } else {
            queue.push_back(static_cast<std::uint8_t>(m.saved_bit));
        }
        marked.samples[a] = static_cast<std::uint8_t>(m.x);
        marked.samples[b] = static_cast<std::uint8_t>(out_y);
    });
    if (!queue.empty()) throw TrailingSavedBits(queue.size());
    return {std::move(marked), st, next};
}

// Per-pixel audit for crop recovery; index values match GrayImage::samples.
struct ExtractAudit {
    std::vector<std::uint8_t> pixel_is_slot;  // 1 for pixels of slot pairs
    std::size_t unresolved_pairs{0};
};

template <typename B>
ExtractResult extract_impl(const GrayImage& marked, PairingOrder order,
                           const B& backend, bool lenient,
                           ExtractAudit* audit) {
    ExtractResult res;
    res.original = marked;  // unpaired leftovers pass through untouched
    if (audit) audit->pixel_is_slot.assign(marked.samples.size(), 0);

    std::deque<std::size_t> pending;  // first-pixel indices awaiting LSBs
    for_each_pair(marked, order, [&](std::size_t a, std::size_t b) {
        ++res.stats.pairs;
        const PixelPair m{marked.samples[a], marked.samples[b]};
        const RawDetect d = backend.detect(m);
        if (d.pending) {
            // Seven high bits are already right; the LSB arrives later.
            res.original.samples[a] = static_cast<std::uint8_t>(m.x);
            res.original.samples[b] = static_cast<std::uint8_t>(m.y);
            pending.push_back(a);
            return;
        }
        ++res.stats.embeddable;
        res.original.samples[a] = static_cast<std::uint8_t>(d.x);
        res.original.samples[b] = static_cast<std::uint8_t>(d.y);
        if (audit) {
            audit->pixel_is_slot[a] = 1;
            audit->pixel_is_slot[b] = 1;
        }
        const int bit = m.y & 1;
        if (!pending.empty()) {
            res.original.samples[pending.front()] |= bit;
            pending.pop_front();
        } else {
            res.watermark.push_back(bit);
        }
    });
    if (!pending.empty()) {
        if (!lenient) throw TrailingUnresolvedPairs(pending.size());
        if (audit) audit->unresolved_pairs = pending.size();
    }
    res.stats.capacity_bits = 2 * res.stats.embeddable - res.stats.pairs;
    res.stats.bitrate_bpp =
        res.stats.pairs
            ? double(res.stats.capacity_bits) / double(2 * res.stats.pairs)
            : 0.0;
    return res;
}

void check_lut(const DomainSpec& spec, const GrayImage& img,
               const LutTables* lut) {
    if (!lut) return;
    if (!(lut->spec == spec))
        throw UsageError("lookup tables were built for a different domain");
    if (img.max_value > lut->spec.max_level())
        throw UsageError("image samples can exceed the lookup-table range");
}

template <typename Fn>
auto with_backend(const DomainSpec& spec, const LutTables* lut, Fn&& fn) {
    if (lut) return fn(TableBackend{*lut});
    return fn(DirectBackend{spec});
}

}  // namespace

IterationPlan IterationPlan::alternating(int iterations) {
    if (iterations < 1)
        throw UsageError("iteration count must be at least 1");
    IterationPlan plan;
    plan.orders.reserve(std::size_t(iterations));
    for (int i = 0; i < iterations; ++i)
        plan.orders.push_back(i % 2 == 0 ? PairingOrder::RowMajor
                                         : PairingOrder::ColumnMajor);
    return plan;
}

EmbedStats capacity(const GrayImage& image, const DomainSpec& spec,
                    PairingOrder order, const LutTables* lut) {
    check_lut(spec, image, lut);
    return with_backend(spec, lut, [&](const auto& backend) {
        return capacity_impl(image, order, backend);
    });
}

EmbedResult embed(const GrayImage& image, const BitStream& watermark,
                  const DomainSpec& spec, PairingOrder order,
                  const LutTables* lut) {
    check_lut(spec, image, lut);
    return with_backend(spec, lut, [&](const auto& backend) {
        return embed_impl(image, watermark, order, backend);
    });
}

ExtractResult extract(const GrayImage& marked, const DomainSpec& spec,
                      PairingOrder order, const LutTables* lut) {
    check_lut(spec, marked, lut);
    return with_backend(spec, lut, [&](const auto& backend) {
        return extract_impl(marked, order, backend, false, nullptr);
    });
}

MultiEmbedResult embed_multi(const GrayImage& image,
                             std::span<const std::uint8_t> payload,
                             const IterationPlan& plan, const DomainSpec& spec,
                             const LutTables* lut) {
    if (plan.orders.empty())
        throw UsageError("iteration plan must not be empty");
    const BitStream bits = envelope_encode(payload);

    MultiEmbedResult res;
    res.marked = image;
    std::size_t pos = 0;
    std::int64_t aggregate_capacity = 0;
    for (PairingOrder order : plan.orders) {
        const EmbedStats cap = capacity(res.marked, spec, order, lut);
        aggregate_capacity += std::max<std::int64_t>(cap.capacity_bits, 0);
        const std::size_t take = std::min<std::size_t>(
            bits.size() - pos,
            std::size_t(std::max<std::int64_t>(cap.capacity_bits, 0)));
        // A negative capacity makes even an empty chunk unembeddable; the
        // inner call raises PayloadTooLarge with the measured figure.
        EmbedResult step =
            embed(res.marked, bits.slice(pos, take), spec, order, lut);
        pos += step.consumed_bits;
        res.marked = std::move(step.marked);
        res.per_iteration.push_back(step.stats);
        res.consumed_per_iteration.push_back(step.consumed_bits);
    }
    if (pos < bits.size())
        throw PayloadTooLarge(bits.size(), aggregate_capacity);
    return res;
}

MultiExtractResult extract_multi(const GrayImage& marked,
                                 const IterationPlan& plan,
                                 const DomainSpec& spec,
                                 const LutTables* lut) {
    if (plan.orders.empty())
        throw UsageError("iteration plan must not be empty");
    MultiExtractResult res;
    res.per_iteration.resize(plan.size());
    std::vector<BitStream> chunks(plan.size());
    GrayImage img = marked;
    for (std::size_t i = plan.size(); i-- > 0;) {
        ExtractResult step = extract(img, spec, plan.orders[i], lut);
        img = std::move(step.original);
        chunks[i] = std::move(step.watermark);
        res.per_iteration[i] = step.stats;
    }
    BitStream all;
    for (const BitStream& chunk : chunks) all.append(chunk);
    res.payload = envelope_decode(all);
    res.original = std::move(img);
    return res;
}

CropRecovery crop_recover(const GrayImage& marked, CropRect rect,
                          const DomainSpec& spec, PairingOrder order,
                          const GrayImage* original, const LutTables* lut) {
    if (order == PairingOrder::RowMajor) {
        if (rect.x0 % 2 != 0 || rect.w % 2 != 0)
            throw MisalignedCrop(
                "row pairing needs an even left edge and width");
    } else {
        if (rect.y0 % 2 != 0 || rect.h % 2 != 0)
            throw MisalignedCrop(
                "column pairing needs an even top edge and height");
    }
    const GrayImage sub = crop(marked, rect.x0, rect.y0, rect.w, rect.h);
    check_lut(spec, sub, lut);

    ExtractAudit audit;
    ExtractResult er = with_backend(spec, lut, [&](const auto& backend) {
        return extract_impl(sub, order, backend, true, &audit);
    });

    CropRecovery out;
    out.pairs = er.stats.pairs;
    out.watermark_fragment = std::move(er.watermark);
    out.unresolved_pairs = std::int64_t(audit.unresolved_pairs);
    for (std::uint8_t flag : audit.pixel_is_slot)
        out.slot_pixels += flag;
    out.slot_pixels_total = out.slot_pixels;

    if (original) {
        const GrayImage truth =
            crop(*original, rect.x0, rect.y0, rect.w, rect.h);
        std::int64_t exact = 0;
        for (std::size_t i = 0; i < truth.samples.size(); ++i) {
            const int d = int(er.original.samples[i]) - int(truth.samples[i]);
            if (d == 0) {
                ++exact;
                out.slot_pixels_exact += audit.pixel_is_slot[i];
            } else {
                ++out.mismatched_pixels;
            }
            out.max_abs_error = std::max(out.max_abs_error, std::abs(d));
        }
        out.exact_fraction = double(exact) / double(truth.samples.size());
    }
    out.recovered = std::move(er.original);
    return out;
}

}  // namespace rcm
