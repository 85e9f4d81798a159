#include <algorithm>
#include <chrono>
#include <random>
#include <vector>

#include "rcm/codec.hpp"
#include "rcm/lut.hpp"

namespace rcm {

namespace {

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2]
                 : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

BitStream random_payload_bits(std::int64_t count, std::uint64_t seed) {
    BitStream bits;
    std::mt19937_64 rng(seed);
    for (std::int64_t i = 0; i < count; ++i)
        bits.push_back(static_cast<int>(rng() & 1));
    return bits;
}

template <typename Fn>
double time_mpps(const GrayImage& image, int repetitions, Fn&& run) {
    std::vector<double> rates;
    rates.reserve(std::size_t(repetitions));
    for (int i = 0; i < repetitions; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        run();
        const auto t1 = std::chrono::steady_clock::now();
        const double secs = std::chrono::duration<double>(t1 - t0).count();
        rates.push_back(double(image.pixel_count()) / secs / 1e6);
    }
    return median(std::move(rates));
}

}  // namespace

double throughput_bench(const GrayImage& image, const DomainSpec& spec,
                        Backend backend, int repetitions) {
    if (repetitions < 1)
        throw UsageError("repetition count must be at least 1");
    const LutTables tables =
        backend == Backend::Lut ? build_luts(spec) : LutTables{spec, {}, {}};
    const LutTables* lut = backend == Backend::Lut ? &tables : nullptr;

    const EmbedStats cap =
        capacity(image, spec, PairingOrder::RowMajor, lut);
    const BitStream bits = random_payload_bits(
        std::max<std::int64_t>(cap.capacity_bits, 0), 0x5eed);

    // Keep a checksum of each run so the work cannot be optimized away and
    // nondeterminism would show up as a hard failure.
    std::uint64_t first_sum = 0;
    bool first = true;
    return time_mpps(image, repetitions, [&] {
        const EmbedResult r =
            embed(image, bits, spec, PairingOrder::RowMajor, lut);
        std::uint64_t sum = 0;
        for (std::uint8_t s : r.marked.samples) sum += s;
        if (first) {
            first_sum = sum;
            first = false;
        } else if (sum != first_sum) {
            throw Error("marking pass was not deterministic");
        }
    });
}

BenchReport run_backend_bench(const GrayImage& image, const DomainSpec& spec,
                              int repetitions, std::uint64_t seed) {
    if (repetitions < 1)
        throw UsageError("repetition count must be at least 1");
    const LutTables tables = build_luts(spec);
    const PairingOrder order = PairingOrder::RowMajor;

    const EmbedStats cap = capacity(image, spec, order, nullptr);
    const BitStream bits =
        random_payload_bits(std::max<std::int64_t>(cap.capacity_bits, 0), seed);

    // Equivalence gate: both backends must agree bit for bit before any
    // timing figure is reported.
    const EmbedResult direct = embed(image, bits, spec, order, nullptr);
    const EmbedResult table = embed(image, bits, spec, order, &tables);
    BenchReport report;
    report.outputs_identical = direct.marked == table.marked;
    if (report.outputs_identical) {
        const ExtractResult ed = extract(direct.marked, spec, order, nullptr);
        const ExtractResult et = extract(direct.marked, spec, order, &tables);
        report.outputs_identical =
            ed.original == et.original && ed.watermark == et.watermark;
    }
    if (!report.outputs_identical) return report;

    report.embed_direct_mpps = time_mpps(image, repetitions, [&] {
        embed(image, bits, spec, order, nullptr);
    });
    report.embed_lut_mpps = time_mpps(image, repetitions, [&] {
        embed(image, bits, spec, order, &tables);
    });
    report.extract_direct_mpps = time_mpps(image, repetitions, [&] {
        extract(direct.marked, spec, order, nullptr);
    });
    report.extract_lut_mpps = time_mpps(image, repetitions, [&] {
        extract(direct.marked, spec, order, &tables);
    });
    return report;
}

}  // namespace rcm
