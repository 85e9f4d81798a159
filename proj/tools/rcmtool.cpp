// rcmtool: command-line front end for the reversible watermarking library.
//
// Subcommands: embed, extract, capacity, croptest, bench. Machine-readable
// results go to stdout (JSON, or CSV for capacity); diagnostics to stderr.
//
// Exit codes: 0 success, 1 file or format problems, 2 payload too large,
// 3 unplaceable saved bits, 4 corrupt or truncated payload envelope,
// 5 misaligned crop rectangle, 64 usage errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rcm/codec.hpp"
#include "rcm/envelope.hpp"
#include "rcm/image.hpp"
#include "rcm/lut.hpp"

using nlohmann::json;
using namespace rcm;

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path + " for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoFailure("read error on " + path);
    return bytes;
}

void write_file(const std::string& path,
                std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoFailure("write error on " + path);
}

DomainSpec make_spec(const GrayImage& img, std::optional<int> threshold) {
    if (img.max_value % 2 == 0)
        throw Error("image maxval " + std::to_string(img.max_value) +
                    " is even; marking needs an odd graylevel ceiling");
    return DomainSpec(img.max_value, threshold);
}

IterationPlan make_plan(const std::string& pairing, int iterations) {
    IterationPlan plan;
    for (int i = 0; i < iterations; ++i) {
        if (pairing == "row")
            plan.orders.push_back(PairingOrder::RowMajor);
        else if (pairing == "col")
            plan.orders.push_back(PairingOrder::ColumnMajor);
        else
            plan.orders.push_back(i % 2 == 0 ? PairingOrder::RowMajor
                                             : PairingOrder::ColumnMajor);
    }
    return plan;
}

const char* order_name(PairingOrder order) {
    return order == PairingOrder::RowMajor ? "row" : "col";
}

BitStream random_bits(std::int64_t count, std::uint64_t seed) {
    BitStream bits;
    std::mt19937_64 rng(seed);
    for (std::int64_t i = 0; i < count; ++i)
        bits.push_back(int(rng() & 1));
    return bits;
}

std::vector<std::uint8_t> random_bytes(std::size_t count,
                                       std::uint64_t seed) {
    std::vector<std::uint8_t> out(count);
    std::mt19937_64 rng(seed);
    for (auto& b : out) b = std::uint8_t(rng() & 0xFF);
    return out;
}

// Shared flags; not every subcommand registers every field.
struct Options {
    std::string input;
    std::string output;
    std::string payload;
    std::string payload_out;
    int iterations = 1;
    std::optional<int> threshold;
    std::string pairing = "alt";
    std::string backend = "lut";
    std::vector<int> crop;
    std::string sweep;
    std::uint64_t seed = 0;
    int reps = 5;
};

// Builds the tables only when the lut backend is selected.
struct BackendChoice {
    std::optional<LutTables> tables;
    const LutTables* lut = nullptr;

    BackendChoice(const std::string& backend, const DomainSpec& spec) {
        if (backend == "lut") {
            tables = build_luts(spec);
            lut = &*tables;
        }
    }
};

json iteration_json(const std::vector<EmbedStats>& stats,
                    const std::vector<std::size_t>* consumed,
                    const IterationPlan& plan) {
    json arr = json::array();
    for (std::size_t i = 0; i < stats.size(); ++i) {
        json it = {{"iteration", i + 1},
                   {"order", order_name(plan.orders[i])},
                   {"pairs", stats[i].pairs},
                   {"embeddable", stats[i].embeddable},
                   {"capacity_bits", stats[i].capacity_bits},
                   {"bitrate_bpp", stats[i].bitrate_bpp}};
        if (consumed) it["consumed_bits"] = (*consumed)[i];
        arr.push_back(it);
    }
    return arr;
}

json threshold_json(std::optional<int> threshold) {
    return threshold ? json(*threshold) : json(nullptr);
}

int cmd_embed(const Options& opt) {
    const GrayImage img = read_pgm_file(opt.input);
    const std::vector<std::uint8_t> payload = read_file(opt.payload);
    const DomainSpec spec = make_spec(img, opt.threshold);
    const IterationPlan plan = make_plan(opt.pairing, opt.iterations);
    const BackendChoice backend(opt.backend, spec);

    const MultiEmbedResult res =
        embed_multi(img, payload, plan, spec, backend.lut);
    write_pgm_file(opt.output, res.marked);

    json j = {{"command", "embed"},
              {"input", opt.input},
              {"output", opt.output},
              {"payload_bytes", payload.size()},
              {"envelope_bits", kEnvelopeHeaderBits + payload.size() * 8},
              {"iterations", opt.iterations},
              {"pairing", opt.pairing},
              {"threshold", threshold_json(opt.threshold)},
              {"backend", opt.backend},
              {"psnr_db", psnr(img, res.marked)},
              {"per_iteration",
               iteration_json(res.per_iteration,
                              &res.consumed_per_iteration, plan)}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_extract(const Options& opt) {
    const GrayImage marked = read_pgm_file(opt.input);
    const DomainSpec spec = make_spec(marked, opt.threshold);
    const IterationPlan plan = make_plan(opt.pairing, opt.iterations);
    const BackendChoice backend(opt.backend, spec);

    const MultiExtractResult res =
        extract_multi(marked, plan, spec, backend.lut);
    write_pgm_file(opt.output, res.original);
    write_file(opt.payload_out, res.payload);

    json j = {{"command", "extract"},
              {"input", opt.input},
              {"output", opt.output},
              {"payload_out", opt.payload_out},
              {"payload_bytes", res.payload.size()},
              {"crc_ok", true},
              {"iterations", opt.iterations},
              {"pairing", opt.pairing},
              {"threshold", threshold_json(opt.threshold)},
              {"backend", opt.backend},
              {"per_iteration",
               iteration_json(res.per_iteration, nullptr, plan)}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

// One capacity row: counts for the first pass plus, when the image can be
// marked, the PSNR after filling every iteration with seeded random bits.
void capacity_row(const GrayImage& img, std::optional<int> threshold,
                  const Options& opt, std::ostream& out) {
    const DomainSpec spec = make_spec(img, threshold);
    const BackendChoice backend(opt.backend, spec);
    const IterationPlan plan = make_plan(opt.pairing, opt.iterations);

    std::int64_t pairs = 0, embeddable = 0, capacity_bits = 0;
    GrayImage current = img;
    bool embedded = false;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const EmbedStats st =
            capacity(current, spec, plan.orders[i], backend.lut);
        if (i == 0) {
            pairs = st.pairs;
            embeddable = st.embeddable;
            capacity_bits = st.capacity_bits;
        }
        if (st.capacity_bits <= 0) break;
        try {
            EmbedResult er =
                embed(current,
                      random_bits(st.capacity_bits, opt.seed + i), spec,
                      plan.orders[i], backend.lut);
            current = std::move(er.marked);
            embedded = true;
        } catch (const TrailingSavedBits&) {
            break;  // saturated: no further pass fits
        }
        if (i > 0) {
            pairs += st.pairs;
            embeddable += st.embeddable;
            capacity_bits += st.capacity_bits;
        }
    }

    const double bitrate =
        opt.iterations == 1
            ? (pairs ? double(capacity_bits) / double(2 * pairs) : 0.0)
            : double(capacity_bits) / double(img.pixel_count());

    out << (threshold ? std::to_string(*threshold) : "none") << ","
        << pairs << "," << embeddable << "," << capacity_bits << ","
        << bitrate;
    out << ",";
    if (embedded) out << psnr(img, current);
    out << "\n";
}

int cmd_capacity(const Options& opt) {
    const GrayImage img = read_pgm_file(opt.input);

    std::vector<std::optional<int>> thresholds;
    if (!opt.sweep.empty()) {
        if (opt.threshold)
            throw UsageError("--sweep and --threshold are exclusive");
        int start = 0, stop = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream ss(opt.sweep);
        ss >> start >> c1 >> stop >> c2 >> step;
        if (ss.fail() || c1 != ':' || c2 != ':' || step < 1 || start < 1 ||
            stop < start)
            throw UsageError("--sweep wants START:STOP:STEP with "
                             "1 <= START <= STOP and STEP >= 1");
        for (int d = start; d <= stop; d += step) thresholds.push_back(d);
    } else {
        thresholds.push_back(opt.threshold);
    }

    std::cout << "delta,P,T,capacity_bits,bitrate_bpp,psnr_if_embedded\n";
    for (std::optional<int> t : thresholds)
        capacity_row(img, t, opt, std::cout);
    return 0;
}

int cmd_croptest(const Options& opt) {
    const GrayImage img = read_pgm_file(opt.input);
    const DomainSpec spec = make_spec(img, opt.threshold);
    const PairingOrder order = opt.pairing == "col"
                                   ? PairingOrder::ColumnMajor
                                   : PairingOrder::RowMajor;
    const BackendChoice backend(opt.backend, spec);

    // Self-contained experiment: fill the image with a seeded enveloped
    // payload, crop the marked result and grade the recovery against the
    // original we started from.
    const EmbedStats cap = capacity(img, spec, order, backend.lut);
    const std::int64_t payload_bytes =
        std::max<std::int64_t>(
            0, (cap.capacity_bits - std::int64_t(kEnvelopeHeaderBits)) / 8);
    const BitStream bits = envelope_encode(
        random_bytes(std::size_t(payload_bytes), opt.seed));
    const EmbedResult er = embed(img, bits, spec, order, backend.lut);

    const CropRect rect{opt.crop[0], opt.crop[1], opt.crop[2], opt.crop[3]};
    const CropRecovery cr =
        crop_recover(er.marked, rect, spec, order, &img, backend.lut);
    if (!opt.output.empty()) write_pgm_file(opt.output, cr.recovered);

    bool fragment_crc_ok = false;
    try {
        envelope_decode(cr.watermark_fragment);
        fragment_crc_ok = true;
    } catch (const EnvelopeCorrupt&) {
    }

    json j = {{"command", "croptest"},
              {"input", opt.input},
              {"crop", {{"x0", rect.x0},
                        {"y0", rect.y0},
                        {"w", rect.w},
                        {"h", rect.h}}},
              {"pairing", order_name(order)},
              {"threshold", threshold_json(opt.threshold)},
              {"backend", opt.backend},
              {"payload_bytes", payload_bytes},
              {"pairs_in_crop", cr.pairs},
              {"exact_fraction", *cr.exact_fraction},
              {"mismatched_pixels", cr.mismatched_pixels},
              {"max_abs_error", cr.max_abs_error},
              {"slot_pixels", cr.slot_pixels_total},
              {"slot_pixels_exact", cr.slot_pixels_exact},
              {"unresolved_pairs", cr.unresolved_pairs},
              {"fragment_bits", cr.watermark_fragment.size()},
              {"fragment_crc_ok", fragment_crc_ok}};
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_bench(const Options& opt) {
    const GrayImage img = read_pgm_file(opt.input);
    const DomainSpec spec = make_spec(img, opt.threshold);

    const BenchReport report =
        run_backend_bench(img, spec, opt.reps, opt.seed);
    json j = {{"command", "bench"},
              {"input", opt.input},
              {"width", img.width},
              {"height", img.height},
              {"reps", opt.reps},
              {"threshold", threshold_json(opt.threshold)},
              {"equivalence_ok", report.outputs_identical},
              {"embed_mpps", {{"direct", report.embed_direct_mpps},
                              {"lut", report.embed_lut_mpps}}},
              {"extract_mpps", {{"direct", report.extract_direct_mpps},
                                {"lut", report.extract_lut_mpps}}}};
    std::cout << j.dump(2) << "\n";
    if (!report.outputs_identical) {
        std::cerr << "rcmtool: backend outputs differ; timings withheld\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reversible image watermarking via pairwise contrast "
                 "mapping"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* embed_cmd =
        app.add_subcommand("embed", "Embed a payload file into a PGM image");
    embed_cmd->add_option("--input", opt.input, "Cover image (binary PGM)")
        ->required();
    embed_cmd->add_option("--output", opt.output, "Marked image to write")
        ->required();
    embed_cmd->add_option("--payload", opt.payload, "Payload file to embed")
        ->required();
    embed_cmd->add_option("--iterations", opt.iterations,
                          "Number of embedding passes")
        ->check(CLI::PositiveNumber);
    embed_cmd->add_option("--threshold", opt.threshold,
                          "Distortion threshold (limits pair contrast)");
    embed_cmd->add_option("--pairing", opt.pairing,
                          "Pair direction: row, col, or alt(ernating)")
        ->check(CLI::IsMember({"row", "col", "alt"}));
    embed_cmd->add_option("--backend", opt.backend,
                          "Pair operations: direct or lut")
        ->check(CLI::IsMember({"direct", "lut"}));

    CLI::App* extract_cmd = app.add_subcommand(
        "extract", "Recover the original image and payload");
    extract_cmd->add_option("--input", opt.input, "Marked image (binary PGM)")
        ->required();
    extract_cmd->add_option("--output", opt.output,
                            "Recovered original image to write")
        ->required();
    extract_cmd->add_option("--payload-out", opt.payload_out,
                            "Recovered payload file to write")
        ->required();
    extract_cmd->add_option("--iterations", opt.iterations,
                            "Number of passes used at embed time")
        ->check(CLI::PositiveNumber);
    extract_cmd->add_option("--threshold", opt.threshold,
                            "Threshold used at embed time");
    extract_cmd->add_option("--pairing", opt.pairing,
                            "Pairing used at embed time")
        ->check(CLI::IsMember({"row", "col", "alt"}));
    extract_cmd->add_option("--backend", opt.backend,
                            "Pair operations: direct or lut")
        ->check(CLI::IsMember({"direct", "lut"}));

    CLI::App* capacity_cmd = app.add_subcommand(
        "capacity", "Report capacity (CSV), optionally sweeping thresholds");
    capacity_cmd->add_option("--input", opt.input, "Image (binary PGM)")
        ->required();
    capacity_cmd->add_option("--iterations", opt.iterations,
                             "Passes to accumulate (stops when saturated)")
        ->check(CLI::PositiveNumber);
    capacity_cmd->add_option("--threshold", opt.threshold,
                             "Single distortion threshold");
    capacity_cmd->add_option("--sweep", opt.sweep,
                             "Threshold sweep START:STOP:STEP");
    capacity_cmd->add_option("--pairing", opt.pairing,
                             "Pair direction: row, col, or alt")
        ->check(CLI::IsMember({"row", "col", "alt"}));
    capacity_cmd->add_option("--backend", opt.backend,
                             "Pair operations: direct or lut")
        ->check(CLI::IsMember({"direct", "lut"}));
    capacity_cmd->add_option("--seed", opt.seed,
                             "Seed for the PSNR fill payload");

    CLI::App* croptest_cmd = app.add_subcommand(
        "croptest",
        "Embed a seeded payload, crop the marked image, grade the recovery");
    croptest_cmd->add_option("--input", opt.input, "Original image (PGM)")
        ->required();
    croptest_cmd
        ->add_option("--crop", opt.crop, "Rectangle X0,Y0,W,H (pair-aligned)")
        ->required()
        ->delimiter(',')
        ->expected(4);
    croptest_cmd->add_option("--output", opt.output,
                             "Write the recovered crop here (optional)");
    croptest_cmd->add_option("--threshold", opt.threshold,
                             "Distortion threshold");
    croptest_cmd->add_option("--pairing", opt.pairing,
                             "row or col (alt behaves like row)")
        ->check(CLI::IsMember({"row", "col", "alt"}));
    croptest_cmd->add_option("--backend", opt.backend,
                             "Pair operations: direct or lut")
        ->check(CLI::IsMember({"direct", "lut"}));
    croptest_cmd->add_option("--seed", opt.seed, "Payload seed");

    CLI::App* bench_cmd = app.add_subcommand(
        "bench", "Time both backends after checking they agree");
    bench_cmd->add_option("--input", opt.input, "Image (binary PGM)")
        ->required();
    bench_cmd->add_option("--reps", opt.reps, "Timed repetitions per case")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--threshold", opt.threshold,
                          "Distortion threshold");
    bench_cmd->add_option("--seed", opt.seed, "Payload seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (*embed_cmd) return cmd_embed(opt);
        if (*extract_cmd) return cmd_extract(opt);
        if (*capacity_cmd) return cmd_capacity(opt);
        if (*croptest_cmd) return cmd_croptest(opt);
        if (*bench_cmd) return cmd_bench(opt);
    } catch (const PayloadTooLarge& e) {
        std::cerr << "rcmtool: " << e.what() << "\n";
        return 2;
    } catch (const TrailingSavedBits& e) {
        std::cerr << "rcmtool: " << e.what() << "\n";
        return 3;
    } catch (const TrailingUnresolvedPairs& e) {
        std::cerr << "rcmtool: " << e.what() << "\n";
        return 4;
    } catch (const EnvelopeCorrupt& e) {
        std::cerr << "rcmtool: " << e.what() << "\n";
        return 4;
    } catch (const MisalignedCrop& e) {
        std::cerr << "rcmtool: " << e.what() << "\n";
        return 5;
    } catch (const UsageError& e) {
        std::cerr << "rcmtool: " << e.what() << "\n";
        return 64;
    } catch (const Error& e) {
        std::cerr << "rcmtool: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "rcmtool: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
