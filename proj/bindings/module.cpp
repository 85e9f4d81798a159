// Python bindings for the reversible watermarking core. Images cross the
// boundary as 2-D uint8 numpy arrays, payloads as bytes.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "rcm/codec.hpp"
#include "rcm/envelope.hpp"
#include "rcm/image.hpp"
#include "rcm/lut.hpp"

namespace py = pybind11;
using namespace rcm;

namespace {

GrayImage image_from_array(const py::array& raw) {
    // Reversibility is the whole point, so refuse lossy dtype coercion
    // instead of silently casting.
    if (!py::isinstance<py::array_t<std::uint8_t>>(raw))
        throw UsageError("image array must have dtype uint8");
    if (raw.ndim() != 2)
        throw UsageError("image array must be 2-D (height x width)");
    const auto arr = py::array_t<std::uint8_t, py::array::c_style>::ensure(raw);
    const int h = static_cast<int>(arr.shape(0));
    const int w = static_cast<int>(arr.shape(1));
    GrayImage img(w, h);
    const auto view = arr.unchecked<2>();
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.at(x, y) = view(y, x);
    return img;
}

py::array_t<std::uint8_t> array_from_image(const GrayImage& img) {
    py::array_t<std::uint8_t> arr({img.height, img.width});
    auto view = arr.mutable_unchecked<2>();
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) view(y, x) = img.at(x, y);
    return arr;
}

DomainSpec spec_for(std::optional<int> threshold) {
    return DomainSpec(255, threshold);
}

IterationPlan plan_for(const std::string& pairing, int iterations) {
    IterationPlan plan;
    for (int i = 0; i < iterations; ++i) {
        if (pairing == "row")
            plan.orders.push_back(PairingOrder::RowMajor);
        else if (pairing == "col")
            plan.orders.push_back(PairingOrder::ColumnMajor);
        else if (pairing == "alt")
            plan.orders.push_back(i % 2 == 0 ? PairingOrder::RowMajor
                                             : PairingOrder::ColumnMajor);
        else
            throw UsageError("pairing must be 'row', 'col' or 'alt'");
    }
    return plan;
}

py::list stats_list(const std::vector<EmbedStats>& stats,
                    const std::vector<std::size_t>* consumed) {
    py::list out;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        py::dict d;
        d["iteration"] = i + 1;
        d["pairs"] = stats[i].pairs;
        d["embeddable"] = stats[i].embeddable;
        d["capacity_bits"] = stats[i].capacity_bits;
        d["bitrate_bpp"] = stats[i].bitrate_bpp;
        if (consumed) d["consumed_bits"] = (*consumed)[i];
        out.append(d);
    }
    return out;
}

std::vector<std::uint8_t> bytes_to_vector(const py::bytes& data) {
    const std::string s = data;
    return {s.begin(), s.end()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Reversible image watermarking via pairwise contrast mapping";
#ifdef RCMWM_VERSION
    m.attr("__version__") = RCMWM_VERSION;
#else
    m.attr("__version__") = "dev";
#endif

    // Exception hierarchy: everything the library throws lands under Error.
    py::object err =
        py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<PayloadTooLarge>(m, "PayloadTooLargeError", err);
    py::register_exception<TrailingSavedBits>(m, "TrailingSavedBitsError",
                                              err);
    py::register_exception<TrailingUnresolvedPairs>(
        m, "TrailingUnresolvedPairsError", err);
    py::object env_err =
        py::register_exception<EnvelopeCorrupt>(m, "EnvelopeCorruptError",
                                                err);
    py::register_exception<Truncated>(m, "TruncatedError", env_err);
    py::register_exception<MisalignedCrop>(m, "MisalignedCropError", err);
    py::register_exception<UsageError>(m, "UsageError", err);

    py::enum_<PairClass>(m, "PairClass")
        .value("TRANSFORMABLE", PairClass::Transformable)
        .value("ODD_EMBEDDABLE", PairClass::OddEmbeddable)
        .value("NOT_TRANSFORMABLE", PairClass::NotTransformable);

    m.def(
        "forward_rcm",
        [](int x, int y) {
            const PixelPair t = forward_rcm({x, y});
            return py::make_tuple(t.x, t.y);
        },
        py::arg("x"), py::arg("y"),
        "Pairwise contrast stretch (x, y) -> (2x - y, 2y - x).");

    m.def(
        "inverse_rcm",
        [](int x, int y) {
            const PixelPair p = inverse_rcm({x, y});
            return py::make_tuple(p.x, p.y);
        },
        py::arg("x"), py::arg("y"),
        "Exact integer inverse of forward_rcm.");

    m.def(
        "classify",
        [](int x, int y, std::optional<int> threshold, int max_level) {
            return classify({x, y}, DomainSpec(max_level, threshold));
        },
        py::arg("x"), py::arg("y"), py::arg("threshold") = std::nullopt,
        py::arg("max_level") = 255,
        "How a pair behaves during marking.");

    m.def(
        "capacity",
        [](const py::array& arr,
           std::optional<int> threshold, const std::string& pairing) {
            const GrayImage img = image_from_array(arr);
            const DomainSpec spec = spec_for(threshold);
            const IterationPlan plan = plan_for(pairing, 1);
            const EmbedStats st =
                capacity(img, spec, plan.orders[0], nullptr);
            py::dict d;
            d["pairs"] = st.pairs;
            d["embeddable"] = st.embeddable;
            d["capacity_bits"] = st.capacity_bits;
            d["bitrate_bpp"] = st.bitrate_bpp;
            return d;
        },
        py::arg("image"), py::arg("threshold") = std::nullopt,
        py::arg("pairing") = "row",
        "Counts pairs and payload slots for one pass over the image.");

    m.def(
        "embed",
        [](const py::array& arr,
           const py::bytes& payload, int iterations,
           std::optional<int> threshold, const std::string& pairing,
           bool use_lut) {
            const GrayImage img = image_from_array(arr);
            const DomainSpec spec = spec_for(threshold);
            const IterationPlan plan = plan_for(pairing, iterations);
            std::optional<LutTables> tables;
            if (use_lut) tables = build_luts(spec);
            const MultiEmbedResult res =
                embed_multi(img, bytes_to_vector(payload), plan, spec,
                            use_lut ? &*tables : nullptr);
            return py::make_tuple(
                array_from_image(res.marked),
                stats_list(res.per_iteration, &res.consumed_per_iteration));
        },
        py::arg("image"), py::arg("payload"), py::arg("iterations") = 1,
        py::arg("threshold") = std::nullopt, py::arg("pairing") = "alt",
        py::arg("use_lut") = false,
        "Embeds payload bytes; returns (marked_image, per_iteration_stats).");

    m.def(
        "extract",
        [](const py::array& arr,
           int iterations, std::optional<int> threshold,
           const std::string& pairing, bool use_lut) {
            const GrayImage img = image_from_array(arr);
            const DomainSpec spec = spec_for(threshold);
            const IterationPlan plan = plan_for(pairing, iterations);
            std::optional<LutTables> tables;
            if (use_lut) tables = build_luts(spec);
            const MultiExtractResult res = extract_multi(
                img, plan, spec, use_lut ? &*tables : nullptr);
            return py::make_tuple(
                array_from_image(res.original),
                py::bytes(reinterpret_cast<const char*>(res.payload.data()),
                          res.payload.size()));
        },
        py::arg("image"), py::arg("iterations") = 1,
        py::arg("threshold") = std::nullopt, py::arg("pairing") = "alt",
        py::arg("use_lut") = false,
        "Recovers (original_image, payload_bytes) from a marked image.");

    m.def(
        "psnr",
        [](const py::array& a, const py::array& b) {
            return psnr(image_from_array(a), image_from_array(b));
        },
        py::arg("a"), py::arg("b"),
        "Peak signal-to-noise ratio in dB (infinite when identical).");

    m.def(
        "read_pgm",
        [](const std::string& path) {
            return array_from_image(read_pgm_file(path));
        },
        py::arg("path"), "Loads a binary PGM as a 2-D uint8 array.");

    m.def(
        "write_pgm",
        [](const std::string& path,
           const py::array& arr) {
            write_pgm_file(path, image_from_array(arr));
        },
        py::arg("path"), py::arg("image"),
        "Writes a 2-D uint8 array as a binary PGM.");
}
