#include "rcm/image.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace rcm {

namespace {

// Header scanner for the plain-byte part of a PGM file.
class ByteCursor {
public:
    explicit ByteCursor(std::span<const std::uint8_t> data) : data_(data) {}

    bool eof() const noexcept { return pos_ >= data_.size(); }
    int peek() const noexcept { return eof() ? -1 : data_[pos_]; }
    int get() noexcept { return eof() ? -1 : data_[pos_++]; }
    std::size_t pos() const noexcept { return pos_; }

    void skip_space_and_comments() {
        for (;;) {
            while (!eof() && std::isspace(peek())) ++pos_;
            if (!eof() && peek() == '#') {
                while (!eof() && get() != '\n') {
                }
                continue;
            }
            break;
        }
    }

    long read_number(const char* what) {
        skip_space_and_comments();
        if (eof() || !std::isdigit(peek()))
            throw MalformedHeader(std::string("expected ") + what +
                                  " in PGM header");
        long value = 0;
        while (!eof() && std::isdigit(peek())) {
            value = value * 10 + (get() - '0');
            if (value > 1'000'000'000L)
                throw MalformedHeader(std::string(what) +
                                      " in PGM header is absurdly large");
        }
        return value;
    }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace

GrayImage::GrayImage(int w, int h, int maxval, std::uint8_t fill)
    : width(w), height(h), max_value(maxval) {
    if (w < 1 || h < 1)
        throw UsageError("image dimensions must be positive");
    if (maxval < 1 || maxval > 255)
        throw UsageError("max_value must lie in [1, 255]");
    samples.assign(std::size_t(w) * std::size_t(h), fill);
}

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw MalformedHeader("not a binary PGM (missing P5 magic)");
    ByteCursor cur(bytes.subspan(2));
    const long w = cur.read_number("width");
    const long h = cur.read_number("height");
    const long maxval = cur.read_number("maxval");
    if (w < 1 || h < 1)
        throw MalformedHeader("image dimensions must be positive");
    if (w > (1 << 20) || h > (1 << 20) || w * h > (1L << 31))
        throw MalformedHeader("image dimensions are absurdly large");
    if (maxval < 1) throw MalformedHeader("maxval must be at least 1");
    if (maxval > 255)
        throw UnsupportedMaxval("maxval " + std::to_string(maxval) +
                                " is not supported (limit 255)");
    // Exactly one whitespace byte separates the header from the raster.
    const int sep = cur.get();
    if (sep < 0 || !std::isspace(sep))
        throw MalformedHeader("missing whitespace before the raster");

    const std::size_t need = std::size_t(w) * std::size_t(h);
    const std::span<const std::uint8_t> raster = bytes.subspan(2 + cur.pos());
    if (raster.size() < need)
        throw TruncatedData("raster holds " + std::to_string(raster.size()) +
                            " of " + std::to_string(need) + " bytes");

    GrayImage img(static_cast<int>(w), static_cast<int>(h),
                  static_cast<int>(maxval));
    img.samples.assign(raster.begin(), raster.begin() + need);
    if (maxval < 255)
        for (std::uint8_t s : img.samples)
            if (s > maxval)
                throw MalformedHeader("sample value " + std::to_string(s) +
                                      " exceeds declared maxval " +
                                      std::to_string(maxval));
    return img;
}

GrayImage read_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open " + path + " for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoFailure("read error on " + path);
    return read_pgm(bytes);
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
    char header[64];
    const int n = std::snprintf(header, sizeof(header), "P5\n%d %d\n%d\n",
                                img.width, img.height, img.max_value);
    std::vector<std::uint8_t> out(header, header + n);
    out.insert(out.end(), img.samples.begin(), img.samples.end());
    return out;
}

void write_pgm_file(const std::string& path, const GrayImage& img) {
    const std::vector<std::uint8_t> bytes = write_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoFailure("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoFailure("write error on " + path);
}

GrayImage crop(const GrayImage& img, int x0, int y0, int w, int h) {
    if (w < 1 || h < 1 || x0 < 0 || y0 < 0 || x0 + w > img.width ||
        y0 + h > img.height)
        throw OutOfBounds("crop rectangle " + std::to_string(x0) + "," +
                          std::to_string(y0) + " " + std::to_string(w) + "x" +
                          std::to_string(h) + " leaves the " +
                          std::to_string(img.width) + "x" +
                          std::to_string(img.height) + " image");
    GrayImage out(w, h, img.max_value);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(x, y) = img.at(x0 + x, y0 + y);
    return out;
}

double psnr(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height ||
        a.max_value != b.max_value)
        throw DimensionMismatch("images differ in size or max_value");
    std::uint64_t sse = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const int d = int(a.samples[i]) - int(b.samples[i]);
        sse += std::uint64_t(d * d);
    }
    if (sse == 0) return std::numeric_limits<double>::infinity();
    const double mse = double(sse) / double(a.samples.size());
    const double peak = double(a.max_value);
    return 10.0 * std::log10(peak * peak / mse);
}

}  // namespace rcm
