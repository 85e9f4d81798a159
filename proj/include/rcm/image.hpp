#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rcm/errors.hpp"

namespace rcm {

// Row-major grayscale raster. Samples lie in [0, max_value].
struct GrayImage {
    int width{0};
    int height{0};
    int max_value{255};
    std::vector<std::uint8_t> samples;

    GrayImage() = default;
    GrayImage(int w, int h, int maxval = 255, std::uint8_t fill = 0);

    std::size_t index(int x, int y) const noexcept {
        return std::size_t(y) * std::size_t(width) + std::size_t(x);
    }
    std::uint8_t at(int x, int y) const { return samples[index(x, y)]; }
    std::uint8_t& at(int x, int y) { return samples[index(x, y)]; }
    std::int64_t pixel_count() const noexcept {
        return std::int64_t(width) * std::int64_t(height);
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

// Binary PGM (P5), one byte per sample, maxval up to 255. The reader accepts
// `#` comments inside the header; the writer never emits any and always
// produces the canonical header "P5\n<w> <h>\n<maxval>\n".
GrayImage read_pgm(std::span<const std::uint8_t> bytes);
GrayImage read_pgm_file(const std::string& path);
std::vector<std::uint8_t> write_pgm(const GrayImage& img);
void write_pgm_file(const std::string& path, const GrayImage& img);

// Copies the rectangle [x0, x0+w) x [y0, y0+h); throws OutOfBounds when the
// rectangle leaves the image or is empty.
GrayImage crop(const GrayImage& img, int x0, int y0, int w, int h);

// Peak signal-to-noise ratio in dB against the shared max_value; returns
// +infinity for identical images. Dimensions and max_value must match.
double psnr(const GrayImage& a, const GrayImage& b);

}  // namespace rcm
