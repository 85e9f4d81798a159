#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "rcm/image.hpp"
#include "support/synth.hpp"

using namespace rcm;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) {
    return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("reads a minimal binary PGM") {
    auto data = bytes_of("P5\n2 1\n255\n");
    data.push_back(100);
    data.push_back(80);
    const GrayImage img = read_pgm(data);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.max_value == 255);
    CHECK(img.at(0, 0) == 100);
    CHECK(img.at(1, 0) == 80);
}

TEST_CASE("reader accepts header comments and flexible whitespace") {
    auto data = bytes_of("P5 # comment\n# full line\n  2\t1 # dims\n 255\n");
    data.push_back(7);
    data.push_back(9);
    const GrayImage img = read_pgm(data);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.at(1, 0) == 9);
}

TEST_CASE("writer emits the canonical header and no comments") {
    GrayImage img(3, 2, 255);
    for (int i = 0; i < 6; ++i) img.samples[i] = std::uint8_t(10 * i);
    const std::vector<std::uint8_t> out = write_pgm(img);
    const std::string header(out.begin(), out.begin() + 11);
    CHECK(header == "P5\n3 2\n255\n");
    CHECK(out.size() == 11 + 6);
    CHECK(out[11] == 0);
    CHECK(out[16] == 50);
}

TEST_CASE("write then read is the identity") {
    const GrayImage img = synth::uniform_noise(33, 17, 42, 128, 100);
    CHECK(read_pgm(write_pgm(img)) == img);
}

TEST_CASE("file round trip") {
    const GrayImage img = synth::waves(64, 48);
    const std::string path =
        (std::filesystem::temp_directory_path() / "rcm_io_test.pgm").string();
    write_pgm_file(path, img);
    CHECK(read_pgm_file(path) == img);
    std::filesystem::remove(path);
}

TEST_CASE("reader rejects malformed input") {
    CHECK_THROWS_AS(read_pgm(bytes_of("P6\n2 1\n255\n..")), MalformedHeader);
    CHECK_THROWS_AS(read_pgm(bytes_of("")), MalformedHeader);
    CHECK_THROWS_AS(read_pgm(bytes_of("P5\n2\n255\n")), MalformedHeader);
    CHECK_THROWS_AS(read_pgm(bytes_of("P5\n0 1\n255\n")), MalformedHeader);
    CHECK_THROWS_AS(read_pgm(bytes_of("P5\n2 1\n90000\nab")),
                    UnsupportedMaxval);
    CHECK_THROWS_AS(read_pgm(bytes_of("P5\n2 1\n255\nX")), TruncatedData);
    CHECK_THROWS_AS(read_pgm_file("/nonexistent/rcm.pgm"), IoFailure);

    // Declared maxval caps the sample values.
    auto data = bytes_of("P5\n2 1\n100\n");
    data.push_back(150);
    data.push_back(3);
    CHECK_THROWS_AS(read_pgm(data), MalformedHeader);
}

TEST_CASE("psnr basics") {
    const GrayImage img = synth::uniform_noise(32, 32, 7);
    CHECK(std::isinf(psnr(img, img)));
    CHECK(psnr(img, img) > 0);

    // One graylevel of error everywhere is a fixed, known figure.
    GrayImage off = img;
    for (auto& s : off.samples) s = std::uint8_t(s + 1);
    CHECK(psnr(img, off) == doctest::Approx(48.1308).epsilon(0.0005));
    CHECK(psnr(img, off) == psnr(off, img));

    GrayImage other(16, 16);
    CHECK_THROWS_AS(psnr(img, other), DimensionMismatch);
}

TEST_CASE("crop basics") {
    const GrayImage img = synth::gradient(10, 8);
    const GrayImage all = crop(img, 0, 0, 10, 8);
    CHECK(all == img);

    const GrayImage cell = crop(img, 3, 2, 1, 1);
    CHECK(cell.width == 1);
    CHECK(cell.at(0, 0) == img.at(3, 2));

    CHECK_THROWS_AS(crop(img, 8, 0, 4, 2), OutOfBounds);
    CHECK_THROWS_AS(crop(img, -1, 0, 4, 2), OutOfBounds);
    CHECK_THROWS_AS(crop(img, 0, 0, 0, 2), OutOfBounds);
}

TEST_CASE("crops compose") {
    const GrayImage img = synth::noisy_gradient(40, 30, 99);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int x0 = int(rng() % 20), y0 = int(rng() % 15);
        const int w = 2 + int(rng() % 15), h = 2 + int(rng() % 10);
        const int x1 = int(rng() % (w / 2)), y1 = int(rng() % (h / 2));
        const int w1 = 1 + int(rng() % (w - x1)), h1 = 1 + int(rng() % (h - y1));
        const GrayImage a = crop(crop(img, x0, y0, w, h), x1, y1, w1, h1);
        const GrayImage b = crop(img, x0 + x1, y0 + y1, w1, h1);
        CHECK(a == b);
    }
}
