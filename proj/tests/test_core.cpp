#include <doctest.h>

#include <cstdlib>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rcm/core.hpp"

using namespace rcm;

namespace {

const std::vector<std::optional<int>> kThresholds = {
    std::nullopt, 2, 8, 32, 128};

}  // namespace

TEST_CASE("forward stretch examples") {
    CHECK(forward_rcm({100, 80}) == PixelPair{120, 60});
    CHECK(forward_rcm({90, 120}) == PixelPair{60, 150});
    CHECK(forward_rcm({7, 7}) == PixelPair{7, 7});
    CHECK(forward_rcm({0, 0}) == PixelPair{0, 0});
}

TEST_CASE("inverse stretch examples") {
    CHECK(inverse_rcm({120, 60}) == PixelPair{100, 80});
    CHECK(inverse_rcm({60, 150}) == PixelPair{90, 120});
    // Exact even when the stretched values lost their low bits.
    CHECK(inverse_rcm({118, 62}) == PixelPair{100, 81});
    CHECK(inverse_rcm({7, 7}) == PixelPair{7, 7});
}

TEST_CASE("sum preserved and contrast tripled by the stretch") {
    int failures = 0;
    for (int x = 0; x <= 255; ++x)
        for (int y = 0; y <= 255; ++y) {
            const PixelPair t = forward_rcm({x, y});
            if (t.x + t.y != x + y) ++failures;
            if (t.x - t.y != 3 * (x - y)) ++failures;
        }
    CHECK(failures == 0);
}

TEST_CASE("domain spec validation") {
    CHECK_THROWS_AS(DomainSpec(256), UsageError);
    CHECK_THROWS_AS(DomainSpec(0), UsageError);
    CHECK_THROWS_AS(DomainSpec(-3), UsageError);
    CHECK_THROWS_AS(DomainSpec(255, 0), UsageError);
    CHECK_THROWS_AS(DomainSpec(255, -1), UsageError);
    CHECK_THROWS_AS(DomainSpec(255, 257), UsageError);
    CHECK_NOTHROW(DomainSpec(255, 256));
    CHECK_NOTHROW(DomainSpec(255, 1));
    CHECK_NOTHROW(DomainSpec(15));
}

TEST_CASE("threshold of ceiling plus one admits the same pairs as none") {
    const DomainSpec none(255);
    const DomainSpec full(255, 256);
    int failures = 0;
    for (int x = 0; x <= 255; ++x)
        for (int y = 0; y <= 255; ++y) {
            if (in_domain({x, y}, none) != in_domain({x, y}, full)) ++failures;
            if (in_dc({x, y}, none) != in_dc({x, y}, full)) ++failures;
        }
    CHECK(failures == 0);
}

TEST_CASE("domain membership examples") {
    const DomainSpec spec(255);
    CHECK(in_domain({100, 80}, spec));
    CHECK(in_domain({0, 0}, spec));
    CHECK(in_domain({255, 255}, spec));
    CHECK_FALSE(in_domain({255, 0}, spec));
    CHECK_FALSE(in_domain({0, 255}, spec));

    const DomainSpec tight(255, 8);
    CHECK_FALSE(in_domain({100, 80}, tight));  // contrast 20
    CHECK(in_domain({100, 93}, tight));        // contrast 7
    CHECK_FALSE(in_domain({100, 92}, tight));  // contrast 8, not below 8
}

TEST_CASE("domain matches its defining inequalities") {
    int failures = 0;
    for (std::optional<int> delta : kThresholds) {
        const DomainSpec spec(255, delta);
        for (int x = 0; x <= 255; ++x)
            for (int y = 0; y <= 255; ++y) {
                const int tx = 2 * x - y;
                const int ty = 2 * y - x;
                bool expect = tx >= 0 && tx <= 255 && ty >= 0 && ty <= 255;
                if (delta) expect = expect && std::abs(x - y) < *delta;
                if (in_domain({x, y}, spec) != expect) ++failures;
            }
    }
    CHECK(failures == 0);
}

TEST_CASE("ambiguous odd-odd pairs are exactly the domain-border solutions") {
    // Independent oracle: for the full eight-bit range without a threshold,
    // the pairs that must be excluded are the odd-odd solutions of the four
    // border equations 2x-y=1, 2y-x=1, 2x-y=255 and 2y-x=255.
    std::set<std::pair<int, int>> expected;
    for (int x = 1; x <= 255; x += 2)
        for (int y = 1; y <= 255; y += 2) {
            const int tx = 2 * x - y;
            const int ty = 2 * y - x;
            if (tx < 0 || tx > 255 || ty < 0 || ty > 255) continue;
            if (tx == 1 || ty == 1 || tx == 255 || ty == 255)
                expected.insert({x, y});
        }
    CHECK(expected.size() == 170);

    const DomainSpec spec(255);
    std::set<std::pair<int, int>> actual;
    for (int x = 0; x <= 255; ++x)
        for (int y = 0; y <= 255; ++y)
            if (is_ambiguous_odd({x, y}, spec)) actual.insert({x, y});
    CHECK(actual == expected);
    CHECK(actual.size() == 170);

    // Spot checks on the corners shared by two equations.
    CHECK(is_ambiguous_odd({1, 1}, spec));
    CHECK(is_ambiguous_odd({255, 255}, spec));
    CHECK_FALSE(is_ambiguous_odd({101, 81}, spec));
    CHECK_FALSE(is_ambiguous_odd({100, 80}, spec));  // not odd-odd
}

TEST_CASE("classification examples") {
    const DomainSpec spec(255);
    CHECK(classify({100, 80}, spec) == PairClass::Transformable);
    CHECK(classify({101, 81}, spec) == PairClass::OddEmbeddable);
    CHECK(classify({255, 0}, spec) == PairClass::NotTransformable);
    CHECK(classify({1, 1}, spec) == PairClass::NotTransformable);  // ambiguous
}

TEST_CASE("classification partitions every pair") {
    int failures = 0;
    for (std::optional<int> delta : kThresholds) {
        const DomainSpec spec(255, delta);
        for (int x = 0; x <= 255; ++x)
            for (int y = 0; y <= 255; ++y) {
                const PixelPair p{x, y};
                const bool dc = in_dc(p, spec);
                const bool both_odd = (x % 2 == 1) && (y % 2 == 1);
                PairClass expect;
                if (!dc)
                    expect = PairClass::NotTransformable;
                else if (both_odd)
                    expect = PairClass::OddEmbeddable;
                else
                    expect = PairClass::Transformable;
                if (classify(p, spec) != expect) ++failures;
            }
    }
    CHECK(failures == 0);
}

TEST_CASE("marking examples") {
    const DomainSpec spec(255);
    CHECK(mark_pair({100, 80}, spec, 1) == MarkedPair{121, 61, std::nullopt});
    CHECK(mark_pair({100, 80}, spec, 0) == MarkedPair{121, 60, std::nullopt});
    CHECK(mark_pair({101, 81}, spec, 1) == MarkedPair{100, 81, std::nullopt});
    CHECK(mark_pair({101, 81}, spec, 0) == MarkedPair{100, 80, std::nullopt});
    CHECK(mark_pair({255, 0}, spec, std::nullopt) == MarkedPair{254, 0, 1});
    CHECK(mark_pair({254, 0}, spec, std::nullopt) == MarkedPair{254, 0, 0});
}

TEST_CASE("marking rejects contract violations") {
    const DomainSpec spec(255);
    CHECK_THROWS_AS(mark_pair({100, 80}, spec, std::nullopt), UsageError);
    CHECK_THROWS_AS(mark_pair({255, 0}, spec, 1), UsageError);
    CHECK_THROWS_AS(mark_pair({100, 80}, spec, 2), UsageError);
    CHECK_THROWS_AS(mark_pair({100, 80}, spec, -1), UsageError);
}

TEST_CASE("detection examples") {
    const DomainSpec spec(255);

    Detection d = detect_pair({121, 61}, spec);
    CHECK(d.cls == PairClass::Transformable);
    CHECK(d.bit == 1);
    CHECK(d.recovered == PixelPair{100, 80});
    CHECK_FALSE(d.needs_saved_bit);

    d = detect_pair({121, 60}, spec);
    CHECK(d.cls == PairClass::Transformable);
    CHECK(d.bit == 0);
    CHECK(d.recovered == PixelPair{100, 80});

    d = detect_pair({100, 81}, spec);
    CHECK(d.cls == PairClass::OddEmbeddable);
    CHECK(d.bit == 1);
    CHECK(d.recovered == PixelPair{101, 81});

    d = detect_pair({254, 0}, spec);
    CHECK(d.cls == PairClass::NotTransformable);
    CHECK_FALSE(d.bit.has_value());
    CHECK_FALSE(d.recovered.has_value());
    CHECK(d.needs_saved_bit);
}

TEST_CASE("detection inverts marking for every pair, class and bit") {
    for (std::optional<int> delta : kThresholds) {
        const DomainSpec spec(255, delta);
        long failures = 0;
        std::string first;
        for (int x = 0; x <= 255; ++x)
            for (int y = 0; y <= 255; ++y) {
                const PixelPair p{x, y};
                const PairClass cls = classify(p, spec);
                if (cls == PairClass::NotTransformable) {
                    const MarkedPair m = mark_pair(p, spec, std::nullopt);
                    const Detection d = detect_pair({m.x, m.y}, spec);
                    const bool ok =
                        d.needs_saved_bit && m.saved_bit.has_value() &&
                        PixelPair{m.x | *m.saved_bit, m.y} == p;
                    if (!ok) {
                        ++failures;
                        if (first.empty())
                            first = "pair " + std::to_string(x) + "," +
                                    std::to_string(y);
                    }
                    continue;
                }
                for (int bit = 0; bit <= 1; ++bit) {
                    const MarkedPair m = mark_pair(p, spec, bit);
                    const Detection d = detect_pair({m.x, m.y}, spec);
                    const bool ok = !d.needs_saved_bit && d.cls == cls &&
                                    d.bit == bit && d.recovered == p;
                    if (!ok) {
                        ++failures;
                        if (first.empty())
                            first = "pair " + std::to_string(x) + "," +
                                    std::to_string(y) + " bit " +
                                    std::to_string(bit);
                    }
                }
            }
        INFO("threshold ", delta ? std::to_string(*delta) : "none",
             " first failure at ", first);
        CHECK(failures == 0);
    }
}

TEST_CASE("inverse absorbs cleared low bits for non-odd-odd domain pairs") {
    const DomainSpec spec(255);
    long failures = 0;
    for (int x = 0; x <= 255; ++x)
        for (int y = 0; y <= 255; ++y) {
            if (!in_domain({x, y}, spec)) continue;
            const PixelPair t = forward_rcm({x, y});
            if (inverse_rcm(t) != PixelPair{x, y}) ++failures;
            // Odd-odd pairs genuinely lose information when the stretched
            // LSBs go; they are exactly the pairs marking routes around.
            if (x % 2 == 1 && y % 2 == 1) continue;
            if (inverse_rcm({t.x & ~1, t.y & ~1}) != PixelPair{x, y})
                ++failures;
        }
    CHECK(failures == 0);
}

TEST_CASE("per-pixel displacement stays within the threshold") {
    for (int delta : {2, 8, 32}) {
        const DomainSpec spec(255, delta);
        long failures = 0;
        for (int x = 0; x <= 255; ++x)
            for (int y = 0; y <= 255; ++y) {
                const PixelPair p{x, y};
                const PairClass cls = classify(p, spec);
                const int bound =
                    cls == PairClass::NotTransformable ? 1 : delta;
                const MarkedPair m =
                    cls == PairClass::NotTransformable
                        ? mark_pair(p, spec, std::nullopt)
                        : mark_pair(p, spec, 1);
                if (std::abs(m.x - x) > bound || std::abs(m.y - y) > bound)
                    ++failures;
            }
        INFO("threshold ", delta);
        CHECK(failures == 0);
    }
}

TEST_CASE("marked values never leave the representable range") {
    for (std::optional<int> delta : kThresholds) {
        const DomainSpec spec(255, delta);
        long failures = 0;
        for (int x = 0; x <= 255; ++x)
            for (int y = 0; y <= 255; ++y) {
                const PixelPair p{x, y};
                for (std::optional<int> bit :
                     classify(p, spec) == PairClass::NotTransformable
                         ? std::vector<std::optional<int>>{std::nullopt}
                         : std::vector<std::optional<int>>{0, 1}) {
                    const MarkedPair m = mark_pair(p, spec, bit);
                    if (m.x < 0 || m.x > 255 || m.y < 0 || m.y > 255)
                        ++failures;
                }
            }
        CHECK(failures == 0);
    }
}
