#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rcm {

// Base class for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Embedding was asked to store more watermark bits than the image holds.
class PayloadTooLarge : public Error {
public:
    PayloadTooLarge(std::size_t requested_bits, std::int64_t capacity_bits)
        : Error("payload of " + std::to_string(requested_bits) +
                " bits exceeds the measured capacity of " +
                std::to_string(capacity_bits) + " bits"),
          requested_bits_(requested_bits),
          capacity_bits_(capacity_bits) {}

    std::size_t requested_bits() const noexcept { return requested_bits_; }
    std::int64_t capacity_bits() const noexcept { return capacity_bits_; }

private:
    std::size_t requested_bits_;
    std::int64_t capacity_bits_;
};

// Saved bits were still queued when the embedding scan ran out of slots.
class TrailingSavedBits : public Error {
public:
    explicit TrailingSavedBits(std::size_t pending)
        : Error(std::to_string(pending) +
                " saved bit(s) had no later slot to land in; "
                "the image cannot be marked losslessly"),
          pending_(pending) {}

    std::size_t pending() const noexcept { return pending_; }

private:
    std::size_t pending_;
};

// Extraction finished with pairs still waiting for their saved bit.
class TrailingUnresolvedPairs : public Error {
public:
    explicit TrailingUnresolvedPairs(std::size_t pending)
        : Error(std::to_string(pending) +
                " pair(s) never received their saved bit; "
                "the input is not a complete marked image"),
          pending_(pending) {}

    std::size_t pending() const noexcept { return pending_; }

private:
    std::size_t pending_;
};

// Payload envelope failed validation (bad magic or checksum mismatch).
class EnvelopeCorrupt : public Error {
public:
    using Error::Error;
};

// Payload envelope ended before the declared length was reached.
class Truncated : public EnvelopeCorrupt {
public:
    using EnvelopeCorrupt::EnvelopeCorrupt;
};

// Image file problems.
class MalformedHeader : public Error {
public:
    using Error::Error;
};

class UnsupportedMaxval : public Error {
public:
    using Error::Error;
};

class TruncatedData : public Error {
public:
    using Error::Error;
};

class IoFailure : public Error {
public:
    using Error::Error;
};

// Geometry problems.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class OutOfBounds : public Error {
public:
    using Error::Error;
};

// A crop rectangle that splits pairs cannot be decoded independently.
class MisalignedCrop : public Error {
public:
    using Error::Error;
};

// Caller broke an interface contract (bad parameter values and the like).
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace rcm
