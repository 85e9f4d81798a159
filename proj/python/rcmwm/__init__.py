"""Reversible image watermarking via pairwise contrast mapping.

Embedding hides payload bytes in the least significant bits of pixel pairs
after a reversible contrast stretch; extraction returns both the payload and
the bit-exact original image.
"""

from ._core import (
    EnvelopeCorruptError,
    Error,
    MisalignedCropError,
    PairClass,
    PayloadTooLargeError,
    TrailingSavedBitsError,
    TrailingUnresolvedPairsError,
    TruncatedError,
    UsageError,
    __version__,
    capacity,
    classify,
    embed,
    extract,
    forward_rcm,
    inverse_rcm,
    psnr,
    read_pgm,
    write_pgm,
)

__all__ = [
    "EnvelopeCorruptError",
    "Error",
    "MisalignedCropError",
    "PairClass",
    "PayloadTooLargeError",
    "TrailingSavedBitsError",
    "TrailingUnresolvedPairsError",
    "TruncatedError",
    "UsageError",
    "__version__",
    "capacity",
    "classify",
    "embed",
    "extract",
    "forward_rcm",
    "inverse_rcm",
    "psnr",
    "read_pgm",
    "write_pgm",
]
