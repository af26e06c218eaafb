"""Sign-magnitude fixed-point codec for oracle data registers.

Entries are normalized by the bound Lambda and quantized to p fraction bits:
magnitude code round(|x| / Lambda * 2^p) lies in [0, 2^p], so the data
register is p + 2 bits wide (one integer bit for |x| = Lambda plus the sign
bit on top).  Magnitude extraction is literally "drop the sign bit", which is
what the comparator relies on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FixedPointCodec:
    fraction_bits: int
    lamb: float

    def __post_init__(self):
        if self.fraction_bits < 1:
            raise ValueError(f"need at least 1 fraction bit, got {self.fraction_bits}")
        if not (self.lamb > 0 and np.isfinite(self.lamb)):
            raise ValueError(f"normalization bound must be positive finite, got {self.lamb}")

    @property
    def width(self) -> int:
        """Data register width in bits: sign + (p + 1) magnitude bits."""
        return self.fraction_bits + 2

    @property
    def sign_bit(self) -> int:
        return 1 << (self.fraction_bits + 1)

    @property
    def magnitude_mask(self) -> int:
        return self.sign_bit - 1

    def encode(self, x):
        """Word(s) for real value(s) x with |x| <= Lambda; -0 canonicalizes to 0."""
        x = np.asarray(x, dtype=float)
        if np.any(np.abs(x) > self.lamb * (1 + 1e-12)):
            raise ValueError(f"value exceeds normalization bound {self.lamb}")
        scale = float(1 << self.fraction_bits) / self.lamb
        mag = np.rint(np.abs(x) * scale).astype(np.int64)
        word = np.where((x < 0) & (mag > 0), mag + self.sign_bit, mag)
        return word if word.ndim else int(word)

    def decode(self, word):
        """Real value(s) represented by word(s)."""
        word = np.asarray(word, dtype=np.int64)
        mag = word & self.magnitude_mask
        sign = np.where(word & self.sign_bit, -1.0, 1.0)
        value = sign * mag * (self.lamb / float(1 << self.fraction_bits))
        return value if value.ndim else float(value)

    def magnitude_code(self, word):
        """Magnitude bits of word(s), i.e. the sign bit neglected."""
        word = np.asarray(word, dtype=np.int64)
        mag = word & self.magnitude_mask
        return mag if mag.ndim else int(mag)

    def signed_units(self, word):
        """Signed integer value in grid units of Lambda / 2^p (for adders)."""
        word = np.asarray(word, dtype=np.int64)
        mag = word & self.magnitude_mask
        units = np.where(word & self.sign_bit, -mag, mag)
        return units if units.ndim else int(units)

    def quantize(self, x):
        """Nearest representable value(s): decode(encode(x))."""
        return self.decode(self.encode(x))
