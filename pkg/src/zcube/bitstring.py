"""Fixed-length binary strings with 1-based, leftmost-first bit indexing.

Vertex labels throughout this package are bit strings b_1 .. b_n where b_1
is the leftmost bit.  Instances are immutable and hashable.  The bits are
packed into a Python int with bit 1 as the most significant bit, so for
equal lengths lexicographic order of the text form coincides with numeric
order of ``value``; the exact-search code uses ``value`` as its array
index.  Arbitrary lengths are supported (no machine-word cap).
"""

from __future__ import annotations

from typing import Iterator

from .errors import ContractViolation, ParseError


class BitString:
    """Immutable binary string of fixed length; bit 1 is the leftmost bit."""

    __slots__ = ("_n", "_v")

    def __init__(self, length: int, value: int) -> None:
        if length < 0:
            raise ContractViolation(f"negative length {length}")
        if not 0 <= value < (1 << length):
            raise ContractViolation(f"value {value} does not fit in {length} bits")
        self._n = length
        self._v = value

    @classmethod
    def parse(cls, text: str) -> "BitString":
        """Parse a '0'/'1' string, bit 1 first."""
        if not text:
            raise ParseError("empty bit string")
        value = 0
        for pos, ch in enumerate(text, start=1):
            if ch == "1":
                value = (value << 1) | 1
            elif ch == "0":
                value <<= 1
            else:
                raise ParseError(
                    f"invalid character {ch!r} at position {pos}", position=pos
                )
        return cls(len(text), value)

    @property
    def length(self) -> int:
        return self._n

    @property
    def value(self) -> int:
        """Packed integer form, bit 1 most significant (internal index form)."""
        return self._v

    def bit(self, i: int) -> int:
        """Bit b_i, 1-based."""
        if not 1 <= i <= self._n:
            raise ContractViolation(f"bit index {i} out of range 1..{self._n}")
        return (self._v >> (self._n - i)) & 1

    def slice(self, i: int, j: int) -> "BitString":
        """The substring b_i .. b_j (inclusive); j = i-1 yields the empty string."""
        if j == i - 1 and 1 <= i <= self._n + 1:
            return BitString(0, 0)
        if not (1 <= i <= j <= self._n):
            raise ContractViolation(
                f"slice indices ({i},{j}) out of range for length {self._n}"
            )
        width = j - i + 1
        return BitString(width, (self._v >> (self._n - j)) & ((1 << width) - 1))

    def concat(self, other: "BitString") -> "BitString":
        """Concatenation: self's bits first."""
        return BitString(self._n + other._n, (self._v << other._n) | other._v)

    def xor(self, other: "BitString") -> "BitString":
        if self._n != other._n:
            raise ContractViolation(
                f"xor of unequal lengths {self._n} and {other._n}"
            )
        return BitString(self._n, self._v ^ other._v)

    def complement(self) -> "BitString":
        """Flip every bit."""
        return BitString(self._n, self._v ^ ((1 << self._n) - 1))

    def __add__(self, other: "BitString") -> "BitString":
        return self.concat(other)

    def __xor__(self, other: "BitString") -> "BitString":
        return self.xor(other)

    def __len__(self) -> int:
        return self._n

    def __iter__(self) -> Iterator[int]:
        for i in range(1, self._n + 1):
            yield (self._v >> (self._n - i)) & 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self._n == other._n and self._v == other._v

    def __hash__(self) -> int:
        return hash((self._n, self._v))

    def __str__(self) -> str:
        return format(self._v, f"0{self._n}b") if self._n else ""

    def __repr__(self) -> str:
        return f"BitString({self._n}, 0b{self.__str__() or '0'})"
