"""Cube families as implicit graphs: mixing permutations and adjacency oracles.

Three families share one adjacency rule.  Vertices are length-n bit
strings; for each level i (1 <= i <= n) every vertex has exactly one
neighbor obtained by flipping bit i and applying the family's mixing
permutation to the suffix x[i+1, n]:

  * family "h": the self-tuned permutation phi, whose prefix width on an
    m-bit string is kappa(m);
  * family "z": the fixed-width permutation phi_k (identity for m <= k);
  * family "q": the identity (classical hypercube, single-bit flips).

No adjacency structure is ever materialized; everything below answers
through these O(n)-per-neighbor oracles.  Bulk (numpy) forms of the same
formulas back the exact-search module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .bitstring import BitString
from .errors import CapExceeded, ContractViolation
from .kappa import kappa

EXPORT_CAP_DEFAULT = 20


@dataclass(frozen=True)
class CubeFamily:
    """Selector for one cube family; ``k`` is present only for kind "z"."""

    kind: str
    k: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in ("h", "z", "q"):
            raise ContractViolation(f"unknown family kind {self.kind!r}")
        if self.kind == "z":
            if self.k is None or self.k < 1:
                raise ContractViolation("family z requires k >= 1")
        elif self.k is not None:
            raise ContractViolation(f"family {self.kind!r} takes no k")

    @classmethod
    def h(cls) -> "CubeFamily":
        return cls("h")

    @classmethod
    def z(cls, k: int) -> "CubeFamily":
        return cls("z", k)

    @classmethod
    def q(cls) -> "CubeFamily":
        return cls("q")

    @property
    def label(self) -> str:
        return f"z{self.k}" if self.kind == "z" else self.kind


def mix_width(family: CubeFamily, m: int) -> int:
    """Prefix width of the family's mixing permutation on an m-bit string.

    The permutation XORs the first w bits with the last w bits and keeps
    the rest; w = 0 means identity.
    """
    if family.kind == "q" or m < 2:
        return 0
    if family.kind == "h":
        return kappa(m)
    assert family.k is not None
    if m <= family.k:
        return 0
    return min(family.k, m - family.k)


def mix_value(family: CubeFamily, m: int, v: int) -> int:
    """Apply the family's mixing permutation to an m-bit packed value."""
    w = mix_width(family, m)
    if w == 0:
        return v
    return v ^ ((v & ((1 << w) - 1)) << (m - w))


def phi(x: BitString) -> BitString:
    """The self-tuned involution: first kappa(n) bits XORed with the last kappa(n)."""
    return BitString(x.length, mix_value(CubeFamily.h(), x.length, x.value))


def phi_k(x: BitString, k: int) -> BitString:
    """The fixed-width involution (identity when n <= k)."""
    if k < 1:
        raise ContractViolation(f"phi_k requires k >= 1, got {k}")
    return BitString(x.length, mix_value(CubeFamily.z(k), x.length, x.value))


def neighbor_value(family: CubeFamily, n: int, v: int, i: int) -> int:
    """Packed form of neighbor_at: flip bit i, mix the (n-i)-bit suffix."""
    s = n - i
    u = v ^ (1 << s)
    w = mix_width(family, s)
    if w:
        u ^= (u & ((1 << w) - 1)) << (s - w)
    return u


def neighbor_at(family: CubeFamily, x: BitString, i: int) -> BitString:
    """The unique neighbor of x across the level-i matching."""
    n = x.length
    if not 1 <= i <= n:
        raise ContractViolation(f"level {i} out of range 1..{n}")
    return BitString(n, neighbor_value(family, n, x.value, i))


def neighbors(family: CubeFamily, x: BitString) -> list[BitString]:
    """All n neighbors of x, in ascending level order."""
    n = x.length
    if n < 1:
        raise ContractViolation("neighbors requires length >= 1")
    return [
        BitString(n, neighbor_value(family, n, x.value, i))
        for i in range(1, n + 1)
    ]


def adjacent(family: CubeFamily, x: BitString, y: BitString) -> bool:
    """Adjacency oracle via the first differing bit.

    Two distinct vertices can only be joined by the matching at the level
    of their first differing bit, so one O(n) neighbor computation decides.
    """
    n = x.length
    if n != y.length:
        raise ContractViolation(
            f"adjacency of unequal lengths {n} and {y.length}"
        )
    d = x.value ^ y.value
    if d == 0:
        return False
    i = n - d.bit_length() + 1
    return neighbor_value(family, n, x.value, i) == y.value


def level_neighbors_bulk(
    family: CubeFamily, n: int, values: np.ndarray, i: int
) -> np.ndarray:
    """Vectorized neighbor_value over an array of packed vertices."""
    s = n - i
    u = values ^ (1 << s)
    w = mix_width(family, s)
    if w:
        u = u ^ ((u & ((1 << w) - 1)) << (s - w))
    return u


def neighbor_table(family: CubeFamily, n: int) -> np.ndarray:
    """Dense (2^n, n) neighbor table; column i-1 is the level-i matching."""
    if n < 1:
        raise ContractViolation("neighbor_table requires n >= 1")
    values = np.arange(1 << n, dtype=np.int64)
    table = np.empty((1 << n, n), dtype=np.int64)
    for i in range(1, n + 1):
        table[:, i - 1] = level_neighbors_bulk(family, n, values, i)
    return table


def export_edges(
    family: CubeFamily,
    n: int,
    fmt: str = "edges",
    max_n: int = EXPORT_CAP_DEFAULT,
) -> Iterator[str]:
    """Yield a deterministic edge-list or DOT rendering, line by line.

    Each undirected edge appears once as "u v" with u < v lexicographically,
    lines sorted lexicographically; DOT wraps the same ordering.
    """
    if fmt not in ("edges", "dot"):
        raise ContractViolation(f"unknown export format {fmt!r}")
    if n < 1:
        raise ContractViolation("export requires n >= 1")
    if n > max_n:
        raise CapExceeded(
            f"edge export materializes {n}*2^{n - 1} edges; n = {n} exceeds "
            f"the cap {max_n}"
        )

    def edge_lines() -> Iterator[tuple[str, str]]:
        width = f"0{n}b"
        for u in range(1 << n):
            partners = sorted(
                v
                for i in range(1, n + 1)
                if (v := neighbor_value(family, n, u, i)) > u
            )
            for v in partners:
                yield format(u, width), format(v, width)

    if fmt == "edges":
        for u, v in edge_lines():
            yield f"{u} {v}"
    else:
        yield f'graph "{family.label}{n}" {{'
        yield "  node [shape=plaintext];"
        for u, v in edge_lines():
            yield f'  "{u}" -- "{v}";'
        yield "}"
