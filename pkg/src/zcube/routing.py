"""Constructive routing: Hamiltonian paths and k-robust walks.

A k-robust walk in an n-cube is a walk that contains, for every z in
Z_2^k, some vertex whose last k bits equal z.  Robustness is what lets the
recursion stitch the two halves of a cube together: to cross from prefix
0a to prefix 1b one needs an interior vertex whose suffix turns the
half-matching into exactly that prefix change, and a robust walk always
has one.

The recursion (family "h"; family "z" is the same shape with its fixed
width):

  * n = k: a walk covering every vertex of the base cube (Hamiltonian
    path, closed up when the endpoints coincide) - trivially k-robust.
  * shared leading bit: recurse on the suffix and prefix the bit (peeled
    iteratively here to keep the stack shallow).
  * k < n <= 2k, endpoints in different halves: one matching edge, then
    recurse in the other half.
  * n >= 2k+1, different halves: write x = x1.a.x', y = y1.b.y' with
    |a| = |b| = m, the prefix width of the level-1 matching (kappa(n-1)
    for family "h" - the matching joining the halves of the n-cube mixes
    with the width of the (n-1)-bit permutation, which at a jump
    dimension is one less than kappa(n)).  Build a robust walk W from x'
    to y' in the (n-m-1)-cube, split it at the first vertex v whose last
    m bits equal a XOR b, and return x1.a.W[:v] joined to y1.b.W[v:]
    across the matching edge.

Hamiltonian paths come from the analogous two-case recursion with an
exhaustively-searched 3-cube base; the classical-hypercube constructions
(bit-fixing paths, reflected Hamiltonian paths) back the "q" family and
the fixed-width bases.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .bitstring import BitString
from .errors import CapExceeded, ContractViolation, Unsupported
from .kappa import kappa
from .topology import CubeFamily, mix_value, mix_width, neighbor_value

COVERING_CAP = 24


@dataclass(frozen=True)
class Walk:
    """A vertex sequence in one cube; length counts edges, repeats allowed."""

    family: CubeFamily
    vertices: tuple[BitString, ...]

    def __post_init__(self) -> None:
        if not self.vertices:
            raise ContractViolation("a walk has at least one vertex")
        n = self.vertices[0].length
        if any(v.length != n for v in self.vertices):
            raise ContractViolation("walk vertices must share one length")

    @property
    def n(self) -> int:
        return self.vertices[0].length

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def values(self) -> list[int]:
        return [v.value for v in self.vertices]


@dataclass(frozen=True, eq=False)
class RobustnessCertificate:
    """For each z in Z_2^k, the index of a walk vertex with that k-suffix."""

    k: int
    witness: dict[BitString, int]

    def covers_all(self) -> bool:
        return len(self.witness) == 1 << self.k

    def consistent_with(self, walk: Walk) -> bool:
        if self.k > walk.n or not self.covers_all():
            return False
        mask = (1 << self.k) - 1
        for z, idx in self.witness.items():
            if z.length != self.k or not 0 <= idx <= walk.length:
                return False
            if walk.vertices[idx].value & mask != z.value:
                return False
        return True


# ---------------------------------------------------------------------------
# 3-cube Hamiltonian base: exhaustive search, memoized for all ordered pairs.

_h3_lock = threading.Lock()
_h3_paths: dict[tuple[int, int], tuple[int, ...]] = {}


def _search_ham(adj: list[tuple[int, ...]], s: int, t: int) -> list[int] | None:
    order = len(adj)
    path = [s]
    visited = {s}

    def extend() -> bool:
        if len(path) == order:
            return path[-1] == t
        for w in adj[path[-1]]:
            if w in visited or (w == t and len(path) < order - 1):
                continue
            visited.add(w)
            path.append(w)
            if extend():
                return True
            path.pop()
            visited.remove(w)
        return False

    return path if extend() else None


def _h3_table() -> dict[tuple[int, int], tuple[int, ...]]:
    with _h3_lock:
        if not _h3_paths:
            fam = CubeFamily.h()
            adj = [
                tuple(sorted(neighbor_value(fam, 3, v, i) for i in (1, 2, 3)))
                for v in range(8)
            ]
            for s in range(8):
                for t in range(8):
                    if s == t:
                        continue
                    found = _search_ham(adj, s, t)
                    if found is None:
                        raise RuntimeError(
                            "internal error: 3-cube pair without a Hamiltonian path"
                        )
                    _h3_paths[(s, t)] = tuple(found)
        return _h3_paths


def _ham_values(n: int, x: int, y: int) -> list[int]:
    """Hamiltonian path x -> y in the self-tuned n-cube, n >= 3, x != y."""
    if n == 3:
        return list(_h3_table()[(x, y)])
    fam = CubeFamily.h()
    nm1 = n - 1
    mask = (1 << nm1) - 1
    x1, y1 = x >> nm1, y >> nm1
    xr, yr = x & mask, y & mask
    if x1 == y1:
        # detour through the other half between the first two path vertices
        p = _ham_values(nm1, xr, yr)
        z = p[1]
        p1 = _ham_values(nm1, mix_value(fam, nm1, xr), mix_value(fam, nm1, z))
        other = (1 - x1) << nm1
        own = x1 << nm1
        return [x] + [other | v for v in p1] + [own | v for v in p[1:]]
    # exhaust x's half ending at w, cross, exhaust y's half
    w = 0
    while w == xr or mix_value(fam, nm1, w) == yr:
        w += 1
    p1 = _ham_values(nm1, xr, w)
    p2 = _ham_values(nm1, mix_value(fam, nm1, w), yr)
    return [(x1 << nm1) | v for v in p1] + [(y1 << nm1) | v for v in p2]


# ---------------------------------------------------------------------------
# Classical-hypercube constructions.


def _qn_ham(n: int, x: int, y: int) -> list[int]:
    """Hamiltonian path x -> y in the n-hypercube; requires opposite parity."""
    if n == 1:
        return [x, y]
    nm1 = n - 1
    mask = (1 << nm1) - 1
    x1, y1 = x >> nm1, y >> nm1
    xr, yr = x & mask, y & mask
    if x1 == y1:
        p = _qn_ham(nm1, xr, yr)
        detour = _qn_ham(nm1, p[0], p[1])
        other = (1 - x1) << nm1
        own = x1 << nm1
        return [x] + [other | v for v in detour] + [own | v for v in p[1:]]
    w = xr ^ 1
    p1 = _qn_ham(nm1, xr, w)
    p2 = _qn_ham(nm1, w, yr)
    return [(x1 << nm1) | v for v in p1] + [(y1 << nm1) | v for v in p2]


def _qn_path_values(n: int, x: int, y: int) -> list[int]:
    """Covering path/walk in the n-hypercube for distinct endpoints.

    Opposite parity: a Hamiltonian path (length 2^n - 1).  Equal parity
    (no Hamiltonian path exists in a balanced bipartite graph): a covering
    walk of length 2^n that reaches y via one of its neighbors.
    """
    if (x ^ y).bit_count() & 1:
        return _qn_ham(n, x, y)
    z = y ^ 1
    return _qn_ham(n, x, z) + [y]


def _bitfix_values(n: int, x: int, y: int) -> list[int]:
    """Shortest hypercube path: fix differing bits left to right."""
    vals = [x]
    cur = x
    diff = x ^ y
    for i in range(1, n + 1):
        bit = 1 << (n - i)
        if diff & bit:
            cur ^= bit
            vals.append(cur)
    return vals


# ---------------------------------------------------------------------------
# Covering walks and the robust-walk recursion.


def _covering_values(fam: CubeFamily, n: int, x: int, y: int) -> list[int]:
    if n > COVERING_CAP:
        raise CapExceeded(
            f"a covering walk visits 2^{n} vertices; cap is n <= {COVERING_CAP}"
        )
    if fam.kind == "h":
        if n >= 3:
            if x != y:
                return _ham_values(n, x, y)
            return _ham_values(n, x, x ^ 1) + [x]
        if n == 1:
            return [x, y] if x != y else [x, x ^ 1, x]
        # n = 2: the 4-cycle 00-01-11-10
        cyc = [0, 1, 3, 2]
        rot = cyc[cyc.index(x):] + cyc[: cyc.index(x)]
        if x == y:
            return rot + [x]
        pos = rot.index(y)
        if pos == 3:
            return rot
        if pos == 1:
            return [rot[0], rot[3], rot[2], rot[1]]
        return [rot[0], rot[1], rot[2], rot[3], rot[2]]
    # fixed-width base cubes (n <= k) and the hypercube are classical
    if x != y:
        return _qn_path_values(n, x, y)
    return _qn_ham(n, x, x ^ 1) + [x]


def _robust_values(fam: CubeFamily, k: int, n: int, x: int, y: int) -> list[int]:
    # peel shared leading bits iteratively; each is a same-half descent
    prefix = 0
    peeled = 0
    while n > k:
        nm1 = n - 1
        x1, y1 = x >> nm1, y >> nm1
        if x1 != y1:
            break
        prefix = (prefix << 1) | x1
        peeled += 1
        mask = (1 << nm1) - 1
        x &= mask
        y &= mask
        n = nm1

    if n == k:
        walk = _covering_values(fam, n, x, y)
    else:
        nm1 = n - 1
        mask = (1 << nm1) - 1
        x1, y1 = x >> nm1, y >> nm1
        xr, yr = x & mask, y & mask
        if n <= 2 * k:
            # cross the level-1 matching, then recurse in the other half
            partner = mix_value(fam, nm1, xr)
            inner = _robust_values(fam, k, nm1, partner, yr)
            walk = [x] + [(y1 << nm1) | v for v in inner]
        else:
            # split construction across the level-1 matching
            m = mix_width(fam, nm1)
            sub = n - m - 1
            mmask = (1 << m) - 1
            smask = (1 << sub) - 1
            a = (x >> sub) & mmask
            b = (y >> sub) & mmask
            inner = _robust_values(fam, k, sub, x & smask, y & smask)
            c = a ^ b
            idx = next(j for j, v in enumerate(inner) if v & mmask == c)
            xa = (x1 << nm1) | (a << sub)
            yb = (y1 << nm1) | (b << sub)
            walk = [xa | v for v in inner[: idx + 1]] + [
                yb | v for v in inner[idx:]
            ]

    if peeled:
        shift = prefix << n
        walk = [shift | v for v in walk]
    return walk


def _splice_values(values: list[int]) -> list[int]:
    """Cut every loop out of a walk, leaving a repeat-free path."""
    out: list[int] = []
    pos: dict[int, int] = {}
    for v in values:
        if v in pos:
            cut = pos[v]
            for dead in out[cut + 1:]:
                del pos[dead]
            del out[cut + 1:]
        else:
            pos[v] = len(out)
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# Public operations.


def _check_pair(x: BitString, y: BitString) -> int:
    if x.length != y.length:
        raise ContractViolation(
            f"endpoint lengths differ: {x.length} and {y.length}"
        )
    if x.length < 1:
        raise ContractViolation("routing requires length >= 1")
    return x.length


def hamiltonian_path(x: BitString, y: BitString) -> Walk:
    """Hamiltonian path between distinct vertices of the self-tuned n-cube.

    Defined for n >= 3; the 2-cube is a 4-cycle, where opposite corners
    have no Hamiltonian path.
    """
    n = _check_pair(x, y)
    if n < 3:
        raise Unsupported(
            f"Hamiltonian connectivity starts at n = 3 (the 2-cube is a "
            f"4-cycle); got n = {n}"
        )
    if x == y:
        raise ContractViolation("Hamiltonian path endpoints must differ")
    values = _ham_values(n, x.value, y.value)
    return Walk(CubeFamily.h(), tuple(BitString(n, v) for v in values))


def covering_walk(family: CubeFamily, x: BitString, y: BitString) -> Walk:
    """A walk from x to y visiting every vertex at least once; length <= 2^n.

    Serves as the robust-walk recursion base, so for family "z" it is only
    defined where the fixed-width cube is a classical hypercube (n <= k).
    """
    n = _check_pair(x, y)
    if family.kind == "z" and n > (family.k or 0):
        raise ContractViolation(
            f"covering walks for family z are defined for n <= k, got "
            f"n = {n} > k = {family.k}"
        )
    values = _covering_values(family, n, x.value, y.value)
    return Walk(family, tuple(BitString(n, v) for v in values))


def _certificate(k: int, values: list[int]) -> RobustnessCertificate:
    mask = (1 << k) - 1
    seen: dict[int, int] = {}
    for idx, v in enumerate(values):
        s = v & mask
        if s not in seen:
            seen[s] = idx
    if len(seen) != 1 << k:
        raise RuntimeError("internal error: constructed walk is not k-robust")
    witness = {BitString(k, s): i for s, i in sorted(seen.items())}
    return RobustnessCertificate(k, witness)


def robust_route(
    family: CubeFamily, k: int, x: BitString, y: BitString
) -> tuple[Walk, RobustnessCertificate]:
    """A k-robust walk from x to y with its suffix-coverage certificate.

    Family "h" accepts max(1, kappa(n)) <= k <= n and guarantees length at
    most n/(kappa(n)+1) + sigma_n + 2^k + k.  Family "z" routes at its own
    width (k must equal the family k, with k <= n); the construction
    guarantees length at most n/(k+1) + 2^k + k.
    """
    n = _check_pair(x, y)
    if family.kind == "q":
        raise ContractViolation("robust walks are defined for families h and z")
    if family.kind == "h":
        low = max(1, kappa(n))
        if not low <= k <= n:
            raise ContractViolation(
                f"family h requires max(1, kappa(n)) = {low} <= k <= n = {n}, "
                f"got k = {k}"
            )
    else:
        if k != family.k:
            raise ContractViolation(
                f"family z routes at its own width {family.k}, got k = {k}"
            )
        if k > n:
            raise ContractViolation(f"k = {k} exceeds the dimension n = {n}")
    values = _robust_values(family, k, n, x.value, y.value)
    walk = Walk(family, tuple(BitString(n, v) for v in values))
    return walk, _certificate(k, values)


def qn_path(x: BitString, y: BitString) -> Walk:
    """Covering path/walk between distinct hypercube vertices.

    Opposite parity yields a Hamiltonian path (reflected construction);
    equal parity yields a covering walk of length 2^n through a neighbor
    of y.
    """
    n = _check_pair(x, y)
    if x == y:
        raise ContractViolation("endpoints must differ")
    values = _qn_path_values(n, x.value, y.value)
    return Walk(CubeFamily.q(), tuple(BitString(n, v) for v in values))


def route(
    family: CubeFamily, x: BitString, y: BitString, compact: bool = False
) -> Walk:
    """Convenience router: robust walk at the family's natural width.

    Family "q" (and family "z" where it coincides with the hypercube,
    n <= k) uses shortest bit-fixing paths.  With ``compact`` every loop
    is spliced out, leaving a repeat-free path no longer than the raw walk.
    """
    n = _check_pair(x, y)
    if family.kind == "q" or (family.kind == "z" and n <= (family.k or 0)):
        values = _bitfix_values(n, x.value, y.value)
    elif family.kind == "h":
        values = _robust_values(family, max(1, kappa(n)), n, x.value, y.value)
    else:
        values = _robust_values(family, family.k, n, x.value, y.value)
    if compact:
        values = _splice_values(values)
    return Walk(family, tuple(BitString(n, v) for v in values))
