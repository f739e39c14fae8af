"""Exact ground truth at desk scale: BFS, diameters, verification, brute force.

Distances are computed over the implicit graph with numpy-vectorized
frontier expansion; distance arrays are indexed by the packed vertex value
(bit 1 most significant, matching BitString.value).  Everything that
samples takes an explicit seed; DEFAULT_SEED is used when none is given.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bitstring import BitString
from .errors import CapExceeded, ContractViolation
from .kappa import kappa
from .routing import Walk, route
from .topology import (
    CubeFamily,
    adjacent,
    level_neighbors_bulk,
    mix_value,
    neighbor_table,
    neighbor_value,
)

DEFAULT_SEED = 0
BFS_CAP_DEFAULT = 24
EXACT_CAP_DEFAULT = 14
VERIFY_FULL_CAP = 12
_CHUNK = 1 << 20


# ---------------------------------------------------------------------------
# BFS engine.


def _bfs_fill(
    family: CubeFamily,
    n: int,
    source: int,
    dist: np.ndarray,
    table: Optional[np.ndarray] = None,
) -> None:
    """Fill ``dist`` (preset to -1) with BFS levels from ``source``."""
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    d = 0
    while frontier.size:
        d += 1
        fresh = []
        for lo in range(0, frontier.size, _CHUNK):
            block = frontier[lo: lo + _CHUNK]
            if table is not None:
                nbrs = table[block].ravel()
            else:
                nbrs = np.concatenate(
                    [
                        level_neighbors_bulk(family, n, block, i)
                        for i in range(1, n + 1)
                    ]
                )
            new = nbrs[dist[nbrs] < 0]
            dist[new] = d
            fresh.append(np.unique(new))
        frontier = (
            np.unique(np.concatenate(fresh)) if len(fresh) > 1 else fresh[0]
        )


def bfs(
    family: CubeFamily, source: BitString, max_n: int = BFS_CAP_DEFAULT
) -> np.ndarray:
    """Exact distances from ``source`` to every vertex, indexed by value."""
    n = source.length
    if n < 1:
        raise ContractViolation("bfs requires n >= 1")
    if n > max_n:
        raise CapExceeded(f"single-source BFS capped at n <= {max_n}, got {n}")
    dist = np.full(1 << n, -1, dtype=np.int8)
    table = neighbor_table(family, n) if n <= 16 else None
    _bfs_fill(family, n, source.value, dist, table)
    return dist


def antipodal_distance(family: CubeFamily, n: int, x: BitString) -> int:
    """BFS distance from x to its bitwise complement."""
    if x.length != n:
        raise ContractViolation(f"vertex length {x.length} != n = {n}")
    return int(bfs(family, x)[x.complement().value])


def eccentricity_sample(
    family: CubeFamily,
    n: int,
    sources: int,
    seed: int = DEFAULT_SEED,
    max_n: int = BFS_CAP_DEFAULT,
) -> int:
    """Max eccentricity over seeded random sources: a diameter lower bound."""
    if sources < 1:
        raise ContractViolation("need at least one source")
    if n > max_n:
        raise CapExceeded(f"BFS capped at n <= {max_n}, got {n}")
    rng = np.random.default_rng(seed)
    count = min(sources, 1 << n)
    picks = rng.choice(1 << n, size=count, replace=False)
    dist = np.empty(1 << n, dtype=np.int8)
    table = neighbor_table(family, n) if n <= 16 else None
    best = 0
    for s in picks:
        dist.fill(-1)
        _bfs_fill(family, n, int(s), dist, table)
        best = max(best, int(dist.max()))
    return best


# ---------------------------------------------------------------------------
# Distance summaries.


@dataclass(frozen=True)
class DistanceSummary:
    """Diameter / average-distance record for one (family, n)."""

    family: CubeFamily
    n: int
    mode: str  # "exact" or "sampled"
    diameter: Optional[int]  # exact mode only
    diameter_lower_bound: int  # max distance seen (equals diameter in exact mode)
    average_distance: float
    histogram: tuple[int, ...]  # ordered-pair counts by distance, diagonal included
    pair_convention: str
    sources: int
    seed: Optional[int]


def distance_summary(
    family: CubeFamily,
    n: int,
    mode: str = "exact",
    sources: int = 64,
    seed: int = DEFAULT_SEED,
    max_n: int = EXACT_CAP_DEFAULT,
) -> DistanceSummary:
    """All-sources (exact) or sampled-sources distance statistics.

    The average is over ordered pairs with the diagonal excluded; the
    histogram keeps the distance-0 diagonal so exact-mode counts total
    2^n * 2^n.
    """
    if n < 1:
        raise ContractViolation("distance summary requires n >= 1")
    if mode not in ("exact", "sampled"):
        raise ContractViolation(f"unknown mode {mode!r}")
    size = 1 << n
    if mode == "exact":
        if n > max_n:
            raise CapExceeded(
                f"exact summaries are capped at n <= {max_n} (override the "
                f"cap or use sampled mode), got {n}"
            )
        picks = np.arange(size, dtype=np.int64)
        used_seed: Optional[int] = None
    else:
        if n > BFS_CAP_DEFAULT:
            raise CapExceeded(f"BFS capped at n <= {BFS_CAP_DEFAULT}, got {n}")
        rng = np.random.default_rng(seed)
        picks = rng.choice(size, size=min(sources, size), replace=False)
        used_seed = seed

    table = neighbor_table(family, n) if n <= 16 else None
    dist = np.empty(size, dtype=np.int8)
    hist = np.zeros(n + 1, dtype=np.int64)
    total = 0
    worst = 0
    for s in picks:
        dist.fill(-1)
        _bfs_fill(family, n, int(s), dist, table)
        counts = np.bincount(dist, minlength=n + 1)
        if counts.size > hist.size:
            hist = np.pad(hist, (0, counts.size - hist.size))
        hist[: counts.size] += counts
        total += int(dist.sum(dtype=np.int64))
        worst = max(worst, int(dist.max()))
    hist = hist[: worst + 1] if worst + 1 <= hist.size else hist
    pairs = len(picks) * (size - 1)
    return DistanceSummary(
        family=family,
        n=n,
        mode=mode,
        diameter=worst if mode == "exact" else None,
        diameter_lower_bound=worst,
        average_distance=total / pairs,
        histogram=tuple(int(c) for c in hist),
        pair_convention="ordered pairs, diagonal excluded from the mean",
        sources=len(picks),
        seed=used_seed,
    )


def diameter_exact(
    family: CubeFamily, n: int, max_n: int = EXACT_CAP_DEFAULT
) -> int:
    """Max BFS eccentricity over all sources."""
    if n < 1:
        raise ContractViolation("diameter requires n >= 1")
    if n > max_n:
        raise CapExceeded(
            f"exact diameter is capped at n <= {max_n}; use "
            f"eccentricity_sample beyond that"
        )
    size = 1 << n
    table = neighbor_table(family, n) if n <= 16 else None
    dist = np.empty(size, dtype=np.int8)
    worst = 0
    for s in range(size):
        dist.fill(-1)
        _bfs_fill(family, n, s, dist, table)
        worst = max(worst, int(dist.max()))
    return worst


def average_distance(
    family: CubeFamily,
    n: int,
    mode: str = "exact",
    sources: int = 64,
    seed: int = DEFAULT_SEED,
    max_n: int = EXACT_CAP_DEFAULT,
) -> float:
    """Mean distance over ordered distinct pairs (exact or sampled)."""
    return distance_summary(family, n, mode, sources, seed, max_n).average_distance


# ---------------------------------------------------------------------------
# Structural verification.


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    details: str
    witness: Optional[str] = None


@dataclass(frozen=True)
class VerificationReport:
    family: CubeFamily
    n: int
    level: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _fmt(n: int, v: int) -> str:
    return format(v, f"0{n}b")


def _verify_full(
    family: CubeFamily, n: int, table: np.ndarray
) -> list[CheckResult]:
    size = 1 << n
    checks: list[CheckResult] = []
    idx = np.arange(size, dtype=np.int64)

    # (a) n-regularity with pairwise-distinct neighbors
    srt = np.sort(table, axis=1)
    good_rows = (
        ((table >= 0) & (table < size)).all(axis=1)
        & (table != idx[:, None]).all(axis=1)
    )
    if n > 1:
        good_rows &= (srt[:, 1:] != srt[:, :-1]).all(axis=1)
    reg_ok = bool(good_rows.all())
    checks.append(
        CheckResult(
            "regularity",
            reg_ok,
            f"every vertex has {n} distinct neighbors",
            None if reg_ok else _fmt(n, int(np.flatnonzero(~good_rows)[0])),
        )
    )

    # (b) symmetry: the level-i partner of the level-i partner is the vertex
    sym_ok = True
    sym_wit = None
    for i in range(n):
        back = table[table[:, i], i]
        if not bool((back == idx).all()):
            sym_ok = False
            v = int(np.flatnonzero(back != idx)[0])
            sym_wit = f"{_fmt(n, v)} level {i + 1}"
            break
    checks.append(
        CheckResult("symmetry", sym_ok, "matchings are involutions", sym_wit)
    )

    # (c) the level-1 matching pairs the halves perfectly
    half = size >> 1
    if n >= 1:
        partners = table[:half, 0]
        pm_ok = bool(
            (partners >= half).all()
            and np.array_equal(np.sort(partners), np.arange(half, size))
        )
    else:
        pm_ok = True
    checks.append(
        CheckResult(
            "half-matching",
            pm_ok,
            "level-1 edges form a perfect matching between the halves",
            None if pm_ok else _fmt(n, int(np.flatnonzero(partners < half)[0]))
            if (partners < half).any()
            else "duplicate partner",
        )
    )

    # (d) mixing permutations are involutions at every suffix length
    inv_ok = True
    inv_wit = None
    for m in range(1, n + 1):
        vals = np.arange(1 << m, dtype=np.int64)
        once = np.array([mix_value(family, m, int(v)) for v in vals])
        twice = once[once]
        if not bool((twice == vals).all()):
            inv_ok = False
            inv_wit = f"suffix length {m}"
            break
    checks.append(
        CheckResult("involution", inv_ok, "suffix permutations square to the identity", inv_wit)
    )

    # (e) every fixed prefix induces a copy of the lower-dimensional cube
    ind_ok = True
    ind_wit = None
    for q in range(1, n):
        s = n - q
        smask = (1 << s) - 1
        sub = neighbor_table(family, s)
        for i in range(q + 1, n + 1):
            expect = (idx & ~smask) | sub[idx & smask, i - q - 1]
            if not bool((table[:, i - 1] == expect).all()):
                ind_ok = False
                v = int(np.flatnonzero(table[:, i - 1] != expect)[0])
                ind_wit = f"prefix width {q}, level {i}, vertex {_fmt(n, v)}"
                break
        if not ind_ok:
            break
    checks.append(
        CheckResult(
            "induced-subcube",
            ind_ok,
            "fixed prefixes induce lower-dimensional copies",
            ind_wit,
        )
    )

    # (f) connectivity
    dist = np.full(size, -1, dtype=np.int8)
    _bfs_fill(family, n, 0, dist, table)
    conn = bool((dist >= 0).all())
    checks.append(
        CheckResult(
            "connectivity",
            conn,
            "every vertex reachable from the all-zero vertex",
            None if conn else _fmt(n, int(np.flatnonzero(dist < 0)[0])),
        )
    )
    return checks


def _verify_quick(
    family: CubeFamily, n: int, samples: int, seed: int
) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    picks = [int(v) for v in rng.integers(0, 1 << n, size=samples)]
    checks: list[CheckResult] = []

    def scan(name, details, fn):
        for v in picks:
            wit = fn(v)
            if wit is not None:
                checks.append(CheckResult(name, False, details, wit))
                return
        checks.append(CheckResult(name, True, details, None))

    def reg(v):
        nbrs = [neighbor_value(family, n, v, i) for i in range(1, n + 1)]
        if len(set(nbrs)) != n or v in nbrs:
            return _fmt(n, v)
        return None

    scan("regularity", f"sampled vertices have {n} distinct neighbors", reg)

    def sym(v):
        for i in range(1, n + 1):
            if neighbor_value(family, n, neighbor_value(family, n, v, i), i) != v:
                return f"{_fmt(n, v)} level {i}"
        return None

    scan("symmetry", "sampled matchings are involutions", sym)

    def match(v):
        u = v & ((1 << (n - 1)) - 1)  # project into half 0
        p = neighbor_value(family, n, u, 1)
        if p < (1 << (n - 1)) or neighbor_value(family, n, p, 1) != u:
            return _fmt(n, u)
        return None

    scan("half-matching", "sampled level-1 partners pair the halves", match)

    def invol(v):
        for m in (1, max(1, n // 2), n):
            w = v & ((1 << m) - 1)
            if mix_value(family, m, mix_value(family, m, w)) != w:
                return f"suffix length {m}"
        return None

    scan("involution", "sampled suffix permutations square to identity", invol)

    def induced(v):
        for q in (1, max(1, n // 2)):
            if q >= n:
                continue
            s = n - q
            smask = (1 << s) - 1
            for i in range(q + 1, n + 1):
                top = neighbor_value(family, n, v, i)
                low = neighbor_value(family, s, v & smask, i - q)
                if top != (v & ~smask) | low:
                    return f"prefix width {q}, level {i}, vertex {_fmt(n, v)}"
        return None

    scan("induced-subcube", "sampled prefixes induce lower copies", induced)

    if n <= EXACT_CAP_DEFAULT:
        dist = np.full(1 << n, -1, dtype=np.int8)
        _bfs_fill(family, n, 0, dist)
        ok = bool((dist >= 0).all())
        checks.append(
            CheckResult(
                "connectivity",
                ok,
                "every vertex reachable from the all-zero vertex",
                None if ok else _fmt(n, int(np.flatnonzero(dist < 0)[0])),
            )
        )
    else:
        zero = BitString(n, 0)
        wit = None
        for v in picks[:16]:
            w = route(family, zero, BitString(n, v))
            if not all(
                adjacent(family, a, b)
                for a, b in zip(w.vertices, w.vertices[1:])
            ):
                wit = _fmt(n, v)
                break
        checks.append(
            CheckResult(
                "connectivity",
                wit is None,
                "routed walks certify sampled vertices reachable",
                wit,
            )
        )
    return checks


def verify_graph(
    family: CubeFamily,
    n: int,
    level: str = "quick",
    table: Optional[np.ndarray] = None,
    samples: int = 256,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """Structural checks; failures become report entries with witnesses.

    ``table`` lets tests inject a (possibly corrupted) neighbor table at
    the full level.
    """
    if n < 1:
        raise ContractViolation("verification requires n >= 1")
    if level not in ("quick", "full"):
        raise ContractViolation(f"unknown level {level!r}")
    if level == "full":
        if n > VERIFY_FULL_CAP:
            raise CapExceeded(
                f"full verification is capped at n <= {VERIFY_FULL_CAP}"
            )
        if table is None:
            table = neighbor_table(family, n)
        checks = _verify_full(family, n, table)
    else:
        checks = _verify_quick(family, n, samples, seed)
    return VerificationReport(family, n, level, tuple(checks))


# ---------------------------------------------------------------------------
# Brute-force Hamiltonian connectivity (subset DP over endpoint bitmasks).


@dataclass(frozen=True)
class HamConnectivityReport:
    family: CubeFamily
    n: int
    connected: bool
    pairs_checked: int
    witnesses: dict[tuple[str, str], tuple[str, ...]] = field(default_factory=dict)
    violating_pair: Optional[tuple[str, str]] = None


def ham_connected_bruteforce(family: CubeFamily, n: int) -> HamConnectivityReport:
    """Exhaustive Hamiltonian-connectivity decision for n <= 4.

    dp[mask] is the bitmask of endpoints v such that some path from the
    start visits exactly ``mask`` and ends at v; masks are processed in
    increasing order (adding a vertex only grows the mask).
    """
    if not 1 <= n <= 4:
        raise CapExceeded(
            "subset-DP Hamiltonian connectivity is feasible only for n <= 4"
        )
    size = 1 << n
    full = (1 << size) - 1
    table = neighbor_table(family, n)
    adj_bits = [0] * size
    for v in range(size):
        for w in table[v]:
            adj_bits[v] |= 1 << int(w)

    masks = np.arange(1 << size, dtype=np.int64)
    pc = np.zeros(1 << size, dtype=np.int8)
    for b in range(size):
        pc[((masks >> b) & 1) == 1] += 1
    levels = [np.flatnonzero(pc == c) for c in range(size + 1)]
    witnesses: dict[tuple[str, str], tuple[str, ...]] = {}

    for s in range(size):
        dp = np.zeros(1 << size, dtype=np.int64)
        dp[1 << s] = 1 << s
        # masks with c vertices only ever feed masks with c + 1
        for c in range(1, size):
            lvl = levels[c]
            lvl = lvl[dp[lvl] != 0]
            if lvl.size == 0:
                continue
            ends = dp[lvl]
            for v in range(size):
                has_v = lvl[((ends >> v) & 1) == 1]
                if has_v.size == 0:
                    continue
                for w in table[v]:
                    w = int(w)
                    grow = has_v[((has_v >> w) & 1) == 0]
                    if grow.size:
                        tgt = grow | (1 << w)
                        dp[tgt] |= 1 << w

        reach = int(dp[full])
        for t in range(s + 1, size):
            if not (reach >> t) & 1:
                return HamConnectivityReport(
                    family,
                    n,
                    False,
                    pairs_checked=s * size + t,
                    violating_pair=(_fmt(n, s), _fmt(n, t)),
                )
            # reconstruct one witness path by walking the DP backwards
            path = [t]
            mask = full
            while mask != (1 << s):
                v = path[-1]
                prev_mask = mask ^ (1 << v)
                options = int(dp[prev_mask]) & adj_bits[v]
                u = (options & -options).bit_length() - 1
                path.append(u)
                mask = prev_mask
            path.reverse()
            witnesses[(_fmt(n, s), _fmt(n, t))] = tuple(_fmt(n, v) for v in path)

    total = size * (size - 1) // 2
    return HamConnectivityReport(
        family, n, True, pairs_checked=total, witnesses=witnesses
    )


# ---------------------------------------------------------------------------
# Walk verification.


@dataclass(frozen=True)
class WalkReport:
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def verify_walk(walk: Walk, k: Optional[int] = None) -> WalkReport:
    """Re-check a walk: consecutive adjacency, and k-robustness if asked.

    The robustness re-derivation scans the walk for every suffix class
    independently of any certificate the router produced.
    """
    checks: list[CheckResult] = []
    bad = None
    for i, (a, b) in enumerate(zip(walk.vertices, walk.vertices[1:])):
        if not adjacent(walk.family, a, b):
            bad = f"step {i}: {a} -/- {b}"
            break
    checks.append(
        CheckResult(
            "adjacency",
            bad is None,
            "consecutive vertices are adjacent under the family oracle",
            bad,
        )
    )
    if k is not None:
        if not 1 <= k <= walk.n:
            checks.append(
                CheckResult(
                    "robustness",
                    False,
                    f"suffix width k = {k} out of range 1..{walk.n}",
                    None,
                )
            )
        else:
            mask = (1 << k) - 1
            seen = {v.value & mask for v in walk.vertices}
            missing = sorted(set(range(1 << k)) - seen)
            checks.append(
                CheckResult(
                    "robustness",
                    not missing,
                    f"walk visits all {1 << k} suffix classes of width {k}",
                    None
                    if not missing
                    else "missing suffixes: "
                    + ", ".join(_fmt(k, z) for z in missing[:8]),
                )
            )
    return WalkReport(tuple(checks))
