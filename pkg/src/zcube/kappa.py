"""The prefix-width function kappa, its jump set, sigma, and the bound formulas.

kappa(n) is 0 at n = 1 and max{1, ceil(log2 n - 2 log2 log2 n)} otherwise.
The gap g(n) = log2 n - 2 log2 log2 n is irrational except when n = 2^(2^b)
(then g = 2^b - 2b exactly), so a naive float ceiling can misclassify
boundary dimensions (the first jump past 1 sits at n = 80).  kappa is
therefore computed from a table of certified jump thresholds:

  threshold[i-1] = kappa_inverse(i) = the smallest n with kappa(n) = i.

Thresholds are found by bisection over the region where g is increasing
(n >= 8), using integer-exact comparisons at powers of two and interval
arithmetic with escalating precision everywhere else.  sigma_n is kept as
an exact Fraction; conversion to float happens only at presentation.
"""

from __future__ import annotations

import math
import threading
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .errors import ContractViolation

_lock = threading.Lock()

# thresholds[i-1] = smallest n with kappa(n) >= i; kappa(2) = 1 puts the
# first jump at n = 2.  Extended lazily under _lock.
_thresholds: list[int] = [2]


def _gap_exceeds(n: int, m: int) -> bool:
    """Certified strict test log2(n) - 2*log2(log2(n)) > m, for n >= 2.

    Powers of two reduce to integer comparisons (this covers every n where
    the gap can equal an integer exactly; for all other n the gap is
    transcendental, so interval refinement terminates).
    """
    if n & (n - 1) == 0:
        a = n.bit_length() - 1
        # gap(2^a) = a - 2*log2(a) > m  <=>  2^(a-m) > a^2
        if a >= m:
            return (1 << (a - m)) > a * a
        return 1 > (a * a) << (m - a)
    prec = 64
    while True:
        lo, hi = _gap_enclosure(n, prec)
        if lo > m:
            return True
        if hi < m:
            return False
        prec *= 2


def _gap_enclosure(n: int, prec: int) -> tuple[mpmath.mpf, mpmath.mpf]:
    """Interval [lo, hi] guaranteed to contain log2(n) - 2*log2(log2(n))."""
    iv = mpmath.iv
    saved = iv.prec
    try:
        iv.prec = prec
        ln2 = iv.log(2)
        l2n = iv.log(n) / ln2
        gap = l2n - 2 * (iv.log(l2n) / ln2)
        return gap.a, gap.b
    finally:
        iv.prec = saved


def _next_threshold(level: int, start: int) -> int:
    """Smallest n > start with gap(n) > level - 1.

    Valid for level >= 2: every such threshold is >= 80, inside the region
    where the gap is strictly increasing, so bisection applies.
    """
    target = level - 1
    lo = max(start, 8)  # gap < 1 on 2..7 (dips below 0 around n = 8)
    hi = max(2 * lo, 16)
    while not _gap_exceeds(hi, target):
        lo = hi
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _gap_exceeds(mid, target):
            hi = mid
        else:
            lo = mid
    return hi


def _ensure_thresholds(n: int) -> None:
    with _lock:
        while _thresholds[-1] <= n:
            level = len(_thresholds) + 1
            _thresholds.append(_next_threshold(level, _thresholds[-1]))


def kappa(n: int) -> int:
    """Prefix width: 0 at n = 1, max{1, ceil(log2 n - 2 log2 log2 n)} for n >= 2."""
    if n < 1:
        raise ContractViolation(f"kappa requires n >= 1, got {n}")
    if n == 1:
        return 0
    _ensure_thresholds(n)
    return bisect_right(_thresholds, n)


def kappa_inverse(i: int) -> int:
    """Smallest n with kappa(n) = i, for i >= 1."""
    if i < 1:
        raise ContractViolation(f"kappa_inverse requires i >= 1, got {i}")
    with _lock:
        while len(_thresholds) < i:
            level = len(_thresholds) + 1
            _thresholds.append(_next_threshold(level, _thresholds[-1]))
        return _thresholds[i - 1]


def jump_set(n: int) -> set[int]:
    """S(n) = { j : 2 <= j <= n and kappa(j) = kappa(j-1) + 1 }."""
    if n < 1:
        raise ContractViolation(f"jump_set requires n >= 1, got {n}")
    if n == 1:
        return set()
    _ensure_thresholds(n)
    return {t for t in _thresholds if t <= n}


def sigma(n: int) -> Fraction:
    """sigma_n = sum over j in S(n) of j / kappa(j)^2, exact."""
    if n < 1:
        raise ContractViolation(f"sigma requires n >= 1, got {n}")
    if n == 1:
        return Fraction(0)
    _ensure_thresholds(n)
    total = Fraction(0)
    for i, t in enumerate(_thresholds, start=1):
        if t > n:
            break
        total += Fraction(t, i * i)
    return total


def lower_bound(n: int) -> int:
    """Antipodal diameter lower bound ceil(n / (kappa(n) + 1))."""
    k = kappa(n)
    return -(-n // (k + 1))


def thm1_bound(n: int) -> Fraction:
    """Diameter upper bound n/(kappa(n)+1) + sigma_n + 2^kappa(n) + kappa(n)."""
    k = kappa(n)
    return Fraction(n, k + 1) + sigma(n) + (1 << k) + k


def zk_bound(n: int, k: int) -> Fraction:
    """Fixed-width family diameter bound n/(k+1) + 2^k."""
    if n < 1:
        raise ContractViolation(f"zk_bound requires n >= 1, got {n}")
    if k < 1:
        raise ContractViolation(f"zk_bound requires k >= 1, got {k}")
    return Fraction(n, k + 1) + (1 << k)


def zstar_bound(n: int) -> Optional[float]:
    """Closed-form bound for the self-tuned family Z*_n, or None.

    The expression requires log2 n - 2 log2 log2 n - 1 > 0, which holds
    exactly when kappa(n) >= 2 (first at n = 80); below that the bound is
    not applicable and None is returned.
    """
    if n < 1:
        raise ContractViolation(f"zstar_bound requires n >= 1, got {n}")
    if n == 1 or kappa(n) < 2:
        return None
    l2n = math.log2(n)
    l2l2n = math.log2(l2n)
    den = l2n - 2 * l2l2n - 1
    return (1 + (2 * l2l2n + 1) / den + 1 / l2n) * (n / l2n)


@dataclass(frozen=True)
class BoundsRow:
    """All closed-form bound values for one dimension n."""

    n: int
    kappa: int
    sigma: Fraction
    lower: int
    thm1: Fraction
    zk: dict[int, Fraction]
    zstar: Optional[float]


def bounds_row(n: int, ks: Sequence[int] = ()) -> BoundsRow:
    """Assemble the per-n record; ``ks`` selects fixed-width bound columns."""
    return BoundsRow(
        n=n,
        kappa=kappa(n),
        sigma=sigma(n),
        lower=lower_bound(n),
        thm1=thm1_bound(n),
        zk={k: zk_bound(n, k) for k in ks},
        zstar=zstar_bound(n),
    )
