"""Threshold functions u_k, l_k and the theorem/corollary interval machinery.

u_k = 2 log k / (log k - log((k-1)/2)) marks where the expected number of
k-colourings collapses; l_k = 2 (k-1)^3 / (k (k+1) (k-2)) * log(k-1) is
the degree budget under which the second-moment route works for a doubly
regular tournament of order k.  Given an average degree d the report
combines the strongest lower index k1 (largest k with u_{k-1} < d) with
the cheapest upper order k2 (smallest Paley order with d <= l_{k2}) into
the window (k1 - 1, 3 k2 + 11].

Threshold comparisons run at 30 significant digits through mpmath with a
relative guard band of 1e-12; a boundary hit d = l_k counts as inside
(the right endpoint is closed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .errors import DomainError

SCAN_CAP = 10_000
GUARD = 1e-12
_DPS = 30


def u_k(k: int) -> float:
    """2 log k / (log k - log((k-1)/2)); strictly below (2/log 2) log k."""
    if k < 2:
        raise DomainError("u_k needs k >= 2")
    val = 2.0 * math.log(k) / (math.log(k) - math.log((k - 1) / 2.0))
    assert val < (2.0 / math.log(2.0)) * math.log(k) + 1e-15
    return val


def l_k(k: int) -> float:
    """2 (k-1)^3 / (k (k+1) (k-2)) * log(k-1)."""
    if k < 3:
        raise DomainError("l_k needs k >= 3")
    val = 2.0 * (k - 1) ** 3 / (k * (k + 1) * (k - 2)) * math.log(k - 1)
    assert val >= 2.0 * (1.0 - 2.0 / (k + 1)) * math.log(k - 1) - 1e-15
    return val


def _u_hp(k: int) -> mpmath.mpf:
    with mpmath.workdps(_DPS):
        k = mpmath.mpf(k)
        return 2 * mpmath.log(k) / (mpmath.log(k) - mpmath.log((k - 1) / 2))


def _l_hp(k: int) -> mpmath.mpf:
    with mpmath.workdps(_DPS):
        k = mpmath.mpf(k)
        return 2 * (k - 1) ** 3 / (k * (k + 1) * (k - 2)) * mpmath.log(k - 1)


def k1_for_d(d: float) -> int:
    """Largest k with u_{k-1} < d (strongest usable lower index).

    u_1 is 0 by convention (the k = 1 count never decays), so any d > 0
    admits k = 2.  The scan relies on monotonicity of u, which the test
    suite verifies numerically over the capped range.
    """
    if d <= 0:
        raise DomainError("k1_for_d needs d > 0")
    best = 2
    j = 2
    while j <= SCAN_CAP:
        u = _u_hp(j)
        if _close(u, d) or u >= d:
            # the lower-index inequality is strict, so a boundary hit stops
            return best
        best = j + 1
        j += 1
    raise DomainError("d = %r beyond the k <= %d scan cap" % (d, SCAN_CAP))


def _close(a, b) -> bool:
    return abs(float(a) - float(b)) <= GUARD * max(1.0, abs(float(b)))


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def next_dr_order(n: int) -> int:
    """Smallest prime p >= n with p = 3 (mod 4), the next usable Paley order.

    The interval guarantee p <= 2n (checked in the suite for n <= 10^6)
    is the desk-scale form of the prime-in-[n, 2n] lemma.
    """
    if n < 2:
        raise DomainError("next_dr_order needs n >= 2")
    p = max(n, 3)
    if p % 2 == 0:
        p += 1
    while True:
        if p % 4 == 3 and _is_prime(p):
            return p
        p += 2


def dr_order_table(limit: int) -> np.ndarray:
    """Vectorised next_dr_order over all n <= limit (index 0/1 unused)."""
    top = 2 * limit + 2
    sieve = np.ones(top + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(math.isqrt(top)) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    ok = sieve & (np.arange(top + 1) % 4 == 3)
    nxt = np.zeros(top + 1, dtype=np.int64)
    cur = 0
    for i in range(top, -1, -1):
        if ok[i]:
            cur = i
        nxt[i] = cur
    return nxt[: limit + 1]


def k2_for_d(d: float) -> int:
    """Smallest prime k = 3 (mod 4) with d <= l_k (cheapest upper order)."""
    if d <= 0:
        raise DomainError("k2_for_d needs d > 0")
    k = 3
    while True:
        ell = _l_hp(k)
        if d < ell or _close(d, ell):
            # closed right endpoint: d = l_k qualifies
            return k
        k = next_dr_order(k + 1)


def corollary_interval(d: float) -> tuple[float, float]:
    """The closed-form window (2^(d/2), 6 e^(d/2) + 6 d + 17] for d > 1."""
    if d <= 1:
        raise DomainError("corollary interval needs d > 1")
    return (2.0 ** (d / 2.0), 6.0 * math.exp(d / 2.0) + 6.0 * d + 17.0)


@dataclass(frozen=True)
class BoundsReport:
    """Theorem window for average degree d.

    interval_lo is exclusive (chi > interval_lo, i.e. chi >= k1) and
    interval_hi = 3 k2 + 11 is inclusive.  corollary_lo/hi give the
    closed-form envelope that must contain the constructed window.
    """

    d: float
    k1: int
    k2: int
    interval_lo: int
    interval_hi: int
    corollary_lo: float
    corollary_hi: float

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "k1": self.k1,
            "k2": self.k2,
            "interval_lo_exclusive": self.interval_lo,
            "interval_hi": self.interval_hi,
            "corollary_lo_exclusive": self.corollary_lo,
            "corollary_hi": self.corollary_hi,
        }


def bounds_report(d: float) -> BoundsReport:
    if d <= 1:
        raise DomainError("bounds report needs d > 1")
    k1 = k1_for_d(d)
    k2 = k2_for_d(d)
    lo, hi = corollary_interval(d)
    report = BoundsReport(d, k1, k2, k1 - 1, 3 * k2 + 11, lo, hi)
    # the constructed integer window must nest inside the corollary window
    assert k1 > lo and report.interval_hi <= hi
    return report
