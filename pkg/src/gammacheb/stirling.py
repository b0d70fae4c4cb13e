"""Stirling-series machinery for ln-gamma.

Provides exact Bernoulli numbers, the asymptotic series terms
B_{2n} / (2n (2n-1) z^{2n-1}), optimal-truncation diagnostics, and a
shift-and-sum evaluator that serves as the high-precision bootstrap for
coefficient generation: ln-gamma(z) is pushed to a larger argument with
ln-gamma(z) = ln-gamma(z+k) - sum ln(z+i), where the divergent series can
deliver the requested number of digits before its terms turn around.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .errors import CapacityError, DomainError, ScanExhaustedError

_SCAN_DPS = 25  # term magnitudes only; exponent range is what matters


class BernoulliTable:
    """Grow-only cache of even-index Bernoulli numbers as exact rationals.

    Entries come from the defining recurrence
    sum_{k=0..n} C(n+1, k) B_k = 0 with B_0 = 1, B_1 = -1/2.  Extension is
    lock-protected and append-only, so concurrent readers always observe a
    consistent prefix.
    """

    def __init__(self, n_max=260):
        if n_max < 1:
            raise ValueError("n_max must be positive")
        self._n_max = n_max
        self._lock = threading.Lock()
        self._even = [Fraction(1, 6)]  # B_2

    @property
    def n_max(self):
        """Largest supported index is B_{2*n_max}."""
        return self._n_max

    def get(self, two_n):
        """Exact B_{two_n} for even two_n >= 2."""
        if two_n < 2 or two_n % 2 != 0:
            raise ValueError(f"Bernoulli index must be even and >= 2, got {two_n}")
        if two_n > 2 * self._n_max:
            raise CapacityError(
                f"B_{two_n} exceeds the table limit B_{2 * self._n_max}")
        idx = two_n // 2 - 1
        if idx >= len(self._even):
            with self._lock:
                self._extend(idx)
        return self._even[idx]

    def _extend(self, idx):
        # recurrence needs every earlier even entry; odd ones past B_1 vanish
        while len(self._even) <= idx:
            m = 2 * (len(self._even) + 1)
            acc = Fraction(1) - Fraction(m + 1, 2)  # k = 0 and k = 1 terms
            for k in range(2, m, 2):
                acc += math.comb(m + 1, k) * self._even[k // 2 - 1]
            self._even.append(-acc / (m + 1))


_DEFAULT_TABLE = BernoulliTable()


def bernoulli(two_n, table=None):
    """Exact Bernoulli number B_{two_n} (even index), e.g. B_2 = 1/6."""
    return (table or _DEFAULT_TABLE).get(two_n)


def stirling_term(n, z, table=None):
    """n-th series term B_{2n} / (2n (2n-1) z^{2n-1}).

    Evaluated at the ambient mpmath working precision; wrap the call in
    ``mp.workdps`` to control accuracy.
    """
    if n < 1:
        raise ValueError("term index n must be >= 1")
    z = mp.mpf(z)
    if z < 1:
        raise DomainError(f"stirling_term needs z >= 1, got {mp.nstr(z, 8)}")
    b = bernoulli(2 * n, table)
    return mp.mpf(b.numerator) / b.denominator / (2 * n * (2 * n - 1)) / z ** (2 * n - 1)


@dataclass(frozen=True)
class TruncationReport:
    """Where the series for a given z stops converging.

    ``n_opt`` indexes the smallest-magnitude term, ``min_term`` is that
    magnitude and ``est_digits`` = -log10(min_term) estimates the decimal
    accuracy achievable by stopping there.
    """

    z: float
    n_opt: int
    min_term: object  # mpf; may underflow a float for large z
    est_digits: float


def optimal_truncation(z, n_scan=200, table=None):
    """Locate the first local minimum of |term(n, z)| over n = 1..n_scan.

    Raises ScanExhaustedError when the terms are still shrinking at
    n_scan, i.e. the minimum lies beyond the scanned range.
    """
    zf = float(z)
    if zf < 1:
        raise DomainError(f"optimal_truncation needs z >= 1, got {z}")
    if n_scan < 2:
        raise ValueError("n_scan must be >= 2")
    with mp.workdps(_SCAN_DPS):
        zm = mp.mpf(z)
        prev = abs(stirling_term(1, zm, table))
        for n in range(2, n_scan + 1):
            cur = abs(stirling_term(n, zm, table))
            if cur >= prev:
                return TruncationReport(zf, n - 1, prev, float(-mp.log10(prev)))
            prev = cur
    raise ScanExhaustedError(
        f"terms still decreasing at n_scan={n_scan} for z={z}; "
        f"the optimal index lies beyond the scan")


def lngamma_oracle(z, target_digits, table=None, max_shift=None):
    """ln-gamma(z) accurate to ~target_digits significant decimal digits.

    z is shifted upward by an integer k until the series certifies at
    least target_digits + 2 digits at z + k, the terms are summed while
    they still matter, and the shift is undone with
    ln-gamma(z) = ln-gamma(z+k) - sum_{i<k} ln(z+i).
    """
    if target_digits < 1:
        raise ValueError("target_digits must be positive")
    table = table or _DEFAULT_TABLE
    if max_shift is None:
        max_shift = max(64, 2 * target_digits)

    zf = mp.mpf(z)
    if not zf > 0:
        raise DomainError(f"lngamma_oracle needs z > 0, got {z}")

    # magnitude guard: lnGamma grows like z ln z, which costs integer digits
    mag = max(0, int(math.log10(max(float(zf) * max(1.0, math.log(max(float(zf), 2.0))), 1.0))))
    work = target_digits + 10 + mag

    k, n_stop = _choose_shift(zf, target_digits, table, max_shift)

    with mp.workdps(work):
        w = mp.mpf(z) + k
        total = mp.log(mp.sqrt(2 * mp.pi)) + (w - mp.mpf(1) / 2) * mp.log(w) - w
        w2 = w * w
        pw = w  # w^(2n-1)
        for n in range(1, n_stop + 1):
            if n > 1:
                pw *= w2
            b = table.get(2 * n)
            total += mp.mpf(b.numerator) / b.denominator / (2 * n * (2 * n - 1)) / pw
        for i in range(k):
            total -= mp.log(mp.mpf(z) + i)
        return +total


def _choose_shift(z, target_digits, table, max_shift):
    """Smallest integer shift k and summation stop index for the target.

    Success either when the terms drop below 10^-(target+4) while still
    decreasing, or when the first local minimum already certifies
    target + 2 digits (then the sum stops at the minimum).
    """
    need = -mp.mpf(target_digits + 2)
    thresh_exp = -mp.mpf(target_digits + 4)
    with mp.workdps(_SCAN_DPS):
        k = 0
        while True:
            w = mp.mpf(z) + k
            if w >= 1:
                hit = _scan_terms(w, thresh_exp, need, table)
                if hit is not None:
                    return k, hit
            k += 1
            if k > max_shift:
                w = mp.mpf(z) + max_shift
                best = _best_exponent(w, table)
                supported = max(0, int(-best) - 2)
                raise CapacityError(
                    f"target_digits={target_digits} exceeds oracle capacity "
                    f"(about {supported} digits with bernoulli n_max="
                    f"{table.n_max}, max_shift={max_shift})",
                    max_digits=supported)


def _scan_terms(w, thresh_exp, need, table):
    prev = None
    for n in range(1, table.n_max + 1):
        try:
            cur = mp.log10(abs(stirling_term(n, w, table)))
        except CapacityError:
            break
        if prev is not None and cur >= prev:
            # first local minimum; usable only if it certifies the target
            return n - 1 if prev <= need else None
        if cur <= thresh_exp:
            return n
        prev = cur
    # ran out of table while decreasing: the last term bounds the omission
    return table.n_max if (prev is not None and prev <= need) else None


def _best_exponent(w, table):
    best = mp.mpf("inf")
    prev = None
    for n in range(1, table.n_max + 1):
        cur = mp.log10(abs(stirling_term(n, w, table)))
        best = min(best, cur)
        if prev is not None and cur > prev:
            break
        prev = cur
    return best
