"""Shifted-Chebyshev series algebra on [0, 1].

The shifted polynomials T*_r(x) = cos(r*theta) with 2x - 1 = cos(theta) are
used exclusively; series follow the half-first-term convention

    f(x) = a0/2 + a1*T*_1(x) + a2*T*_2(x) + ...

All coefficient arithmetic runs under an mpmath working-precision context so
tables can be generated well beyond hardware floats.  Operations are pure
functions over immutable inputs and safe for concurrent use.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import mpmath as mp

from .errors import DomainError, FitError


class ArgMap(enum.Enum):
    """How the series argument x relates to the user-facing variable z."""

    DIRECT = "direct"        # x = z, x in [0, 1]
    INVERSE_Z = "inverse-z"  # x = 1/z, z in [1, inf)


@dataclass(frozen=True)
class PrecisionContext:
    """Bundle of precision knobs governing coefficient generation.

    Attributes
    ----------
    work_digits : int
        Decimal digits carried by all internal arithmetic.
    target_digits : int
        Digits the emitted coefficients must be good to.
    node_count_m : int
        The m of the discrete fit; callers must size it at least twice the
        number of coefficients they request.
    """

    work_digits: int
    target_digits: int
    node_count_m: int

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.work_digits < self.target_digits + 8:
            raise ValueError(
                f"work_digits={self.work_digits} leaves fewer than 8 guard "
                f"digits over target_digits={self.target_digits}"
            )
        if self.node_count_m < 1:
            raise ValueError("node_count_m must be positive")

    def workdps(self):
        """mpmath context manager running at work_digits precision."""
        return mp.workdps(self.work_digits)


@dataclass(frozen=True)
class ChebSeries:
    """Coefficients a*_0 ... a*_n under the half-a0 convention.

    ``coeffs`` are mpmath floats carrying ``precision_digits`` decimal
    digits; ``arg_map`` records whether the series argument is x itself or
    1/z.  Instances are immutable.
    """

    coeffs: tuple
    arg_map: ArgMap
    precision_digits: int

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("series needs at least one coefficient")
        if self.precision_digits < 1:
            raise ValueError("precision_digits must be positive")
        for i, c in enumerate(self.coeffs):
            if not mp.isfinite(c):
                raise ValueError(f"coefficient {i} is not finite: {c!r}")

    def __len__(self):
        return len(self.coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1


def make_series(values, arg_map, precision_digits):
    """Build a ChebSeries, converting values to mpf at the stated precision.

    Accepts ints, floats, decimal strings, Fractions and mpfs.
    """
    with mp.workdps(precision_digits):
        coeffs = tuple(_to_mpf(v) for v in values)
    return ChebSeries(coeffs, arg_map, precision_digits)


def _to_mpf(v):
    if isinstance(v, Fraction):
        return mp.mpf(v.numerator) / v.denominator
    return mp.mpf(v)


def nodes(m, ctx):
    """Fitting abscissae x_j = cos^2(j*pi/(2m)), j = 0..m.

    Returned in the natural j order, which is strictly decreasing from
    x_0 = 1 to x_m = 0.  The endpoints (and the midpoint for even m) are
    exact so samplers can special-case them.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    with ctx.workdps():
        return [_node(j, m) for j in range(m + 1)]


def _node(j, m):
    # cos^2(j pi / 2m) = (1 + cos(j pi / m)) / 2, with exact special points
    if j == 0:
        return mp.mpf(1)
    if j == m:
        return mp.mpf(0)
    if 2 * j == m:
        return mp.mpf(1) / 2
    return (1 + mp.cospi(mp.mpf(j) / m)) / 2


def fit(f, m, n_coeffs, ctx, arg_map=ArgMap.DIRECT):
    """Discrete least-squares fit of ``n_coeffs`` shifted-Chebyshev coefficients.

    Computes a*_r = (2/m) * sum''_{j=0..m} f(x_j) cos(r j pi / m) where the
    double-primed sum halves the j = 0 and j = m terms.  The 2/m factor makes
    the fit recover the coefficients of a function that is already a
    shifted-Chebyshev sum.

    Parameters
    ----------
    f : callable
        Sampler returning a finite value at each node, including the
        endpoint limits x = 1 and x = 0.
    m : int
        Node parameter; m + 1 samples are taken.
    n_coeffs : int
        Number of coefficients to produce; must not exceed m.
    ctx : PrecisionContext
        Supplies the working precision.
    arg_map : ArgMap
        Recorded on the result; does not affect the arithmetic.
    """
    if n_coeffs < 1:
        raise ValueError("n_coeffs must be >= 1")
    if n_coeffs > m:
        raise ValueError(f"n_coeffs={n_coeffs} exceeds node parameter m={m}")
    with ctx.workdps():
        # cos(k pi / m) for k = 0..m; cos(r j pi / m) folds into this table
        cos_tab = [_cos_k_pi_over_m(k, m) for k in range(m + 1)]
        xs = [(1 + cos_tab[j]) / 2 for j in range(m + 1)]
        xs[0], xs[m] = mp.mpf(1), mp.mpf(0)

        samples = []
        for j, x in enumerate(xs):
            v = _to_mpf(f(x))
            if not mp.isfinite(v):
                raise FitError(f"sampler returned {v!r} at node j={j} (x={mp.nstr(x, 8)})")
            samples.append(v)

        two_m = 2 * m
        coeffs = []
        for r in range(n_coeffs):
            acc = samples[0] / 2          # j = 0 halved, cos = 1
            for j in range(1, m):
                k = (r * j) % two_m
                if k > m:
                    k = two_m - k
                acc += samples[j] * cos_tab[k]
            tail = samples[m] / 2         # j = m halved, cos = (-1)^r
            acc += tail if r % 2 == 0 else -tail
            coeffs.append(2 * acc / m)
        return ChebSeries(tuple(coeffs), arg_map, ctx.work_digits)


def _cos_k_pi_over_m(k, m):
    if k == 0:
        return mp.mpf(1)
    if k == m:
        return mp.mpf(-1)
    if 2 * k == m:
        return mp.mpf(0)
    return mp.cospi(mp.mpf(k) / m)


def clenshaw_eval(s, x):
    """Evaluate the series at x in [0, 1] by the backward recurrence.

    Runs b_r = 2(2x-1) b_{r+1} - b_{r+2} + a*_r downward from r = n and
    returns (b_0 - b_2) / 2, all at the series' own precision.
    """
    with mp.workdps(s.precision_digits):
        x = _to_mpf(x)
        if x < 0 or x > 1:
            raise DomainError(f"x={mp.nstr(x, 8)} outside [0, 1]")
        return _clenshaw(s.coeffs, x)


def _clenshaw(coeffs, x):
    t = 2 * (2 * x - 1)
    b1 = b2 = mp.mpf(0)
    for r in range(len(coeffs) - 1, 0, -1):
        b1, b2 = t * b1 - b2 + coeffs[r], b1
    b0 = t * b1 - b2 + coeffs[0]
    return (b0 - b2) / 2


def differentiate(s):
    """Series of f'(x) for a Direct-argument series, degree reduced by one.

    Uses the downward recursion a*'_{r-1} = a*'_{r+1} + 4 r a*_r with
    a*'_n = a*'_{n+1} = 0.  A constant input yields the zero series.
    """
    if s.arg_map is not ArgMap.DIRECT:
        raise ValueError("differentiate applies to Direct-argument series; "
                         "use differentiate_inverse_arg for 1/z series")
    return _differentiate_wrt_arg(s)


def _differentiate_wrt_arg(s):
    # d/dx of the series in its own argument x, regardless of arg_map
    n = s.degree
    with mp.workdps(s.precision_digits):
        if n == 0:
            return ChebSeries((mp.mpf(0),), s.arg_map, s.precision_digits)
        d = [mp.mpf(0)] * (n + 2)
        for r in range(n, 0, -1):
            d[r - 1] = d[r + 1] + 4 * r * s.coeffs[r]
        return ChebSeries(tuple(d[:n]), s.arg_map, s.precision_digits)


# -1/z^2 expressed in the variable x = 1/z: -(3/8 T*_0 + 1/2 T*_1 + 1/8 T*_2),
# i.e. half-a0 coefficients (-3/4, -1/2, -1/8).
_NEG_X_SQUARED = (Fraction(-3, 4), Fraction(-1, 2), Fraction(-1, 8))


def differentiate_inverse_arg(s):
    """d/dz of a series in x = 1/z, returned as a series in 1/z.

    Differentiates with respect to x, then multiplies by the chain-rule
    factor -1/z^2, itself a fixed three-term series in 1/z.
    """
    if s.arg_map is not ArgMap.INVERSE_Z:
        raise ValueError("differentiate_inverse_arg needs an InverseZ series")
    d = _differentiate_wrt_arg(s)
    factor = make_series(_NEG_X_SQUARED, ArgMap.INVERSE_Z, s.precision_digits)
    return multiply(d, factor)


def multiply(s1, s2):
    """Product series via T*_i T*_j = (T*_{i+j} + T*_{|i-j|}) / 2.

    The factors must share arg_map and precision; the result carries
    deg(s1) + deg(s2) + 1 coefficients and can be shortened with truncate().
    """
    if s1.arg_map is not s2.arg_map:
        raise ValueError("cannot multiply series with different arg maps")
    if s1.precision_digits != s2.precision_digits:
        raise ValueError("cannot multiply series with different precisions")
    with mp.workdps(s1.precision_digits):
        a = (s1.coeffs[0] / 2,) + s1.coeffs[1:]
        b = (s2.coeffs[0] / 2,) + s2.coeffs[1:]
        out = [mp.mpf(0)] * (s1.degree + s2.degree + 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                p = ai * bj / 2
                out[i + j] += p
                out[abs(i - j)] += p
        out[0] *= 2
        return ChebSeries(tuple(out), s1.arg_map, s1.precision_digits)


def to_power_basis(s):
    """Power coefficients c_0..c_n of the series in its own argument.

    Exact linear basis change using T*_0 = 1, T*_1 = 2x - 1 and
    T*_{r+1} = 2(2x - 1) T*_r - T*_{r-1}.  The conversion is carried out
    with extra guard digits because power coefficients grow like 4^r.
    """
    n = s.degree
    with mp.workdps(s.precision_digits + max(10, n)):
        rows = [[mp.mpf(1)], [mp.mpf(-1), mp.mpf(2)]]
        for r in range(1, n):
            prev, prev2 = rows[r], rows[r - 1]
            nxt = [mp.mpf(0)] * (r + 2)
            for i, c in enumerate(prev):
                nxt[i] -= 2 * c
                nxt[i + 1] += 4 * c
            for i, c in enumerate(prev2):
                nxt[i] -= c
            rows.append(nxt)
        out = [mp.mpf(0)] * (n + 1)
        weights = (s.coeffs[0] / 2,) + s.coeffs[1:]
        for r in range(n + 1):
            w = weights[r]
            if w == 0:
                continue
            for i, c in enumerate(rows[r]):
                out[i] += w * c
        return out


def truncate(s, tol):
    """Drop the longest trailing run of coefficients with |sum| below tol.

    Because |T*_r| <= 1, the sup-norm change is bounded by the dropped
    absolute sum, which is kept strictly below tol (a tail summing to
    exactly tol is kept).  The leading coefficient is never dropped.
    """
    with mp.workdps(s.precision_digits):
        tol = _to_mpf(tol)
        if not tol > 0:
            raise ValueError("tol must be positive")
        keep = len(s.coeffs)
        acc = mp.mpf(0)
        for r in range(len(s.coeffs) - 1, 0, -1):
            nxt = acc + abs(s.coeffs[r])
            if nxt < tol:
                acc = nxt
                keep = r
            else:
                break
    if keep == len(s.coeffs):
        return s
    return ChebSeries(s.coeffs[:keep], s.arg_map, s.precision_digits)


def tail_sum(s, start):
    """Sum of |a*_r| for r >= start; bounds the sup-norm cost of dropping them."""
    with mp.workdps(s.precision_digits):
        return mp.fsum(abs(c) for c in s.coeffs[start:])


def add(s1, s2):
    """Coefficient-wise sum; the shorter series is zero-padded."""
    if s1.arg_map is not s2.arg_map:
        raise ValueError("cannot add series with different arg maps")
    if s1.precision_digits != s2.precision_digits:
        raise ValueError("cannot add series with different precisions")
    with mp.workdps(s1.precision_digits):
        n = max(len(s1.coeffs), len(s2.coeffs))
        out = []
        for r in range(n):
            a = s1.coeffs[r] if r < len(s1.coeffs) else mp.mpf(0)
            b = s2.coeffs[r] if r < len(s2.coeffs) else mp.mpf(0)
            out.append(a + b)
        return ChebSeries(tuple(out), s1.arg_map, s1.precision_digits)


def scale(s, c):
    """Series multiplied by a scalar."""
    with mp.workdps(s.precision_digits):
        c = _to_mpf(c)
        return ChebSeries(tuple(c * a for a in s.coeffs), s.arg_map,
                          s.precision_digits)
