"""Gamma-family coefficient tables: generation, derivation and evaluation.

A table stores shifted-Chebyshev coefficients of the Stirling-normalized
residual in the variable 1/z, valid on 1 <= z < inf:

    gamma(z)    = sqrt(2 pi) z^(z-1/2) e^(-z) * S(1/z)
    1/gamma(z)  = (2 pi)^(-1/2) z^(1/2-z) e^z * S(1/z)
    ln gamma(z) = ln sqrt(2 pi) + (z - 1/2) ln z - z + S(1/z)
    psi(z)      = ln z + S(1/z)
    psi^(m)(z)  = S(1/z)                      (m >= 1)

Digamma and polygamma tables are derived from a ln-gamma fit by series
differentiation with the small basis corrections for the differentiated
prefix terms.  Arguments 0 < z < 1 are reached through the one-step
functional recurrences.
"""

from __future__ import annotations

import datetime as _dt
import re
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath as mp

from . import chebcore, stirling
from .chebcore import ArgMap, ChebSeries, PrecisionContext
from .errors import DomainError, TableParseError

_TAIL_GUARD = 6
_LABEL_RE = re.compile(r"^(gamma|invgamma|lngamma|psi(\d+))$")


@dataclass(frozen=True)
class TableKind:
    """Which function a table approximates; psi kinds carry their order."""

    base: str
    order: int = -1

    def __post_init__(self):
        if self.base not in ("gamma", "invgamma", "lngamma", "psi"):
            raise ValueError(f"unknown table kind {self.base!r}")
        if (self.base == "psi") != (self.order >= 0):
            raise ValueError("order is required for psi kinds and only for them")

    @property
    def label(self):
        return f"psi{self.order}" if self.base == "psi" else self.base

    @classmethod
    def parse(cls, label):
        m = _LABEL_RE.match(label.strip().lower())
        if not m:
            raise ValueError(f"unknown function {label!r}; expected gamma, "
                             f"invgamma, lngamma, psi0, psi<m>")
        if m.group(2) is not None:
            return cls("psi", int(m.group(2)))
        return cls(m.group(1))


GAMMA = TableKind("gamma")
INVGAMMA = TableKind("invgamma")
LNGAMMA = TableKind("lngamma")


def psi_kind(order):
    return TableKind("psi", order)


@dataclass(frozen=True)
class FunctionTable:
    """A generated coefficient table plus the metadata needed to use it."""

    kind: TableKind
    series: ChebSeries
    target_digits: int
    provenance: dict = field(default_factory=dict)


@dataclass(frozen=True)
class HarmonicResult:
    order_m: int
    n: int
    value: object  # mpf


# ---------------------------------------------------------------------------
# generation


def _ln_sqrt_2pi():
    return mp.log(mp.sqrt(2 * mp.pi))


def _prefix(z):
    """ln sqrt(2 pi) + (z - 1/2) ln z - z at the ambient precision."""
    return _ln_sqrt_2pi() + (z - mp.mpf(1) / 2) * mp.log(z) - z


def _residual_sampler(kind, oracle_digits, table):
    """Sampler of the normalized residual in x = 1/z.

    The x = 0 node is the point at infinity; its analytic limit is supplied
    directly (1 for gamma and invgamma, 0 for ln-gamma).
    """

    def sample(x):
        if x == 0:
            return mp.mpf(1) if kind.base in ("gamma", "invgamma") else mp.mpf(0)
        z = 1 / x
        r = stirling.lngamma_oracle(z, oracle_digits, table=table) - _prefix(z)
        if kind.base == "gamma":
            return mp.exp(r)
        if kind.base == "invgamma":
            return mp.exp(-r)
        return r

    return sample


def _fit_residual(kind, n_coeffs, ctx, bernoulli_table=None):
    oracle_digits = ctx.work_digits + 2
    sampler = _residual_sampler(kind, oracle_digits, bernoulli_table)
    series = chebcore.fit(sampler, ctx.node_count_m, n_coeffs, ctx,
                          arg_map=ArgMap.INVERSE_Z)
    return series, oracle_digits


def _context_for(target_digits, n_total):
    return PrecisionContext(work_digits=target_digits + 10,
                            target_digits=target_digits,
                            node_count_m=2 * n_total)


def context_for(target_digits, n_coeffs):
    """Default PrecisionContext for an n_coeffs table: ten guard digits and
    node headroom for the tail-bound guard coefficients."""
    return _context_for(target_digits, n_coeffs + _TAIL_GUARD)


def generate_table(kind, n_coeffs, ctx, bernoulli_table=None):
    """Fit a gamma, invgamma or lngamma table with exactly n_coeffs coefficients.

    Fits a few guard coefficients beyond the requested count (node budget
    permitting) and records their absolute sum as the table's tail bound.
    """
    if kind.base == "psi":
        raise ValueError("psi tables are derived; use generate_psi_table")
    if n_coeffs < 1:
        raise ValueError("n_coeffs must be >= 1")
    if ctx.node_count_m < 2 * n_coeffs:
        raise ValueError(
            f"node_count_m={ctx.node_count_m} is below twice the requested "
            f"coefficient count {n_coeffs}")
    guard = min(_TAIL_GUARD, ctx.node_count_m // 2 - n_coeffs)
    full, oracle_digits = _fit_residual(kind, n_coeffs + guard, ctx, bernoulli_table)
    series = ChebSeries(full.coeffs[:n_coeffs], full.arg_map, full.precision_digits)
    prov = _provenance(ctx, oracle_digits)
    if guard > 0:
        with mp.workdps(ctx.work_digits):
            prov["tail_bound"] = mp.nstr(chebcore.tail_sum(full, n_coeffs), 4)
    return FunctionTable(kind, series, ctx.target_digits, prov)


def generate_auto(kind, target_digits, max_coeffs=192, bernoulli_table=None):
    """Fit with the default coefficient count for the requested digits.

    Grows the fit until the measured coefficient tail drops below
    10^-target_digits, then keeps the shortest prefix meeting that bound.
    """
    if kind.base == "psi":
        raise ValueError("psi tables are derived; use generate_psi_table")
    n_total = 24
    while True:
        ctx = _context_for(target_digits, n_total)
        full, oracle_digits = _fit_residual(kind, n_total, ctx, bernoulli_table)
        cut = _auto_cut(full, target_digits, n_total)
        if cut is not None:
            series = ChebSeries(full.coeffs[:cut], full.arg_map,
                                full.precision_digits)
            prov = _provenance(ctx, oracle_digits)
            with mp.workdps(ctx.work_digits):
                prov["tail_bound"] = mp.nstr(chebcore.tail_sum(full, cut), 4)
            return FunctionTable(kind, series, target_digits, prov)
        if n_total >= max_coeffs:
            raise ValueError(
                f"no {target_digits}-digit tail bound within {max_coeffs} "
                f"coefficients for {kind.label}")
        n_total = min(max_coeffs, n_total * 2)


def _auto_cut(series, target_digits, n_total):
    # need a trailing guard of at least 4 measured coefficients so the
    # reported tail bound actually measures something
    with mp.workdps(series.precision_digits):
        tol = mp.mpf(10) ** (-target_digits)
        acc = mp.mpf(0)
        cut = None
        for r in range(n_total - 1, 0, -1):
            acc += abs(series.coeffs[r])
            if acc < tol:
                cut = r
            else:
                break
        if cut is not None and cut <= n_total - 4:
            return cut
        return None


def _provenance(ctx, oracle_digits):
    return {
        "nodes_m": str(ctx.node_count_m),
        "work_digits": str(ctx.work_digits),
        "oracle_digits": str(oracle_digits),
        "generated": _dt.date.today().isoformat(),
    }


# ---------------------------------------------------------------------------
# derivation of psi tables


def derive_psi_table(lngamma_table):
    """Digamma table from a ln-gamma table.

    Differentiates the correction series in 1/z and folds in the
    -1/(2z) = -(T*_0 + T*_1)/4 contribution of the differentiated prefix,
    leaving psi(z) = ln z + series(1/z).
    """
    if lngamma_table.kind != LNGAMMA:
        raise ValueError(f"expected a lngamma table, got {lngamma_table.kind.label}")
    d = chebcore.differentiate_inverse_arg(lngamma_table.series)
    corr = chebcore.make_series([Fraction(-1, 2), Fraction(-1, 4)],
                                ArgMap.INVERSE_Z, d.precision_digits)
    series = chebcore.add(d, corr)
    prov = dict(lngamma_table.provenance)
    prov["derived_from"] = lngamma_table.kind.label
    return FunctionTable(psi_kind(0), series,
                         max(1, lngamma_table.target_digits - 2), prov)


def derive_polygamma_table(prev, target_order):
    """psi^(target_order) table from the table one order below.

    The first step also absorbs the differentiated ln z prefix,
    1/z = (T*_0 + T*_1)/2; later steps differentiate the bare series.
    Each step costs roughly two decimal digits.
    """
    if target_order < 1:
        raise ValueError("target_order must be >= 1")
    if prev.kind != psi_kind(target_order - 1):
        raise ValueError(
            f"expected a psi{target_order - 1} table, got {prev.kind.label}")
    series = chebcore.differentiate_inverse_arg(prev.series)
    if target_order == 1:
        corr = chebcore.make_series([1, Fraction(1, 2)], ArgMap.INVERSE_Z,
                                    series.precision_digits)
        series = chebcore.add(series, corr)
    prov = dict(prev.provenance)
    prov["derived_from"] = prev.kind.label
    return FunctionTable(psi_kind(target_order), series,
                         max(1, prev.target_digits - 2), prov)


_STEP_ELEVATION = 6  # measured endpoint loss per derivative step is ~3-5 digits


def generate_psi_table(order, target_digits, n_coeffs=None, bernoulli_table=None):
    """Generate psi^(order) to target_digits via a fresh elevated ln-gamma fit.

    The underlying ln-gamma table is fitted with six extra digits per
    derivative step; differentiation amplifies the interpolation error by
    roughly twice the squared coefficient count at the z = 1 endpoint, which
    costs more than the nominal two digits for the table sizes in use.  When
    given, n_coeffs sizes that underlying fit.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    base_target = target_digits + _STEP_ELEVATION * (order + 1)
    if n_coeffs is None:
        base = generate_auto(LNGAMMA, base_target, bernoulli_table=bernoulli_table)
    else:
        base = generate_table(LNGAMMA, n_coeffs, context_for(base_target, n_coeffs),
                              bernoulli_table=bernoulli_table)
    t = derive_psi_table(base)
    for o in range(1, order + 1):
        t = derive_polygamma_table(t, o)
    with mp.workdps(t.series.precision_digits):
        tidy = chebcore.truncate(t.series, mp.mpf(10) ** (-(target_digits + 1)))
    return FunctionTable(t.kind, tidy, target_digits, t.provenance)


# ---------------------------------------------------------------------------
# evaluation


def evaluate(table, z):
    """Value of the table's function at z > 0 in extended precision.

    Direct evaluation covers z >= 1; arguments in (0, 1) are lifted with the
    one-step recurrences gamma(z) = gamma(z+1)/z, ln-gamma(z) =
    ln-gamma(z+1) - ln z and psi^(m)(z) = psi^(m)(z+1) + (-1)^m m! z^-(m+1).
    """
    s = table.series
    with mp.workdps(s.precision_digits + 5):
        zm = mp.mpf(z)
        if not zm > 0:
            raise DomainError(
                f"z={z} is outside the supported domain z > 0 "
                f"(poles at nonpositive integers; no reflection support)")
        if zm < 1:
            base = evaluate(table, zm + 1)
            k = table.kind
            if k.base == "gamma":
                return base / zm
            if k.base == "invgamma":
                return base * zm
            if k.base == "lngamma":
                return base - mp.log(zm)
            if k.order == 0:
                return base - 1 / zm
            m = k.order
            return base + (-1) ** (m + 1) * mp.factorial(m) / zm ** (m + 1)
        val = chebcore._clenshaw(s.coeffs, 1 / zm)
        k = table.kind
        if k.base == "gamma":
            return mp.exp(_prefix(zm)) * val
        if k.base == "invgamma":
            return mp.exp(-_prefix(zm)) * val
        if k.base == "lngamma":
            return _prefix(zm) + val
        if k.order == 0:
            return mp.log(zm) + val
        return val


def power_form(table, n_coeffs=None):
    """Power coefficients (in 1/z) of the table truncated to n_coeffs.

    For ln-gamma tables the constant absorbs the ln sqrt(2 pi) prefix term,
    matching the printed-form convention of the published expansions.
    """
    s = table.series
    if n_coeffs is not None:
        if not 1 <= n_coeffs <= len(s.coeffs):
            raise ValueError(f"n_coeffs must be in 1..{len(s.coeffs)}")
        s = ChebSeries(s.coeffs[:n_coeffs], s.arg_map, s.precision_digits)
    coeffs = chebcore.to_power_basis(s)
    if table.kind == LNGAMMA:
        with mp.workdps(s.precision_digits):
            coeffs[0] = coeffs[0] + _ln_sqrt_2pi()
    return coeffs


def truncated(table, n_coeffs):
    """Copy of the table keeping only its first n_coeffs coefficients."""
    s = table.series
    if not 1 <= n_coeffs <= len(s.coeffs):
        raise ValueError(f"n_coeffs must be in 1..{len(s.coeffs)}")
    series = ChebSeries(s.coeffs[:n_coeffs], s.arg_map, s.precision_digits)
    return FunctionTable(table.kind, series, table.target_digits,
                         dict(table.provenance))


# ---------------------------------------------------------------------------
# harmonic sums


def harmonic(n, psi_table):
    """H_n = 1 + 1/2 + ... + 1/n as psi(n+1) - psi(1)."""
    if psi_table.kind != psi_kind(0):
        raise ValueError(f"harmonic needs a psi0 table, got {psi_table.kind.label}")
    if n < 1:
        raise ValueError("n must be >= 1")
    with mp.workdps(psi_table.series.precision_digits + 5):
        gamma_const = -evaluate(psi_table, 1)
        value = evaluate(psi_table, n + 1) + gamma_const
    return HarmonicResult(0, n, value)


def generalized_harmonic(m, n, table):
    """sum_{k=1}^{n-1} k^-(m+1) from psi^(m) values at 1 and n."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if n < 2:
        raise ValueError("n must be >= 2")
    if table.kind != psi_kind(m):
        raise ValueError(f"generalized_harmonic(m={m}) needs a psi{m} table, "
                         f"got {table.kind.label}")
    with mp.workdps(table.series.precision_digits + 5):
        value = (mp.mpf(-1) ** (m + 1) / mp.factorial(m)
                 * (evaluate(table, 1) - evaluate(table, n)))
    return HarmonicResult(m, n, value)


# ---------------------------------------------------------------------------
# independent references (used by error scans)


def psi_reference(z, digits, bernoulli_table=None):
    """Digamma via a central difference of the ln-gamma bootstrap."""
    q = digits // 2 + 4
    oracle_digits = digits + q + 8
    with mp.workdps(oracle_digits + 10):
        zm = mp.mpf(z)
        if not zm > 0:
            raise DomainError(f"psi_reference needs z > 0, got {z}")
        h = mp.mpf(10) ** (-q)
        hi = stirling.lngamma_oracle(zm + h, oracle_digits, table=bernoulli_table)
        lo = stirling.lngamma_oracle(zm - h, oracle_digits, table=bernoulli_table)
        return (hi - lo) / (2 * h)


def polygamma_reference(order, z, digits, bernoulli_table=None):
    """psi^(order) from its defining sum with an Euler-Maclaurin tail.

    Computes (-1)^(order+1) order! * sum_{k>=0} (z+k)^-(order+1), summing
    the head directly and closing the tail with twelve correction terms.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    with mp.workdps(digits + 15):
        zm = mp.mpf(z)
        if not zm > 0:
            raise DomainError(f"polygamma_reference needs z > 0, got {z}")
        p = order + 1
        head_len = max(64, 4 * digits)
        total = mp.fsum((zm + k) ** -p for k in range(head_len))
        u = zm + head_len
        total += u ** -order / order + u ** -p / 2
        rising = mp.mpf(p)
        upow = u ** -(p + 1)
        for j in range(1, 13):
            b = stirling.bernoulli(2 * j, bernoulli_table)
            total += (mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * j)
                      * rising * upow)
            rising *= (p + 2 * j - 1) * (p + 2 * j)
            upow /= u * u
        return mp.mpf(-1) ** p * mp.factorial(order) * total


# ---------------------------------------------------------------------------
# table files


_FIXED_HEADER = ("convention", "half-a0"), ("argmap", "inverse-z"), ("normalization", "2-over-m")


def dumps_table(table):
    """Serialize to the text table format; deterministic for equal inputs."""
    s = table.series
    dps = s.precision_digits + 3  # guard digits make the round trip exact
    lines = [
        f"# function={table.kind.label}",
        f"# digits={table.target_digits}",
        f"# ncoeffs={len(s.coeffs)}",
        "# convention=half-a0",
        "# argmap=inverse-z",
        "# normalization=2-over-m",
        f"# precision_digits={s.precision_digits}",
    ]
    for key in sorted(table.provenance):
        if key == "generated":
            continue  # files must be byte-identical across reruns
        lines.append(f"# {key}={table.provenance[key]}")
    with mp.workdps(dps):
        for i, c in enumerate(s.coeffs):
            sign = "-" if c < 0 else "+"
            lines.append(f"{i} {sign}{mp.nstr(abs(c), dps)}")
    return "\n".join(lines) + "\n"


def save_table(table, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_table(table))


def loads_table(text):
    """Parse the table format back into a FunctionTable."""
    header = {}
    coeff_lines = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" not in body:
                raise TableParseError(f"malformed header {line!r}", line_no)
            key, _, value = body.partition("=")
            header[key.strip()] = value.strip()
        else:
            coeff_lines.append((line_no, line))

    for key in ("function", "digits", "ncoeffs", "convention", "argmap",
                "normalization"):
        if key not in header:
            raise TableParseError(f"missing required header key {key!r}")
    for key, expected in _FIXED_HEADER:
        if header[key] != expected:
            raise TableParseError(
                f"unsupported {key}={header[key]!r}; expected {expected!r}")
    try:
        kind = TableKind.parse(header["function"])
    except ValueError as e:
        raise TableParseError(str(e)) from None
    try:
        digits = int(header["digits"])
        ncoeffs = int(header["ncoeffs"])
    except ValueError:
        raise TableParseError("digits and ncoeffs must be integers") from None
    precision = int(header.get("precision_digits", digits + 10))

    if len(coeff_lines) != ncoeffs:
        raise TableParseError(
            f"expected {ncoeffs} coefficient lines, found {len(coeff_lines)}")

    coeffs = []
    with mp.workdps(precision):
        for i, (line_no, line) in enumerate(coeff_lines):
            parts = line.split()
            if len(parts) != 2:
                raise TableParseError(f"expected '<index> <value>', got {line!r}",
                                      line_no)
            if parts[0] != str(i):
                raise TableParseError(f"expected index {i}, got {parts[0]!r}",
                                      line_no)
            value = parts[1]
            if not value.startswith(("+", "-")):
                raise TableParseError(f"coefficient needs an explicit sign: "
                                      f"{value!r}", line_no)
            try:
                coeffs.append(mp.mpf(value))
            except ValueError:
                raise TableParseError(f"unparseable coefficient {value!r}",
                                      line_no) from None
    series = ChebSeries(tuple(coeffs), ArgMap.INVERSE_Z, precision)
    prov = {k: v for k, v in header.items()
            if k not in ("function", "digits", "ncoeffs", "convention",
                         "argmap", "normalization", "precision_digits")}
    return FunctionTable(kind, series, digits, prov)


def load_table(path):
    with open(path, "r", encoding="utf-8") as fh:
        return loads_table(fh.read())
