"""Hardware-float batch evaluation of generated tables.

This is the fast path: coefficients are rounded to float64 once and the
per-point work runs through the kernels in :mod:`gammacheb._kernels`
(numba-jitted when available, vectorized numpy otherwise).  Accuracy is
whatever the table offers, floored at float64 resolution; values outside
float64 range (e.g. gamma beyond z ~ 171) overflow to inf.
"""

from __future__ import annotations

import numpy as np

from . import _kernels

_CODES = {
    "gamma": _kernels.GAMMA_CODE,
    "invgamma": _kernels.INVGAMMA_CODE,
    "lngamma": _kernels.LNGAMMA_CODE,
}


class FastEvaluator:
    """Callable float64 view of a FunctionTable.

    >>> ev = FastEvaluator(table)          # doctest: +SKIP
    >>> ev(np.linspace(1, 50, 1000))       # doctest: +SKIP
    """

    def __init__(self, table):
        kind = table.kind
        if kind.base == "psi":
            self.code = _kernels.PSI0_CODE if kind.order == 0 else _kernels.POLYGAMMA_CODE
            self.order = kind.order
        else:
            self.code = _CODES[kind.base]
            self.order = 0
        self.coeffs = np.array([float(c) for c in table.series.coeffs])
        self.label = kind.label

    def __call__(self, z):
        arr = np.asarray(z, dtype=np.float64)
        scalar = arr.ndim == 0
        flat = np.ascontiguousarray(arr.reshape(-1))
        out = _kernels.eval_kind_batch(self.code, self.order, self.coeffs, flat)
        if scalar:
            return float(out[0])
        return out.reshape(arr.shape)

    def __repr__(self):
        return f"FastEvaluator({self.label}, ncoeffs={len(self.coeffs)})"
